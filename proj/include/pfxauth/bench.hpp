#pragma once

#include <pfxauth/pas.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

namespace pfxauth::bench {

inline constexpr std::uint64_t n_limit = std::uint64_t{1} << 14;

struct MetricRow {
    scheme_id scheme{};
    std::uint64_t n = 0;
    std::uint64_t positional_cert_labels = 0;
    std::uint64_t prefix_cert_labels = 0;  // max over the sampled ls < n
    std::uint64_t verify_hash_invocations = 0;  // max over the same ls
    std::uint64_t edges_total = 0;
    std::uint64_t edges_delta = 0;
    std::uint64_t vertices_total = 0;
    std::uint64_t vertices_delta = 0;
    std::uint64_t identifier_labels = 0;
    std::uint64_t digest_pool_size = 0;
    /// max over sampled ls of verify invocations / certificate labels
    double verify_ratio = 0;
    /// same, counting labels absorbed by the hash instead of invocations
    double verify_input_ratio = 0;
};

/// Vertex and edge counts of ⌊G⌋_n as n grows, without keeping adjacency.
class GrowthCounter {
public:
    explicit GrowthCounter(const SchemeGraph& scheme) : scheme_(scheme) {}

    void extend() {
        ++n_;
        vertices_delta_ = edges_delta_ = 0;
        std::vector<VertexId> todo{scheme_.gcommit(n_)};
        if (!seen_.insert(todo.back()).second)
            todo.clear();
        while (!todo.empty()) {
            const VertexId v = todo.back();
            todo.pop_back();
            ++vertices_delta_;
            const auto outs = scheme_.out_neighbors(v);
            edges_delta_ += outs.size();
            for (const auto& w : outs)
                if (seen_.insert(w).second)
                    todo.push_back(w);
        }
        vertices_ += vertices_delta_;
        edges_ += edges_delta_;
    }

    std::uint64_t length() const noexcept { return n_; }
    std::uint64_t vertices() const noexcept { return vertices_; }
    std::uint64_t edges() const noexcept { return edges_; }
    std::uint64_t vertices_delta() const noexcept { return vertices_delta_; }
    std::uint64_t edges_delta() const noexcept { return edges_delta_; }

private:
    const SchemeGraph& scheme_;
    std::unordered_set<VertexId, VertexIdHash> seen_;
    std::uint64_t n_ = 0, vertices_ = 0, edges_ = 0, vertices_delta_ = 0, edges_delta_ = 0;
};

/// Prefix lengths examined for length n: all of them up to 256, beyond that
/// powers of two and their neighbours, n-1, n/2, and a fixed pseudo-random
/// spread.
inline std::vector<std::uint64_t> prefix_sample(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    if (n <= 256) {
        for (std::uint64_t ls = 1; ls < n; ++ls)
            out.push_back(ls);
        return out;
    }
    for (std::uint64_t p = 1; p < n; p <<= 1)
        for (std::uint64_t c : {p - 1, p, p + 1})
            if (c >= 1 && c < n)
                out.push_back(c);
    out.push_back(n - 1);
    out.push_back(n / 2);
    std::mt19937_64 rng(n);
    std::uniform_int_distribution<std::uint64_t> pick(1, n - 1);
    for (int i = 0; i < 48; ++i)
        out.push_back(pick(rng));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::vector<std::string> synthetic_items(std::uint64_t n) {
    std::vector<std::string> items;
    items.reserve(n);
    for (std::uint64_t i = 1; i <= n; ++i)
        items.push_back("item-" + std::to_string(i));
    return items;
}

/// One row per requested n, filled by construction and counting. Verify work
/// is counted with an instrumented hasher over an honest certificate.
inline std::vector<MetricRow> measure(const SchemeGraph& scheme, std::vector<std::uint64_t> n_values,
                                      bool with_verify = true) {
    std::sort(n_values.begin(), n_values.end());
    n_values.erase(std::unique(n_values.begin(), n_values.end()), n_values.end());
    if (!n_values.empty() && (n_values.front() == 0 || n_values.back() > n_limit))
        throw error(errc::out_of_range, "n must lie in 1.." + std::to_string(n_limit));
    std::vector<MetricRow> rows;
    GrowthCounter growth(scheme);
    const auto scheme_ptr = std::shared_ptr<const SchemeGraph>(&scheme, [](const SchemeGraph*) {});
    const auto items = synthetic_items(n_values.empty() ? 0 : n_values.back());
    for (auto n : n_values) {
        while (growth.length() < n)
            growth.extend();
        MetricRow row;
        row.scheme = scheme.id();
        row.n = n;
        row.edges_total = growth.edges();
        row.edges_delta = growth.edges_delta();
        row.vertices_total = growth.vertices();
        row.vertices_delta = growth.vertices_delta();
        row.positional_cert_labels = positional_vertices(scheme, n).size();
        row.identifier_labels = identifier_vertices(scheme, n).size();
        row.digest_pool_size = scheme.digest_pool(n).size();
        if (n >= 2) {
            // One labeling of t serves every prefix: gcommit(ls) only reaches
            // sinks up to ls, so its label in t is the digest of the prefix.
            const PrefixAuth pas(scheme_ptr, Hasher{});
            const std::vector<std::string> t(items.begin(), items.begin() + static_cast<std::ptrdiff_t>(n));
            auto labeler = pas.sequence_labeler(t);
            const Digest d_t{scheme.id(), n, labeler.label(scheme.gcommit(n))};
            for (auto ls : prefix_sample(n)) {
                const auto vertices = certificate_vertices(scheme, ls, n);
                const auto labels = vertices.size();
                row.prefix_cert_labels = std::max<std::uint64_t>(row.prefix_cert_labels, labels);
                if (!with_verify)
                    continue;
                PrefixCertificate cert{scheme.id(), ls, n, {}};
                for (const auto& v : vertices)
                    cert.labels.push_back(labeler.label(v));
                const Digest d_s{scheme.id(), ls, labeler.label(scheme.gcommit(ls))};
                HashCounter counter;
                if (!pas.counted(counter).verify(d_s, d_t, cert))
                    throw error(errc::malformed_certificate, "honest certificate refuted while measuring");
                const double per_label = 1.0 / static_cast<double>(std::max<std::size_t>(labels, 1));
                row.verify_hash_invocations = std::max(row.verify_hash_invocations, counter.invocations);
                row.verify_ratio = std::max(row.verify_ratio, static_cast<double>(counter.invocations) * per_label);
                row.verify_input_ratio = std::max(row.verify_input_ratio, static_cast<double>(counter.inputs) * per_label);
            }
        }
        rows.push_back(row);
    }
    return rows;
}

/// Powers of two, 2^j - 1 and 3·2^(j-1), up to n_max.
inline std::vector<std::uint64_t> n_grid(std::uint64_t n_max) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 1; p <= n_max; p <<= 1) {
        for (std::uint64_t c : {p - 1, p, p + p / 2})
            if (c >= 1 && c <= n_max)
                out.push_back(c);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Closed form for the positional certificate, in labels.
inline double positional_closed_form(scheme_id id, std::uint64_t n) {
    const double l2 = floor_log2(n);
    switch (id) {
    case scheme_id::linear:
    case scheme_id::full: return static_cast<double>(n);
    case scheme_id::skip_list: {
        const double k = ceil_log2(n);
        return k * (k + 1) / 2;
    }
    case scheme_id::antimonotone_simple: return 5 * l2 - 3;
    case scheme_id::antimonotone_optimal: return 7.0 * floor_log3(2 * n) - 4;
    case scheme_id::threaded_auth_tree:
    case scheme_id::hypercore:
    case scheme_id::transparency_log: return 2.0 * ceil_log2(n);
    }
    return 0;
}

/// Closed-form digest-pool size (exact for tree schemes and the trivial
/// schemes, an upper bound otherwise).
inline double digest_pool_closed_form(scheme_id id, std::uint64_t n) {
    switch (id) {
    case scheme_id::linear: return 1;
    case scheme_id::full: return static_cast<double>(n);
    case scheme_id::skip_list:
    case scheme_id::antimonotone_simple: return floor_log2(n) + 1.0;
    case scheme_id::antimonotone_optimal: return floor_log3(2 * n) + 1.0;
    case scheme_id::threaded_auth_tree:
    case scheme_id::hypercore:
    case scheme_id::transparency_log: return popcount(n);
    }
    return 0;
}

inline constexpr std::string_view csv_header =
    "scheme,n,positional_cert_labels,prefix_cert_labels,verify_hash_invocations,edges_total,edges_delta,"
    "vertices_total,vertices_delta,identifier_labels,digest_pool_size,positional_closed_form,"
    "positional_deviation,digest_pool_closed_form,digest_pool_deviation";

inline std::string csv(const std::vector<MetricRow>& rows) {
    std::ostringstream out;
    out << csv_header << "\n";
    for (const auto& r : rows) {
        const double pos = positional_closed_form(r.scheme, r.n);
        const double pool = digest_pool_closed_form(r.scheme, r.n);
        out << to_string(r.scheme) << "," << r.n << "," << r.positional_cert_labels << "," << r.prefix_cert_labels
            << "," << r.verify_hash_invocations << "," << r.edges_total << "," << r.edges_delta << ","
            << r.vertices_total << "," << r.vertices_delta << "," << r.identifier_labels << ","
            << r.digest_pool_size << "," << pos << "," << static_cast<double>(r.positional_cert_labels) - pos << ","
            << pool << "," << static_cast<double>(r.digest_pool_size) - pool << "\n";
    }
    return out.str();
}

/// Human-readable per-scheme table, same columns as the CSV.
inline std::string table(const std::vector<MetricRow>& rows) {
    if (rows.empty())
        throw error(errc::out_of_range, "no rows to report");
    std::ostringstream out;
    std::optional<scheme_id> current;
    for (const auto& r : rows) {
        if (current != r.scheme) {
            current = r.scheme;
            out << "\n" << to_string(r.scheme) << "\n"
                << std::setw(7) << "n" << std::setw(8) << "pos" << std::setw(8) << "(form)" << std::setw(8)
                << "prefix" << std::setw(8) << "verify" << std::setw(10) << "edges" << std::setw(7) << "+e"
                << std::setw(10) << "vertices" << std::setw(7) << "+v" << std::setw(6) << "id" << std::setw(6)
                << "pool" << std::setw(8) << "(form)" << "\n";
        }
        out << std::setw(7) << r.n << std::setw(8) << r.positional_cert_labels << std::setw(8)
            << positional_closed_form(r.scheme, r.n) << std::setw(8) << r.prefix_cert_labels << std::setw(8)
            << r.verify_hash_invocations << std::setw(10) << r.edges_total << std::setw(7) << r.edges_delta
            << std::setw(10) << r.vertices_total << std::setw(7) << r.vertices_delta << std::setw(6)
            << r.identifier_labels << std::setw(6) << r.digest_pool_size << std::setw(8)
            << digest_pool_closed_form(r.scheme, r.n) << "\n";
    }
    return out.str();
}

struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
};

/// Ordinary least squares y = slope·x + intercept.
inline LinearFit fit(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    LinearFit f;
    const double den = n * sxx - sx * sx;
    if (den == 0)
        return f;
    f.slope = (n * sxy - sx * sy) / den;
    f.intercept = (sy - f.slope * sx) / n;
    const double ss_tot = syy - sy * sy / n;
    double ss_res = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (f.slope * x[i] + f.intercept);
        ss_res += e * e;
    }
    f.r_squared = ss_tot == 0 ? 1 : 1 - ss_res / ss_tot;
    return f;
}

/// Largest positional certificate per generation of an antimonotone scheme,
/// against the closed form at that generation.
struct GenerationMax {
    unsigned generation = 0;
    std::uint64_t measured = 0;
    std::uint64_t argmax = 0;
    double closed_form = 0;
};

inline std::vector<GenerationMax> antimonotone_maxima(const AntimonotoneScheme& scheme, std::uint64_t n_max) {
    std::vector<GenerationMax> out;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        const unsigned t = scheme.generation(n);
        if (out.size() <= t)
            out.push_back({t, 0, 0, positional_closed_form(scheme.id(), n)});
        const auto size = positional_vertices(scheme, n).size();
        if (size > out[t].measured) {
            out[t].measured = size;
            out[t].argmax = n;
        }
    }
    return out;
}

} // namespace pfxauth::bench
