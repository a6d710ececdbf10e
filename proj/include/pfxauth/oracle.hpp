#pragma once

#include <pfxauth/pas.hpp>

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace pfxauth::oracle {

struct Violation {
    std::string invariant;
    std::uint64_t n = 0;
    std::string witness;
};

struct OracleReport {
    scheme_id scheme{};
    std::uint64_t n_lo = 1;
    std::uint64_t n_hi = 0;
    std::vector<Violation> violations;
    std::vector<std::string> notes;  // flagged but handled, e.g. substituted pools

    bool passed() const noexcept { return violations.empty(); }

    std::size_t count(std::string_view invariant) const {
        std::size_t c = 0;
        for (const auto& v : violations)
            c += v.invariant == invariant;
        return c;
    }

    std::string text() const {
        std::ostringstream out;
        out << to_string(scheme) << " n=" << n_lo << ".." << n_hi << ": "
            << (passed() ? "ok" : std::to_string(violations.size()) + " violation(s)") << "\n";
        for (const auto& v : violations)
            out << "  " << v.invariant << " n=" << v.n << " " << v.witness << "\n";
        for (const auto& note : notes)
            out << "  note: " << note << "\n";
        return out.str();
    }

    /// invariant,scheme,n,witness
    std::string rows() const {
        std::ostringstream out;
        for (const auto& v : violations)
            out << v.invariant << "," << to_string(scheme) << "," << v.n << "," << v.witness << "\n";
        return out.str();
    }

    void merge(const OracleReport& other) {
        violations.insert(violations.end(), other.violations.begin(), other.violations.end());
        notes.insert(notes.end(), other.notes.begin(), other.notes.end());
    }
};

inline std::string names(const VertexSet& set, std::size_t limit = 8) {
    std::string out = "{";
    std::size_t i = 0;
    for (const auto& v : set) {
        if (i == limit) {
            out += " ...";
            break;
        }
        out += (i++ ? " " : "") + v.name();
    }
    return out + "}";
}

/// Kahn order, sources first; nullopt if the graph has a cycle.
inline std::optional<std::vector<VertexId>> topological_order(const TruncatedGraph& graph) {
    std::unordered_map<VertexId, std::size_t, VertexIdHash> indegree;
    const VertexSet vertices = graph.vertices();
    for (const auto& v : vertices)
        indegree.try_emplace(v, 0);
    for (const auto& [from, to] : graph.edges())
        ++indegree[to];
    std::deque<VertexId> ready;
    for (const auto& v : vertices)
        if (indegree[v] == 0)
            ready.push_back(v);
    std::vector<VertexId> order;
    while (!ready.empty()) {
        const VertexId v = ready.front();
        ready.pop_front();
        order.push_back(v);
        for (const auto& w : graph.out_neighbors(v))
            if (--indegree[w] == 0)
                ready.push_back(w);
    }
    if (order.size() != vertices.size())
        return std::nullopt;
    return order;
}

/// Labels of every vertex of ⌊G⌋_{|items|}, computed sinks-up along a
/// topological order. Shares only the hash primitive with the main engine.
inline std::map<VertexId, Label> full_relabel(const SchemeGraph& scheme, const std::vector<std::string>& items,
                                              const Hasher& hasher) {
    const TruncatedGraph graph(scheme, items.size());
    auto order = topological_order(graph);
    if (!order)
        throw error(errc::cyclic_graph, "no topological order");
    std::map<VertexId, Label> labels;
    for (auto it = order->rbegin(); it != order->rend(); ++it) {
        const auto outs = graph.out_neighbors(*it);
        if (outs.empty()) {
            const std::string payload = it->a <= items.size() ? items[it->a - 1] : std::string{};
            labels[*it] = hasher.sink(payload);
            continue;
        }
        std::vector<Label> children;
        for (const auto& w : outs)
            children.push_back(labels.at(w));
        labels[*it] = hasher.inner(children);
    }
    return labels;
}

/// All vertices reachable from `from`, `from` included.
inline VertexSet reach(const SchemeGraph& scheme, const VertexId& from) {
    VertexSet seen{from};
    std::vector<VertexId> todo{from};
    while (!todo.empty()) {
        const VertexId v = todo.back();
        todo.pop_back();
        for (const auto& w : scheme.out_neighbors(v))
            if (seen.insert(w).second)
                todo.push_back(w);
    }
    return seen;
}

namespace detail {

inline std::string path_defect(const SchemeGraph& scheme, const PathFamily& family, const VertexId& start) {
    if (family.empty())
        return "empty path family";
    for (const auto& path : family) {
        if (path.empty() || path.front() != start)
            return "path does not start at " + start.name();
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            const auto outs = scheme.out_neighbors(path[i]);
            if (std::find(outs.begin(), outs.end(), path[i + 1]) == outs.end())
                return "(" + path[i].name() + ", " + path[i + 1].name() + ") is not an edge";
        }
    }
    return {};
}

inline VertexSet missing(const VertexSet& needed, const VertexSet& have) {
    VertexSet out;
    for (const auto& v : needed)
        if (!have.contains(v))
            out.insert(v);
    return out;
}

inline VertexSet undetermined(const SchemeGraph& scheme, const VertexSet& set, const VertexSet& targets) {
    VertexSet out;
    for (const auto& t : targets)
        if (!determines(scheme, set, t))
            out.insert(t);
    return out;
}

} // namespace detail

/// Digest-pool recurrence at n: pool(n-1) ∪ {Sink(n)} determines gcommit(n)
/// and every vertex of pool(n).
inline std::optional<std::string> digest_pool_defect(const SchemeGraph& scheme, std::uint64_t n,
                                                     const std::vector<VertexId>& previous,
                                                     const std::vector<VertexId>& current) {
    VertexSet base(previous.begin(), previous.end());
    base.insert(VertexId::sink(n));
    VertexSet targets(current.begin(), current.end());
    targets.insert(scheme.gcommit(n));
    const auto bad = detail::undetermined(scheme, base, targets);
    if (bad.empty())
        return std::nullopt;
    return "undetermined " + names(bad);
}

/// Certificate-pool sufficiency for (len_s, len_t).
inline std::optional<std::string> certificate_pool_defect(const SchemeGraph& scheme, std::uint64_t len_s,
                                                          std::uint64_t len_t) {
    VertexSet given = closed_out_neighborhood(scheme, scheme.certificate_pool(len_s));
    given.merge(closed_out_neighborhood(scheme, scheme.certificate_pool(len_t)));
    const auto needed = closed_out_neighborhood(scheme, path_vertices(scheme.gcertify(len_s, len_t)));
    const auto bad = detail::undetermined(scheme, given, needed);
    if (bad.empty())
        return std::nullopt;
    return "(" + std::to_string(len_s) + "," + std::to_string(len_t) + ") undetermined " + names(bad);
}

/// Pool checks: digest-pool recurrence for 2 <= n <= n_max and certificate
/// pool sufficiency for all 1 <= ls < lt <= n_max.
inline OracleReport check_pools(const SchemeGraph& scheme, std::uint64_t n_max) {
    OracleReport report{scheme.id(), 1, n_max, {}, {}};
    std::vector<VertexId> previous = scheme.digest_pool(1);
    for (std::uint64_t n = 2; n <= n_max; ++n) {
        auto current = scheme.digest_pool(n);
        if (auto d = digest_pool_defect(scheme, n, previous, current))
            report.violations.push_back({"digest-pool", n, *d});
        previous = std::move(current);
    }
    if (auto* am = dynamic_cast<const AntimonotoneScheme*>(&scheme)) {
        std::size_t failures = 0;
        std::uint64_t first = 0;
        auto prev = am->reduced_digest_pool(1);
        for (std::uint64_t n = 2; n <= n_max; ++n) {
            auto cur = am->reduced_digest_pool(n);
            if (digest_pool_defect(scheme, n, prev, cur) && failures++ == 0)
                first = n;
            prev = std::move(cur);
        }
        if (failures)
            report.notes.push_back("reduced digest pool fails the recurrence at " + std::to_string(failures) +
                                   " lengths (first n=" + std::to_string(first) +
                                   "); the pool of live jump targets is used instead");
    }
    for (std::uint64_t lt = 2; lt <= n_max; ++lt)
        for (std::uint64_t ls = 1; ls < lt; ++ls)
            if (auto d = certificate_pool_defect(scheme, ls, lt))
                report.violations.push_back({"certificate-pool", lt, *d});
    return report;
}

/// The eight contract invariants for every n <= n_max and every pair
/// ls < lt <= n_max. Pool invariants are also evaluated on the larger
/// truncations ⌊G⌋_{n+1} and ⌊G⌋_{n+17}.
inline OracleReport check_tpag_contract(const SchemeGraph& scheme, std::uint64_t n_max) {
    OracleReport report{scheme.id(), 1, n_max, {}, {}};
    auto flag = [&](const char* invariant, std::uint64_t n, std::string witness) {
        report.violations.push_back({invariant, n, std::move(witness)});
    };
    static constexpr std::uint64_t growth[] = {0, 1, 17};

    TruncatedGraph graph;
    std::map<std::uint64_t, std::vector<VertexId>> pools;
    for (std::uint64_t m = 1; m <= n_max + growth[2]; ++m) {
        try {
            graph.extend(scheme);
        } catch (const error& e) {
            flag("acyclic", m, e.what());
            return report;
        }
        if (m <= n_max && !topological_order(graph)) {
            flag("acyclic", m, "no topological order of the truncated graph");
            return report;
        }
        // pools of n checked once the graph has grown to n + k
        for (auto k : growth) {
            if (m < k + 2 || m - k > n_max)
                continue;
            const std::uint64_t n = m - k;
            auto get_pool = [&](std::uint64_t i) -> const std::vector<VertexId>& {
                auto it = pools.find(i);
                if (it == pools.end())
                    it = pools.emplace(i, scheme.digest_pool(i)).first;
                return it->second;
            };
            VertexSet base(get_pool(n - 1).begin(), get_pool(n - 1).end());
            base.insert(VertexId::sink(n));
            VertexSet targets(get_pool(n).begin(), get_pool(n).end());
            targets.insert(scheme.gcommit(n));
            for (const auto& t : targets) {
                // a pool vertex may be materialized only by a later commit
                // (TAT forest roots); judge it on the rule graph then
                const bool ok = graph.contains(t) ? determines(graph, base, t) : determines(scheme, base, t);
                if (!ok) {
                    flag("digest-pool", n, "k=" + std::to_string(k) + " undetermined " + t.name());
                    break;
                }
            }
        }
    }

    for (std::uint64_t n = 1; n <= n_max; ++n) {
        const VertexId sink = VertexId::sink(n);
        if (!scheme.contains(sink) || !scheme.out_neighbors(sink).empty())
            flag("sinks", n, "Sink(" + std::to_string(n) + ") missing or has out-edges");

        const VertexId top = scheme.gcommit(n);
        const VertexSet reachable = reach(scheme, top);
        VertexSet sinks;
        for (std::uint64_t i = 1; i <= n; ++i)
            sinks.insert(VertexId::sink(i));
        if (auto miss = detail::missing(sinks, reachable); !miss.empty())
            flag("tight-commitment", n, "unreachable " + names(miss));
        else if (!determines(scheme, sinks, top))
            flag("tight-commitment", n, "sinks <= n do not determine " + top.name());

        if (!determines(scheme, scheme.dock(n), top))
            flag("dock", n, names(scheme.dock(n)) + " does not determine " + top.name());

        const auto ids = scheme.identifier_paths(n);
        if (auto d = detail::path_defect(scheme, ids, top); !d.empty())
            flag("identifier", n, d);
        else if (!closed_out_neighborhood(scheme, path_vertices(ids)).contains(sink))
            flag("identifier", n, "closed out-neighborhood misses " + sink.name());
    }

    for (std::uint64_t lt = 2; lt <= n_max; ++lt) {
        for (std::uint64_t ls = 1; ls < lt; ++ls) {
            const std::string pair = "(" + std::to_string(ls) + "," + std::to_string(lt) + ")";
            const auto family = scheme.gcertify(ls, lt);
            if (auto d = detail::path_defect(scheme, family, scheme.gcommit(lt)); !d.empty()) {
                flag("gcertify", lt, pair + " " + d);
                continue;
            }
            const auto on_paths = path_vertices(family);
            const auto closed = closed_out_neighborhood(scheme, on_paths);
            if (auto miss = detail::missing(scheme.dock(ls), closed); !miss.empty()) {
                flag("gcertify", lt, pair + " dock not covered: " + names(miss));
                continue;
            }
            for (const auto& v : frontier(scheme, on_paths))
                if (v.is_sink() && v.a > lt)
                    flag("gcertify", lt, pair + " certificate reaches past the sequence at " + v.name());
            if (auto d = certificate_pool_defect(scheme, ls, lt))
                flag("certificate-pool", lt, *d);
        }
    }
    return report;
}

/// Contracts each chain c(n, ·) of the transparency-log graph to one vertex
/// and compares with the hypercore graph, d_n ↔ contracted chain.
inline OracleReport ct_contraction_check(std::uint64_t n_max) {
    const TransparencyLogScheme ct;
    const HypercoreScheme hc;
    OracleReport report{scheme_id::transparency_log, 1, n_max, {}, {}};
    auto contract = [](const VertexId& v) {
        return v.kind == vertex_kind::ct_internal ? VertexId::hyper_digest(v.a) : v;
    };
    TruncatedGraph ct_graph, hc_graph;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        ct_graph.extend(ct);
        hc_graph.extend(hc);
        std::set<std::pair<VertexId, VertexId>> contracted;
        for (const auto& [from, to] : ct_graph.edges()) {
            const auto a = contract(from), b = contract(to);
            if (a != b)
                contracted.emplace(a, b);
        }
        const auto expected = hc_graph.edges();
        const std::set<std::pair<VertexId, VertexId>> want(expected.begin(), expected.end());
        if (contracted != want) {
            std::string witness;
            for (const auto& e : want)
                if (!contracted.contains(e)) {
                    witness = "missing " + e.first.name() + "->" + e.second.name();
                    break;
                }
            if (witness.empty())
                for (const auto& e : contracted)
                    if (!want.contains(e)) {
                        witness = "extra " + e.first.name() + "->" + e.second.name();
                        break;
                    }
            report.violations.push_back({"ct-contraction", n, witness});
        }
        if (contract(ct.gcommit(n)) != hc.gcommit(n))
            report.violations.push_back({"ct-contraction", n, "commit vertices do not correspond"});
    }
    return report;
}

/// label_of via the engine against full_relabel, every vertex of ⌊G⌋_n.
inline OracleReport check_label_equality(const SchemeGraph& scheme, const std::vector<std::string>& items,
                                         const Hasher& hasher) {
    OracleReport report{scheme.id(), 1, items.size(), {}, {}};
    const auto reference = full_relabel(scheme, items, hasher);
    PrefixAuth pas(std::shared_ptr<const SchemeGraph>(&scheme, [](const SchemeGraph*) {}), hasher);
    auto labeler = pas.sequence_labeler(items);
    for (const auto& [v, l] : reference)
        if (labeler.label(v) != l)
            report.violations.push_back({"label-equality", items.size(), v.name()});
    return report;
}

/// A scheme that defers to `base` except where an override is set.
class MutantScheme final : public SchemeGraph {
public:
    explicit MutantScheme(std::shared_ptr<const SchemeGraph> base) : base_(std::move(base)) {}

    std::function<std::optional<std::vector<VertexId>>(const VertexId&)> out_neighbors_override;
    std::function<VertexId(std::uint64_t)> gcommit_override;
    std::function<VertexSet(std::uint64_t)> dock_override;
    std::function<PathFamily(std::uint64_t, std::uint64_t)> gcertify_override;
    std::function<VertexSet(std::uint64_t)> certificate_pool_override;
    std::function<std::vector<VertexId>(std::uint64_t)> digest_pool_override;
    std::function<PathFamily(std::uint64_t)> identifier_paths_override;

    scheme_id id() const override { return base_->id(); }
    bool contains(const VertexId& v) const override { return base_->contains(v); }
    std::vector<VertexId> out_neighbors(const VertexId& v) const override {
        if (out_neighbors_override)
            if (auto o = out_neighbors_override(v))
                return *o;
        return base_->out_neighbors(v);
    }
    VertexId gcommit(std::uint64_t n) const override {
        return gcommit_override ? gcommit_override(n) : base_->gcommit(n);
    }
    VertexSet dock(std::uint64_t n) const override { return dock_override ? dock_override(n) : base_->dock(n); }
    PathFamily gcertify(std::uint64_t s, std::uint64_t t) const override {
        return gcertify_override ? gcertify_override(s, t) : base_->gcertify(s, t);
    }
    VertexSet certificate_pool(std::uint64_t n) const override {
        return certificate_pool_override ? certificate_pool_override(n) : base_->certificate_pool(n);
    }
    std::vector<VertexId> digest_pool(std::uint64_t n) const override {
        return digest_pool_override ? digest_pool_override(n) : base_->digest_pool(n);
    }
    PathFamily identifier_paths(std::uint64_t n) const override {
        return identifier_paths_override ? identifier_paths_override(n) : base_->identifier_paths(n);
    }
    bool is_linking() const override { return base_->is_linking(); }

private:
    std::shared_ptr<const SchemeGraph> base_;
};

struct Mutant {
    std::string invariant;  // the one it must trip
    std::string description;
    std::shared_ptr<const SchemeGraph> scheme;
};

/// One deliberately broken scheme per contract invariant.
inline std::vector<Mutant> mutants() {
    std::vector<Mutant> out;
    auto linear = make_scheme(scheme_id::linear);
    auto hyper = make_scheme(scheme_id::hypercore);

    {
        struct ForestThreaded final : ThreadedAuthTreeScheme {
            std::uint64_t thread_length(std::uint64_t n) const override { return n; }
        };
        out.push_back({"acyclic", "TAT threading to the forest at n", std::make_shared<ForestThreaded>()});
    }
    {
        auto m = std::make_shared<MutantScheme>(linear);
        m->out_neighbors_override = [](const VertexId& v) -> std::optional<std::vector<VertexId>> {
            if (v.is_sink() && v.a >= 2)
                return std::vector<VertexId>{VertexId::sink(v.a - 1)};
            return std::nullopt;
        };
        out.push_back({"sinks", "linear with sink-to-sink edges", m});
    }
    {
        auto m = std::make_shared<MutantScheme>(linear);
        m->gcommit_override = [](std::uint64_t n) { return VertexId::chain(n > 1 ? n - 1 : 1); };
        out.push_back({"tight-commitment", "linear committing one item short", m});
    }
    {
        auto m = std::make_shared<MutantScheme>(hyper);
        m->dock_override = [](std::uint64_t n) {
            auto roots = tree::forest_roots(n);
            if (roots.size() > 1)
                roots.pop_back();
            else
                roots = tree::children(roots.front());
            return VertexSet(roots.begin(), roots.end());
        };
        out.push_back({"dock", "hypercore dock without the smallest tree", m});
    }
    {
        auto m = std::make_shared<MutantScheme>(linear);
        m->gcertify_override = [](std::uint64_t s, std::uint64_t t) {
            Path p;
            for (std::uint64_t i = t - 1; i >= s; --i)
                p.push_back(VertexId::chain(i));
            return PathFamily{p};
        };
        out.push_back({"gcertify", "linear certificate path missing its first vertex", m});
    }
    {
        auto m = std::make_shared<MutantScheme>(linear);
        m->digest_pool_override = [](std::uint64_t n) { return std::vector<VertexId>{VertexId::sink(n)}; };
        out.push_back({"digest-pool", "linear keeping only the last sink", m});
    }
    {
        auto m = std::make_shared<MutantScheme>(make_scheme(scheme_id::skip_list));
        m->certificate_pool_override = [](std::uint64_t n) { return VertexSet{VertexId::chain(n)}; };
        out.push_back({"certificate-pool", "skip list positional pool of the commit vertex only", m});
    }
    {
        auto m = std::make_shared<MutantScheme>(hyper);
        m->identifier_paths_override = [hyper](std::uint64_t n) {
            return PathFamily{{hyper->gcommit(n)}};
        };
        out.push_back({"identifier", "hypercore identifier stopping at the commit vertex", m});
    }
    return out;
}

/// Whether every maximal path from v meets `set`, by listing the paths.
/// Exponential; only meant to certify `determines` on tiny graphs.
template <DagView G>
bool determines_by_paths(const G& graph, const VertexSet& set, const VertexId& v) {
    std::vector<std::vector<VertexId>> stack{{v}};
    while (!stack.empty()) {
        auto path = std::move(stack.back());
        stack.pop_back();
        if (set.contains(path.back()))
            continue;
        const auto outs = graph.out_neighbors(path.back());
        if (outs.empty())
            return false;
        for (const auto& w : outs) {
            auto next = path;
            next.push_back(w);
            stack.push_back(std::move(next));
        }
    }
    return true;
}

} // namespace pfxauth::oracle

namespace pfxauth::oracle {

/// Measured disagreements between the antimonotone jump formulas and the
/// structure they are meant to encode.
struct AntimonotoneReport {
    antimonotone::variant variant{};
    unsigned t_max = 0;
    std::uint64_t n_max = 0;
    /// per generation count t: edge differences formula vs copy construction
    std::vector<std::vector<antimonotone::EdgeDiscrepancy>> edges;
    /// pairs n < m with f(n) < f(m), counted up to vertebra(t_max)
    std::uint64_t order_violations = 0;
    std::pair<std::uint64_t, std::uint64_t> first_order_violation{0, 0};
    /// generations whose vertebra's shortest path to p_1 skips the previous vertebra
    std::vector<unsigned> spine_breaks;
    /// certificate-pool defects (ls, lt) and whether a spine break explains each
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pool_defects;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> unexplained_pool_defects;

    /// A positional-certificate deviation at generation t is explained when the
    /// formula graph of the first t+1 generations differs from the copy
    /// construction.
    bool explains_generation(unsigned t) const { return t < edges.size() && !edges[t].empty(); }

    std::string text() const {
        std::ostringstream out;
        out << "antimonotone-" << (variant == antimonotone::variant::simple ? "simple" : "optimal") << "\n";
        for (unsigned t = 0; t < edges.size(); ++t) {
            out << "  generations<=" << t << ": " << edges[t].size() << " edge difference(s)";
            for (std::size_t i = 0; i < edges[t].size() && i < 6; ++i)
                out << (i ? ", " : " [") << edges[t][i].from.name() << "->" << edges[t][i].to.name()
                    << (edges[t][i].only_in_formula ? " formula" : " copies");
            out << (edges[t].empty() ? "" : edges[t].size() > 6 ? ", ...]" : "]") << "\n";
        }
        out << "  jump function not antimonotone: " << order_violations << " pair(s)";
        if (order_violations)
            out << ", first f(" << first_order_violation.first << ") < f(" << first_order_violation.second << ")";
        out << "\n  spine breaks at generations:";
        for (auto t : spine_breaks)
            out << " " << t;
        out << "\n  certificate-pool defects up to " << n_max << ": " << pool_defects.size() << ", unexplained "
            << unexplained_pool_defects.size() << "\n";
        return out.str();
    }
};

inline AntimonotoneReport antimonotone_report(antimonotone::variant var, unsigned t_max, std::uint64_t n_max) {
    const AntimonotoneScheme scheme(var);
    AntimonotoneReport report{var, t_max, n_max, {}, 0, {0, 0}, {}, {}, {}};
    for (unsigned t = 0; t <= t_max; ++t)
        report.edges.push_back(antimonotone::compare_constructions(scheme, t));

    // only real edges count: f(n) = 0 means no jump
    const std::uint64_t top = scheme.vertebra(t_max);
    for (std::uint64_t m = 2; m <= top; ++m) {
        const std::uint64_t fm = antimonotone::jump(var, m);
        for (std::uint64_t n = 2; n < m; ++n) {
            const std::uint64_t fn = antimonotone::jump(var, n);
            if (fn >= 1 && fn < fm && report.order_violations++ == 0)
                report.first_order_violation = {n, m};
        }
    }

    const unsigned spine_top = std::max(t_max, scheme.generation(std::max<std::uint64_t>(n_max, 1)));
    for (unsigned t = 1; t <= spine_top; ++t) {
        const Path p = scheme.shortest_path(VertexId::chain(scheme.vertebra(t)), VertexId::chain(1));
        if (std::find(p.begin(), p.end(), VertexId::chain(scheme.vertebra(t - 1))) == p.end())
            report.spine_breaks.push_back(t);
    }

    for (std::uint64_t lt = 2; lt <= n_max; ++lt)
        for (std::uint64_t ls = 1; ls < lt; ++ls) {
            if (!certificate_pool_defect(scheme, ls, lt))
                continue;
            report.pool_defects.emplace_back(ls, lt);
            const unsigned lo = scheme.generation(ls), hi = scheme.generation(lt);
            const bool explained = std::any_of(report.spine_breaks.begin(), report.spine_breaks.end(),
                                               [&](unsigned t) { return t > lo && t <= hi; });
            if (!explained)
                report.unexplained_pool_defects.emplace_back(ls, lt);
        }
    return report;
}

} // namespace pfxauth::oracle
