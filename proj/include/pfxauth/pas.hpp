#pragma once

#include <pfxauth/schemes.hpp>

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pfxauth {

struct Digest {
    scheme_id scheme{};
    std::uint64_t length = 0;
    Label label;

    bool operator==(const Digest&) const = default;
};

struct PrefixCertificate {
    scheme_id scheme{};
    std::uint64_t len_s = 0;
    std::uint64_t len_t = 0;
    std::vector<Label> labels;  // canonical vertex order

    bool operator==(const PrefixCertificate&) const = default;
};

using LabeledVertex = std::pair<VertexId, Label>;

struct CommitState {
    scheme_id scheme{};
    std::uint64_t length = 0;
    std::vector<LabeledVertex> pool;  // digest_pool(length), canonical order

    bool operator==(const CommitState&) const = default;
};

struct PositionalCertificate {
    scheme_id scheme{};
    std::uint64_t n = 0;
    std::vector<LabeledVertex> labels;
};

/// Binds item-hash to Sink(position) under gcommit(position). The boundary
/// covers the out-neighborhood of identifier_paths(position), Sink(position)
/// included.
struct Identifier {
    scheme_id scheme{};
    std::uint64_t position = 0;
    Label item_hash;
    std::vector<Label> boundary;  // canonical vertex order

    bool operator==(const Identifier&) const = default;
};

struct TimestampCertificate {
    PrefixCertificate prefix;
    Identifier id_s;
    Identifier id_t;

    bool operator==(const TimestampCertificate&) const = default;
};

/// Vertices whose labels make up a prefix certificate: the out-neighborhood
/// of the gcertify paths. Path vertices themselves are recomputed.
inline std::vector<VertexId> certificate_vertices(const SchemeGraph& scheme, std::uint64_t len_s,
                                                  std::uint64_t len_t) {
    return canonical_sequence(frontier(scheme, path_vertices(scheme.gcertify(len_s, len_t))));
}

inline std::vector<VertexId> positional_vertices(const SchemeGraph& scheme, std::uint64_t n) {
    return canonical_sequence(frontier(scheme, scheme.certificate_pool(n)));
}

inline std::vector<VertexId> identifier_vertices(const SchemeGraph& scheme, std::uint64_t position) {
    return canonical_sequence(out_neighborhood(scheme, path_vertices(scheme.identifier_paths(position))));
}

/// A prefix authentication scheme: a scheme graph plus a hash function.
class PrefixAuth {
public:
    explicit PrefixAuth(scheme_id id, HashConfig config = HashConfig::sha256())
        : scheme_(make_scheme(id)), hasher_(config) {}

    PrefixAuth(std::shared_ptr<const SchemeGraph> scheme, Hasher hasher)
        : scheme_(std::move(scheme)), hasher_(std::move(hasher)) {}

    const SchemeGraph& scheme() const noexcept { return *scheme_; }
    scheme_id id() const { return scheme_->id(); }
    const Hasher& hasher() const noexcept { return hasher_; }

    /// The same scheme with a hasher that records its work in `counter`.
    PrefixAuth counted(HashCounter& counter) const { return PrefixAuth(scheme_, hasher_.counted(counter)); }

    /// Labels of the sequence graph of `items`: sink i carries the hash of
    /// items[i-1], sinks past the end the hash of the empty string.
    template <typename Item>
    auto sequence_labeler(const std::vector<Item>& items) const {
        auto leaves = [this, &items, empty = hasher_.sink(std::string_view{})](const VertexId& v) -> std::optional<Label> {
            if (v.a >= 1 && v.a <= items.size())
                return hasher_.sink(as_bytes(items[v.a - 1]));
            return empty;
        };
        return MerkleLabeler<SchemeGraph, decltype(leaves)>(*scheme_, hasher_, std::move(leaves));
    }

    template <typename Item>
    Digest commit(const std::vector<Item>& items) const {
        if (items.empty())
            throw error(errc::length_zero, "length must be >= 1");
        auto labeler = sequence_labeler(items);
        return {id(), items.size(), labeler.label(scheme_->gcommit(items.size()))};
    }

    /// State for a single item, without any earlier pool.
    CommitState initial_state() const { return CommitState{id(), 0, {}}; }

    /// Appends one item using only the old pool and the new item.
    template <typename Item>
    std::pair<Digest, CommitState> sparse_commit(const CommitState& state, const Item& item) const {
        check_state(state);
        Labeling known;
        for (const auto& [v, l] : state.pool)
            known.emplace(v, l);
        const std::uint64_t n = state.length + 1;
        known.emplace(VertexId::sink(n), hasher_.sink(as_bytes(item)));
        PartialLabeler<SchemeGraph> labeler(*scheme_, known, hasher_);
        CommitState next{id(), n, {}};
        for (const auto& v : scheme_->digest_pool(n)) {
            auto l = labeler.try_label(v);
            if (!l)
                throw error(errc::corrupt_commit_state, "pool of " + std::to_string(state.length) +
                                                            " does not determine " + v.name());
            next.pool.emplace_back(v, *l);
        }
        auto top = labeler.try_label(scheme_->gcommit(n));
        if (!top)
            throw error(errc::corrupt_commit_state, "pool does not determine the commit vertex");
        return {Digest{id(), n, *top}, std::move(next)};
    }

    /// Builds the commit state of a sequence directly.
    template <typename Item>
    CommitState state_of(const std::vector<Item>& items) const {
        if (items.empty())
            return initial_state();
        auto labeler = sequence_labeler(items);
        CommitState out{id(), items.size(), {}};
        for (const auto& v : scheme_->digest_pool(items.size()))
            out.pool.emplace_back(v, labeler.label(v));
        return out;
    }

    void check_state(const CommitState& state) const {
        if (state.scheme != id())
            throw error(errc::corrupt_commit_state, "scheme mismatch");
        if (state.length == 0) {
            if (!state.pool.empty())
                throw error(errc::corrupt_commit_state, "empty sequence with a pool");
            return;
        }
        const auto expected = scheme_->digest_pool(state.length);
        if (expected.size() != state.pool.size())
            throw error(errc::corrupt_commit_state, "pool size mismatch");
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (state.pool[i].first != expected[i])
                throw error(errc::corrupt_commit_state, "pool vertex mismatch at " + expected[i].name());
            if (state.pool[i].second.size() != hasher_.width())
                throw error(errc::corrupt_commit_state, "pool label width mismatch");
        }
    }

    template <typename Item>
    PrefixCertificate certify(const std::vector<Item>& t_items, std::uint64_t len_s) const {
        const std::uint64_t len_t = t_items.size();
        require_proper_prefix(len_s, len_t);
        auto labeler = sequence_labeler(t_items);
        PrefixCertificate cert{id(), len_s, len_t, {}};
        for (const auto& v : certificate_vertices(*scheme_, len_s, len_t)) {
            if (v.is_sink() && v.a > len_t)
                throw error(errc::out_of_range, "certificate reaches past the sequence at " + v.name());
            cert.labels.push_back(labeler.label(v));
        }
        return cert;
    }

    /// Labels of certificate_pool(n) as they stand in the sequence graph of
    /// `items`. A pool may reach past n (a tree pool climbs to nextroot(n)), so
    /// both certificates fed to certify_from_pools come from the longer sequence.
    template <typename Item>
    PositionalCertificate positional_certificate(const std::vector<Item>& items, std::uint64_t n) const {
        require_length(n);
        if (n > items.size())
            throw error(errc::out_of_range, "position " + std::to_string(n) + " past the sequence");
        auto labeler = sequence_labeler(items);
        PositionalCertificate out{id(), n, {}};
        for (const auto& v : positional_vertices(*scheme_, n))
            out.labels.emplace_back(v, labeler.label(v));
        return out;
    }

    template <typename Item>
    PositionalCertificate positional_certificate(const std::vector<Item>& items) const {
        return positional_certificate(items, items.size());
    }

    /// certify(t, pc_s.n) computed from the two positional certificates only,
    /// both taken from t with |t| = pc_t.n.
    PrefixCertificate certify_from_pools(const PositionalCertificate& pc_s, const PositionalCertificate& pc_t) const {
        if (pc_s.scheme != id() || pc_t.scheme != id())
            throw error(errc::context_mismatch, "positional certificate of another scheme");
        require_proper_prefix(pc_s.n, pc_t.n);
        Labeling known;
        for (const auto& [v, l] : pc_t.labels)
            known.emplace(v, l);
        for (const auto& [v, l] : pc_s.labels) {
            auto [it, fresh] = known.emplace(v, l);
            if (!fresh && it->second != l)
                throw error(errc::context_mismatch, "positional certificates disagree at " + v.name());
        }
        PartialLabeler<SchemeGraph> labeler(*scheme_, known, hasher_);
        PrefixCertificate cert{id(), pc_s.n, pc_t.n, {}};
        for (const auto& v : certificate_vertices(*scheme_, pc_s.n, pc_t.n)) {
            auto l = labeler.try_label(v);
            if (!l)
                throw error(errc::insufficient_pool, v.name() + " is not derivable from the pools");
            cert.labels.push_back(*l);
        }
        return cert;
    }

    /// Checks that d_s commits to a prefix of what d_t commits to.
    /// Returns false on refutation; malformed inputs throw.
    bool verify(const Digest& d_s, const Digest& d_t, const PrefixCertificate& cert) const {
        if (cert.scheme != id() || d_s.scheme != id() || d_t.scheme != id())
            throw error(errc::context_mismatch, "scheme mismatch");
        if (d_s.length != cert.len_s || d_t.length != cert.len_t)
            throw error(errc::context_mismatch, "digest lengths do not match the certificate");
        if (cert.len_s == 0 || cert.len_s >= cert.len_t)
            throw error(errc::context_mismatch, "not a proper prefix");
        if (d_s.label.size() != hasher_.width() || d_t.label.size() != hasher_.width())
            throw error(errc::malformed_certificate, "digest label width");
        const auto vertices = certificate_vertices(*scheme_, cert.len_s, cert.len_t);
        if (vertices.size() != cert.labels.size())
            throw error(errc::malformed_certificate, "expected " + std::to_string(vertices.size()) + " labels, got " +
                                                         std::to_string(cert.labels.size()));
        Labeling p;
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            if (cert.labels[i].size() != hasher_.width())
                throw error(errc::malformed_certificate, "label width");
            p.emplace(vertices[i], cert.labels[i]);
        }
        PartialLabeler<SchemeGraph> labeler(*scheme_, p, hasher_);
        if (labeler.label(scheme_->gcommit(cert.len_t)) != d_t.label)
            return false;
        return labeler.label(scheme_->gcommit(cert.len_s)) == d_s.label;
    }

    template <typename Item>
    Identifier identify(const std::vector<Item>& t_items, std::uint64_t position) const {
        if (position == 0 || position > t_items.size())
            throw error(errc::out_of_range, "position " + std::to_string(position) + " outside 1.." +
                                                std::to_string(t_items.size()));
        auto labeler = sequence_labeler(t_items);
        Identifier out{id(), position, hasher_.sink(as_bytes(t_items[position - 1])), {}};
        for (const auto& v : identifier_vertices(*scheme_, position))
            out.boundary.push_back(labeler.label(v));
        return out;
    }

    /// The identifier as a subgraph proof claiming `root_label` for gcommit(position).
    SubgraphProof identifier_proof(const Identifier& id_, const Label& root_label) const {
        const auto vertices = identifier_vertices(*scheme_, id_.position);
        if (vertices.size() != id_.boundary.size())
            throw error(errc::malformed_certificate, "identifier boundary size");
        SubgraphProof proof{scheme_->gcommit(id_.position), root_label, scheme_->identifier_paths(id_.position), {}};
        for (std::size_t i = 0; i < vertices.size(); ++i)
            proof.boundary.emplace(vertices[i], id_.boundary[i]);
        return proof;
    }

    /// Whether the identifier places its item at its position under `d`.
    bool verify_identifier(const Digest& d, const Identifier& id_) const {
        if (id_.scheme != id() || d.scheme != id())
            throw error(errc::context_mismatch, "scheme mismatch");
        if (d.length != id_.position)
            return false;
        if (id_.item_hash.size() != hasher_.width())
            throw error(errc::malformed_certificate, "item hash width");
        SubgraphProof proof = identifier_proof(id_, d.label);
        auto sink = proof.boundary.find(VertexId::sink(id_.position));
        if (sink == proof.boundary.end())
            throw error(errc::malformed_certificate, "identifier does not reach its sink");
        if (sink->second != id_.item_hash)
            return false;
        try {
            return verify_subgraph_proof(*scheme_, proof, hasher_);
        } catch (const error& e) {
            throw error(errc::malformed_certificate, e.what());
        }
    }

    template <typename Item>
    TimestampCertificate timestamp_certify(const std::vector<Item>& t_items, std::uint64_t len_s) const {
        return {certify(t_items, len_s), identify(t_items, len_s), identify(t_items, t_items.size())};
    }

    template <typename Item>
    TimestampCertificate timestamp_certify(const std::vector<Item>& s_items, const std::vector<Item>& t_items) const {
        if (s_items.size() > t_items.size() || !std::equal(s_items.begin(), s_items.end(), t_items.begin()))
            throw error(errc::not_proper_prefix, "s is not a prefix of t");
        return timestamp_certify(t_items, s_items.size());
    }

    bool timestamp_verify(const Digest& d_s, const Digest& d_t, const TimestampCertificate& tc) const {
        if (tc.id_s.position != tc.prefix.len_s || tc.id_t.position != tc.prefix.len_t)
            return false;
        if (!verify(d_s, d_t, tc.prefix))
            return false;
        return verify_identifier(d_s, tc.id_s) && verify_identifier(d_t, tc.id_t);
    }

private:
    static std::span<const std::uint8_t> as_bytes(const std::string& s) {
        return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
    }
    static std::span<const std::uint8_t> as_bytes(std::string_view s) {
        return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
    }
    static std::span<const std::uint8_t> as_bytes(const bytes& b) { return {b.data(), b.size()}; }

    std::shared_ptr<const SchemeGraph> scheme_;
    Hasher hasher_;
};

} // namespace pfxauth
