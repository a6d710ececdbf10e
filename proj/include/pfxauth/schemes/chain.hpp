#pragma once

#include <pfxauth/scheme.hpp>

#include <cstdint>
#include <vector>

namespace pfxauth {

/// Common ground of the schemes that extend the Merkle linked list: vertex
/// set {p_n} ∪ ℕ, edges p_n → n and p_n → p_{n-1}, gcommit(n) = p_n, and
/// gcertify = shortest path between commit vertices.
class ChainSchemeBase : public SchemeGraph {
public:
    bool contains(const VertexId& v) const override {
        return (v.kind == vertex_kind::sink || v.kind == vertex_kind::chain) && v.a >= 1 && v.b == 0;
    }

    std::vector<VertexId> out_neighbors(const VertexId& v) const override {
        if (!contains(v))
            throw error(errc::no_such_vertex, v.name());
        if (v.is_sink())
            return {};
        std::vector<VertexId> out{VertexId::sink(v.a)};
        for (std::uint64_t target : chain_targets(v.a))
            out.push_back(VertexId::chain(target));
        return canonical_sequence(std::move(out));
    }

    VertexId gcommit(std::uint64_t n) const override {
        require_length(n);
        return VertexId::chain(n);
    }

    PathFamily gcertify(std::uint64_t len_s, std::uint64_t len_t) const override {
        require_proper_prefix(len_s, len_t);
        return {pool_path(len_s, len_t)};
    }

    PathFamily identifier_paths(std::uint64_t n) const override {
        require_length(n);
        return {{VertexId::chain(n)}};
    }

    /// Chain-vertex targets of p_n, including n-1 when n >= 2.
    virtual std::vector<std::uint64_t> chain_targets(std::uint64_t n) const = 0;

protected:
    bool may_reach(const VertexId& from, const VertexId& to) const override {
        if (from == to)
            return true;
        if (from.is_sink())
            return false;
        return from.a >= to.a;
    }

    /// Vertices of the shortest path from p_from down to p_to.
    VertexSet chain_path_set(std::uint64_t from, std::uint64_t to) const {
        auto p = shortest_path(VertexId::chain(from), VertexId::chain(to));
        return {p.begin(), p.end()};
    }
};

/// Merkle linked list.
class LinearScheme final : public ChainSchemeBase {
public:
    scheme_id id() const override { return scheme_id::linear; }

    std::vector<std::uint64_t> chain_targets(std::uint64_t n) const override {
        if (n >= 2)
            return {n - 1};
        return {};
    }

    PathFamily gcertify(std::uint64_t len_s, std::uint64_t len_t) const override {
        require_proper_prefix(len_s, len_t);
        Path path;
        for (std::uint64_t i = len_t; i >= len_s; --i)
            path.push_back(VertexId::chain(i));
        return {path};
    }

    /// All of ⌊G⌋_n.
    VertexSet certificate_pool(std::uint64_t n) const override {
        require_length(n);
        VertexSet out;
        for (std::uint64_t i = 1; i <= n; ++i) {
            out.insert(VertexId::chain(i));
            out.insert(VertexId::sink(i));
        }
        return out;
    }

    std::vector<VertexId> digest_pool(std::uint64_t n) const override {
        require_length(n);
        return {VertexId::chain(n)};
    }
};

/// Every p_j points to every p_i with i < j.
class FullScheme final : public ChainSchemeBase {
public:
    scheme_id id() const override { return scheme_id::full; }

    std::vector<std::uint64_t> chain_targets(std::uint64_t n) const override {
        std::vector<std::uint64_t> out;
        for (std::uint64_t i = 1; i < n; ++i)
            out.push_back(i);
        return out;
    }

    PathFamily gcertify(std::uint64_t len_s, std::uint64_t len_t) const override {
        require_proper_prefix(len_s, len_t);
        return {{VertexId::chain(len_t), VertexId::chain(len_s)}};
    }

    VertexSet certificate_pool(std::uint64_t n) const override {
        require_length(n);
        return {VertexId::chain(n)};
    }

    std::vector<VertexId> digest_pool(std::uint64_t n) const override {
        require_length(n);
        std::vector<VertexId> out;
        for (std::uint64_t i = 1; i <= n; ++i)
            out.push_back(VertexId::chain(i));
        return out;
    }
};

/// Deterministic skip list: p_n → p_{n-2^i} whenever 2^i divides n.
class SkipListScheme final : public ChainSchemeBase {
public:
    scheme_id id() const override { return scheme_id::skip_list; }

    std::vector<std::uint64_t> chain_targets(std::uint64_t n) const override {
        std::vector<std::uint64_t> out;
        for (std::uint64_t step = 1; step < n && n % step == 0; step <<= 1)
            out.push_back(n - step);
        return out;
    }

    VertexSet certificate_pool(std::uint64_t n) const override {
        require_length(n);
        const std::uint64_t top = std::uint64_t{1} << ceil_log2(n);
        VertexSet out = chain_path_set(top, n);
        out.merge(chain_path_set(n, 1));
        return out;
    }

    std::vector<VertexId> digest_pool(std::uint64_t n) const override {
        require_length(n);
        return canonical_sequence(chain_path_set(n, 1));
    }
};

} // namespace pfxauth
