#pragma once

#include <pfxauth/bits.hpp>
#include <pfxauth/error.hpp>
#include <pfxauth/merkle_dag.hpp>
#include <pfxauth/vertex.hpp>

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pfxauth {

enum class scheme_id : std::uint8_t {
    linear = 1,
    full = 2,
    skip_list = 3,
    antimonotone_simple = 4,
    antimonotone_optimal = 5,
    threaded_auth_tree = 6,
    hypercore = 7,
    transparency_log = 8,
};

inline constexpr scheme_id all_schemes[] = {
    scheme_id::linear,
    scheme_id::full,
    scheme_id::skip_list,
    scheme_id::antimonotone_simple,
    scheme_id::antimonotone_optimal,
    scheme_id::threaded_auth_tree,
    scheme_id::hypercore,
    scheme_id::transparency_log,
};

constexpr std::string_view to_string(scheme_id id) noexcept {
    switch (id) {
    case scheme_id::linear: return "linear";
    case scheme_id::full: return "full";
    case scheme_id::skip_list: return "skiplist";
    case scheme_id::antimonotone_simple: return "antimonotone-simple";
    case scheme_id::antimonotone_optimal: return "antimonotone-optimal";
    case scheme_id::threaded_auth_tree: return "tat";
    case scheme_id::hypercore: return "hypercore";
    case scheme_id::transparency_log: return "ct";
    }
    return "unknown";
}

inline scheme_id parse_scheme_id(std::string_view name) {
    for (auto id : all_schemes)
        if (to_string(id) == name)
            return id;
    throw error(errc::context_mismatch, "unknown scheme '" + std::string(name) + "'");
}

inline bool is_valid_scheme_id(std::uint8_t raw) noexcept {
    return raw >= static_cast<std::uint8_t>(scheme_id::linear) &&
           raw <= static_cast<std::uint8_t>(scheme_id::transparency_log);
}

inline void require_length(std::uint64_t n) {
    if (n == 0)
        throw error(errc::length_zero);
}

inline void require_proper_prefix(std::uint64_t len_s, std::uint64_t len_t) {
    require_length(len_s);
    if (len_s >= len_t)
        throw error(errc::not_proper_prefix,
                    std::to_string(len_s) + " is not less than " + std::to_string(len_t));
}

/// A transitive prefix authentication graph: an infinite acyclic graph
/// given by rules, with Sink(n) for every n >= 1, plus the functions that
/// turn it into a prefix authentication scheme.
///
/// All members are pure; instances hold no mutable state and may be shared
/// freely between threads.
class SchemeGraph {
public:
    virtual ~SchemeGraph() = default;

    virtual scheme_id id() const = 0;

    /// Out-neighbors of v in canonical order. v must be a vertex.
    virtual std::vector<VertexId> out_neighbors(const VertexId& v) const = 0;

    virtual bool contains(const VertexId& v) const = 0;

    bool is_sink(const VertexId& v) const { return v.is_sink() && contains(v); }

    /// The vertex whose label is the digest of a length-n sequence.
    virtual VertexId gcommit(std::uint64_t n) const = 0;

    /// A vertex set that determines gcommit(n) and is exposed by
    /// certificates for length-n prefixes.
    virtual VertexSet dock(std::uint64_t n) const {
        require_length(n);
        return {gcommit(n)};
    }

    /// Paths from gcommit(len_t) whose closed out-neighborhood holds dock(len_s).
    virtual PathFamily gcertify(std::uint64_t len_s, std::uint64_t len_t) const = 0;

    virtual VertexSet certificate_pool(std::uint64_t n) const = 0;

    /// Vertices whose labels suffice to keep appending from length n.
    virtual std::vector<VertexId> digest_pool(std::uint64_t n) const = 0;

    /// Paths from gcommit(n) whose closed out-neighborhood holds Sink(n).
    virtual PathFamily identifier_paths(std::uint64_t n) const = 0;

    /// Linking schemes expose gcommit(len_s) itself on the certificate path.
    virtual bool is_linking() const { return true; }

    /// Largest sequence position whose item can influence v's label.
    virtual std::uint64_t max_position(const VertexId& v) const { return v.a; }

    /// Breadth-first shortest path; ties go to the canonically smallest
    /// out-neighbor. Throws if `to` is unreachable from `from`.
    Path shortest_path(const VertexId& from, const VertexId& to) const {
        auto p = bfs(from, to, nullptr);
        if (!p)
            throw error(errc::no_such_vertex, to.name() + " is unreachable from " + from.name());
        return *p;
    }

    /// Shortest path that only visits vertices of `allowed`, if there is one.
    std::optional<Path> shortest_path_within(const VertexId& from, const VertexId& to, const VertexSet& allowed) const {
        if (!allowed.contains(from) || !allowed.contains(to))
            return std::nullopt;
        return bfs(from, to, &allowed);
    }

    /// Shortest path from gcommit(len_t) to gcommit(len_s) through the two
    /// certificate pools, so the certificate is computable from positional
    /// certificates; the unrestricted shortest path when the pools do not
    /// connect.
    Path pool_path(std::uint64_t len_s, std::uint64_t len_t) const {
        VertexSet allowed = certificate_pool(len_s);
        allowed.merge(certificate_pool(len_t));
        if (auto p = shortest_path_within(gcommit(len_t), gcommit(len_s), allowed))
            return *p;
        return shortest_path(gcommit(len_t), gcommit(len_s));
    }

protected:
    /// Pruning hint for shortest_path: false only if `from` cannot reach `to`.
    virtual bool may_reach(const VertexId& from, const VertexId& to) const {
        return from == to || !from.is_sink();
    }

private:
    std::optional<Path> bfs(const VertexId& from, const VertexId& to, const VertexSet* allowed) const {
        if (from == to)
            return Path{from};
        std::unordered_map<VertexId, VertexId, VertexIdHash> parent;
        std::deque<VertexId> queue{from};
        parent.emplace(from, from);
        while (!queue.empty()) {
            const VertexId x = queue.front();
            queue.pop_front();
            for (const auto& y : out_neighbors(x)) {
                if (parent.contains(y) || (allowed && !allowed->contains(y)) || !may_reach(y, to))
                    continue;
                parent.emplace(y, x);
                if (y == to) {
                    Path path{to};
                    for (VertexId cur = x; cur != from; cur = parent.at(cur))
                        path.push_back(cur);
                    path.push_back(from);
                    std::reverse(path.begin(), path.end());
                    return path;
                }
                queue.push_back(y);
            }
        }
        return std::nullopt;
    }
};

/// Vertex set of ⌊G⌋_n: everything reachable from gcommit(1..n), with its
/// induced edges. Satisfies DagView, so the hashcore engine runs on it.
class TruncatedGraph {
public:
    TruncatedGraph() = default;

    TruncatedGraph(const SchemeGraph& scheme, std::uint64_t n) : scheme_(scheme.id()) {
        require_length(n);
        for (std::uint64_t i = 1; i <= n; ++i)
            extend(scheme);
    }

    /// Grows ⌊G⌋_n to ⌊G⌋_{n+1}.
    void extend(const SchemeGraph& scheme) {
        ++n_;
        std::vector<VertexId> todo{scheme.gcommit(n_)};
        last_new_vertices_ = 0;
        last_new_edges_ = 0;
        while (!todo.empty()) {
            VertexId v = todo.back();
            todo.pop_back();
            if (adjacency_.contains(v))
                continue;
            auto outs = scheme.out_neighbors(v);
            last_new_vertices_ += 1;
            last_new_edges_ += outs.size();
            for (const auto& w : outs)
                if (!adjacency_.contains(w))
                    todo.push_back(w);
            adjacency_.emplace(v, std::move(outs));
        }
        edge_count_ += last_new_edges_;
    }

    scheme_id scheme() const noexcept { return scheme_; }
    std::uint64_t length() const noexcept { return n_; }
    std::size_t vertex_count() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }
    std::size_t last_new_vertices() const noexcept { return last_new_vertices_; }
    std::size_t last_new_edges() const noexcept { return last_new_edges_; }

    bool contains(const VertexId& v) const { return adjacency_.contains(v); }

    std::vector<VertexId> out_neighbors(const VertexId& v) const {
        auto it = adjacency_.find(v);
        if (it == adjacency_.end())
            throw error(errc::no_such_vertex, v.name());
        return it->second;
    }

    VertexSet vertices() const {
        VertexSet out;
        for (const auto& [v, outs] : adjacency_)
            out.insert(v);
        return out;
    }

    std::vector<std::pair<VertexId, VertexId>> edges() const {
        std::vector<std::pair<VertexId, VertexId>> out;
        for (const auto& [v, outs] : adjacency_)
            for (const auto& w : outs)
                out.emplace_back(v, w);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    scheme_id scheme_{};
    std::uint64_t n_ = 0;
    std::unordered_map<VertexId, std::vector<VertexId>, VertexIdHash> adjacency_;
    std::size_t edge_count_ = 0;
    std::size_t last_new_vertices_ = 0;
    std::size_t last_new_edges_ = 0;
};

inline TruncatedGraph truncate(const SchemeGraph& scheme, std::uint64_t n) { return TruncatedGraph(scheme, n); }

} // namespace pfxauth
