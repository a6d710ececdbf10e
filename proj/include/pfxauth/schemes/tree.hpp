#pragma once

#include <pfxauth/scheme.hpp>

#include <algorithm>
#include <cstdint>
#include <vector>

namespace pfxauth {

namespace tree {

constexpr std::uint64_t span_of(const VertexId& v) noexcept { return std::uint64_t{1} << v.b; }

/// (n, k) with n >= 1 and 2^k | n
constexpr bool is_tree_vertex(const VertexId& v) noexcept {
    return v.kind == vertex_kind::tree && v.a >= 1 && v.b < 63 && v.a % span_of(v) == 0;
}

/// Whether the complete subtree rooted at `root` holds leaf position p.
constexpr bool covers(const VertexId& root, std::uint64_t p) noexcept {
    return p <= root.a && p + span_of(root) > root.a;
}

/// Whether `inner` lies in the subtree rooted at `root`.
constexpr bool subtree_contains(const VertexId& root, const VertexId& inner) noexcept {
    return inner.b <= root.b && covers(root, inner.a);
}

/// Children in G_tree; (i, 0) points to sink i.
inline std::vector<VertexId> children(const VertexId& v) {
    if (v.b == 0)
        return {VertexId::sink(v.a)};
    const std::uint64_t half = span_of(v) >> 1;
    return {VertexId::tree(v.a - half, v.b - 1), VertexId::tree(v.a, v.b - 1)};
}

/// Roots of ⌊G_tree⌋_n, largest tree first. One root per set bit of n.
inline std::vector<VertexId> forest_roots(std::uint64_t n) {
    std::vector<VertexId> out;
    std::uint64_t offset = 0;
    for (int k = 63; k >= 0; --k) {
        const std::uint64_t size = std::uint64_t{1} << k;
        if (n & size) {
            offset += size;
            out.push_back(VertexId::tree(offset, static_cast<std::uint64_t>(k)));
        }
    }
    return out;
}

struct ForestSummary {
    std::uint64_t n = 0;
    std::vector<VertexId> roots;
    std::vector<std::uint64_t> tree_sizes;
};

inline ForestSummary tree_forest(std::uint64_t n) {
    require_length(n);
    ForestSummary out{n, forest_roots(n), {}};
    for (const auto& r : out.roots)
        out.tree_sizes.push_back(span_of(r));
    return out;
}

/// Root of the smallest complete subtree holding both 1 and n.
inline VertexId nextroot(std::uint64_t n) {
    require_length(n);
    const unsigned k = ceil_log2(n);
    return VertexId::tree(std::uint64_t{1} << k, k);
}

inline VertexId nextpower(std::uint64_t n) {
    require_length(n);
    return VertexId::tree(std::uint64_t{1} << ceil_log2(n), 0);
}

/// The unique downward path from `root` to `target` inside root's subtree.
inline Path descend(const VertexId& root, const VertexId& target) {
    if (!subtree_contains(root, target))
        throw error(errc::no_such_vertex, target.name() + " is not below " + root.name());
    Path path{root};
    VertexId cur = root;
    while (cur.b > target.b) {
        const std::uint64_t half = span_of(cur) >> 1;
        if (target.a <= cur.a - half)
            cur = VertexId::tree(cur.a - half, cur.b - 1);
        else
            cur = VertexId::tree(cur.a, cur.b - 1);
        path.push_back(cur);
    }
    return path;
}

/// The forest root of ⌊G_tree⌋_n whose subtree holds v.
inline VertexId root_containing(std::uint64_t n, const VertexId& v) {
    for (const auto& r : forest_roots(n))
        if (subtree_contains(r, v))
            return r;
    throw error(errc::no_such_vertex, v.name() + " is not in the forest of " + std::to_string(n));
}

inline bool is_power_of_two(std::uint64_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

} // namespace tree

using tree::ForestSummary;
using tree::tree_forest;

/// Schemes built on the infinite Merkle tree G_tree.
class TreeSchemeBase : public SchemeGraph {
public:
    bool contains(const VertexId& v) const override {
        if (v.kind == vertex_kind::sink)
            return v.a >= 1 && v.b == 0;
        if (v.kind == vertex_kind::tree)
            return tree::is_tree_vertex(v);
        return contains_extra(v);
    }

    std::vector<VertexId> out_neighbors(const VertexId& v) const override {
        if (!contains(v))
            throw error(errc::no_such_vertex, v.name());
        if (v.is_sink())
            return {};
        return canonical_sequence(raw_out_neighbors(v));
    }

    /// Paths nextroot(n) → (n,0) and nextroot(n) → (1,0).
    VertexSet certificate_pool(std::uint64_t n) const override {
        const VertexId top = tree::nextroot(n);
        VertexSet out;
        for (const auto& v : tree::descend(top, VertexId::tree(n, 0)))
            out.insert(v);
        for (const auto& v : tree::descend(top, VertexId::tree(1, 0)))
            out.insert(v);
        return out;
    }

    /// Roots of ⌊G_tree⌋_n.
    std::vector<VertexId> digest_pool(std::uint64_t n) const override {
        require_length(n);
        return canonical_sequence(tree::forest_roots(n));
    }

protected:
    virtual bool contains_extra(const VertexId&) const { return false; }

    virtual std::vector<VertexId> raw_out_neighbors(const VertexId& v) const { return tree::children(v); }
};

/// G_tree with threading edges from every (n, 0) to the roots of
/// ⌊G_tree⌋_{n-1}.
class ThreadedAuthTreeScheme : public TreeSchemeBase {
public:
    scheme_id id() const override { return scheme_id::threaded_auth_tree; }

    VertexId gcommit(std::uint64_t n) const override {
        require_length(n);
        return VertexId::tree(n, 0);
    }

    PathFamily gcertify(std::uint64_t len_s, std::uint64_t len_t) const override {
        require_proper_prefix(len_s, len_t);
        return {pool_path(len_s, len_t)};
    }

    PathFamily identifier_paths(std::uint64_t n) const override {
        require_length(n);
        return {{VertexId::tree(n, 0)}};
    }

protected:
    /// Length whose forest roots (n, 0) threads to.
    virtual std::uint64_t thread_length(std::uint64_t n) const { return n - 1; }

    std::vector<VertexId> raw_out_neighbors(const VertexId& v) const override {
        auto out = tree::children(v);
        if (v.kind == vertex_kind::tree && v.b == 0) {
            for (const auto& r : tree::forest_roots(thread_length(v.a)))
                out.push_back(r);
        }
        return out;
    }

    bool may_reach(const VertexId& from, const VertexId& to) const override {
        if (from == to)
            return true;
        return !from.is_sink() && to.a <= from.a;
    }
};

/// Shared shape of the two schemes that add digest vertices above the
/// forest: dock(n) is the forest at n and certificates stop just before it.
class ForestDigestSchemeBase : public TreeSchemeBase {
public:
    bool is_linking() const override { return false; }

    VertexSet dock(std::uint64_t n) const override {
        require_length(n);
        const auto roots = tree::forest_roots(n);
        return {roots.begin(), roots.end()};
    }

    VertexId gcommit(std::uint64_t n) const override {
        require_length(n);
        if (tree::is_power_of_two(n))
            return tree::forest_roots(n).front();
        return digest_top(n);
    }

    /// For each dock vertex of len_s, the path from gcommit(len_t) to the
    /// in-neighbor of that dock vertex.
    PathFamily gcertify(std::uint64_t len_s, std::uint64_t len_t) const override {
        require_proper_prefix(len_s, len_t);
        PathFamily out;
        for (const auto& r : tree::forest_roots(len_s)) {
            Path p = path_from_commit(len_t, r);
            p.pop_back();
            out.push_back(std::move(p));
        }
        return out;
    }

    PathFamily identifier_paths(std::uint64_t n) const override {
        require_length(n);
        return {path_from_commit(n, VertexId::tree(n, 0))};
    }

    /// The unique path from gcommit(n) to a tree vertex of ⌊G_tree⌋_n.
    Path path_from_commit(std::uint64_t n, const VertexId& target) const {
        const VertexId root = tree::root_containing(n, target);
        Path path = tree::is_power_of_two(n) ? Path{} : digest_path_to_root(n, root);
        const Path down = tree::descend(root, target);
        path.insert(path.end(), down.begin(), down.end());
        return path;
    }

protected:
    /// Commit vertex for n that is not a power of two.
    virtual VertexId digest_top(std::uint64_t n) const = 0;

    /// Digest vertices from digest_top(n) down to (excluding) forest root r.
    virtual Path digest_path_to_root(std::uint64_t n, const VertexId& root) const = 0;

    bool may_reach(const VertexId& from, const VertexId& to) const override {
        if (from == to)
            return true;
        if (from.is_sink())
            return false;
        if (from.kind == vertex_kind::tree) {
            if (to.kind == vertex_kind::sink)
                return tree::covers(from, to.a);
            return to.kind == vertex_kind::tree && tree::subtree_contains(from, to);
        }
        return to.a <= from.a;
    }
};

/// G_tree plus d_n → roots of ⌊G_tree⌋_n for every n that is not a power of two.
class HypercoreScheme final : public ForestDigestSchemeBase {
public:
    scheme_id id() const override { return scheme_id::hypercore; }

protected:
    bool contains_extra(const VertexId& v) const override {
        return v.kind == vertex_kind::hyper_digest && v.b == 0 && v.a >= 3 && !tree::is_power_of_two(v.a);
    }

    std::vector<VertexId> raw_out_neighbors(const VertexId& v) const override {
        if (v.kind == vertex_kind::hyper_digest)
            return tree::forest_roots(v.a);
        return tree::children(v);
    }

    VertexId digest_top(std::uint64_t n) const override { return VertexId::hyper_digest(n); }

    Path digest_path_to_root(std::uint64_t n, const VertexId&) const override {
        return {VertexId::hyper_digest(n)};
    }
};

/// G_tree plus, for each n with r = popcount(n) >= 2, merge vertices
/// c(n,1..r-1): c(n,1) joins the two smallest trees, c(n,j+1) joins c(n,j)
/// with the next smallest tree.
class TransparencyLogScheme final : public ForestDigestSchemeBase {
public:
    scheme_id id() const override { return scheme_id::transparency_log; }

protected:
    bool contains_extra(const VertexId& v) const override {
        return v.kind == vertex_kind::ct_internal && v.a >= 3 && v.b >= 1 && v.b < popcount(v.a);
    }

    std::vector<VertexId> raw_out_neighbors(const VertexId& v) const override {
        if (v.kind != vertex_kind::ct_internal)
            return tree::children(v);
        const auto roots = tree::forest_roots(v.a);  // largest first
        const std::size_t r = roots.size();
        if (v.b == 1)
            return {roots[r - 2], roots[r - 1]};
        return {VertexId::ct_internal(v.a, v.b - 1), roots[r - 1 - v.b]};
    }

    VertexId digest_top(std::uint64_t n) const override { return VertexId::ct_internal(n, popcount(n) - 1); }

    Path digest_path_to_root(std::uint64_t n, const VertexId& root) const override {
        const auto roots = tree::forest_roots(n);
        const std::size_t r = roots.size();
        const std::size_t i = static_cast<std::size_t>(std::find(roots.begin(), roots.end(), root) - roots.begin());
        // roots[i] (0-based) hangs off c(n, r-1-i), the smallest off c(n, 1)
        const std::uint64_t stop = i + 1 == r ? 1 : r - 1 - i;
        Path path;
        for (std::uint64_t j = r - 1; j >= stop; --j)
            path.push_back(VertexId::ct_internal(n, j));
        return path;
    }
};

} // namespace pfxauth
