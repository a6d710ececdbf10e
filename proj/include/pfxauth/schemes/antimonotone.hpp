#pragma once

#include <pfxauth/explicit_dag.hpp>
#include <pfxauth/schemes/chain.hpp>

#include <cstdint>
#include <algorithm>
#include <iterator>
#include <map>
#include <mutex>
#include <tuple>
#include <string>
#include <vector>

namespace pfxauth {

namespace antimonotone {

/// 2^k - 1
constexpr std::uint64_t binary_vertebra_index(unsigned k) noexcept { return (std::uint64_t{1} << k) - 1; }

/// (3^k - 1) / 2
constexpr std::uint64_t ternary_vertebra_index(unsigned k) noexcept { return (pow3(k) - 1) / 2; }

/// g(n) = k for n = 2^k - 1, else g(n - (2^{k-1} - 1)) for 2^{k-1} - 1 < n < 2^k - 1.
constexpr unsigned g(std::uint64_t n) noexcept {
    while (true) {
        unsigned k = 1;
        while (binary_vertebra_index(k) < n)
            ++k;
        if (binary_vertebra_index(k) == n)
            return k;
        n -= binary_vertebra_index(k - 1);
    }
}

/// h(n) = k for n = (3^k - 1)/2, else h(n - (3^{k-1} - 1)/2) in between.
constexpr unsigned h(std::uint64_t n) noexcept {
    while (true) {
        unsigned k = 1;
        while (ternary_vertebra_index(k) < n)
            ++k;
        if (ternary_vertebra_index(k) == n)
            return k;
        n -= ternary_vertebra_index(k - 1);
    }
}

/// The simple scheme's jump target, evaluated literally; results below 1
/// are reported as 0.
constexpr std::uint64_t f2(std::uint64_t n) noexcept {
    unsigned k = 1;
    while (binary_vertebra_index(k) < n)
        ++k;
    std::uint64_t step = binary_vertebra_index(k) == n ? (std::uint64_t{1} << (k - 1)) + 1
                                                        : std::uint64_t{1} << g(n);
    return step >= n ? 0 : n - step;
}

/// The optimal scheme's jump target, evaluated literally; clamped like f2.
constexpr std::uint64_t f3(std::uint64_t n) noexcept {
    unsigned k = 1;
    while (ternary_vertebra_index(k) < n)
        ++k;
    std::uint64_t step = ternary_vertebra_index(k) == n ? pow3(k - 1) + 1 : ternary_vertebra_index(h(n)) + 1;
    return step >= n ? 0 : n - step;
}

enum class variant : std::uint8_t { simple, optimal };

constexpr unsigned generation(variant var, std::uint64_t n) noexcept {
    return var == variant::simple ? floor_log2(n) : floor_log3(2 * n);
}

constexpr std::uint64_t vertebra(variant var, unsigned t) noexcept {
    return var == variant::simple ? binary_vertebra_index(t + 1) : ternary_vertebra_index(t + 1);
}

/// Order of p_m: the generation of the vertebra it is a (transitive) copy of.
constexpr unsigned order(variant var, std::uint64_t m) noexcept {
    return (var == variant::simple ? g(m) : h(m)) - 1;
}

constexpr std::uint64_t jump(variant var, std::uint64_t n) noexcept {
    return var == variant::simple ? f2(n) : f3(n);
}

/// Number of chain vertices in the first t generations.
constexpr std::uint64_t chain_count(variant var, unsigned t) noexcept { return vertebra(var, t); }

/// Where the chain edges come from: the jump formula, or the copying
/// recursion the formula is meant to describe.
enum class construction : std::uint8_t { formula, copies };

/// Jump targets of the copy construction for the first t generations,
/// indexed by position (0 = no jump besides n-1). Same recursion as
/// recursive_construction, kept on a flat table.
inline std::vector<std::uint64_t> copy_jumps(variant var, unsigned t) {
    std::vector<std::uint64_t> jumps{0, 0};
    std::vector<bool> spine{false, true};
    std::uint64_t size = 1;
    const unsigned copies = var == variant::simple ? 2 : 3;
    for (unsigned gen = 0; gen < t; ++gen) {
        const std::uint64_t top = copies * size + 1;
        jumps.resize(top + 1, 0);
        spine.resize(top + 1, false);
        for (unsigned c = 1; c < copies; ++c) {
            const std::uint64_t offset = c * size;
            for (std::uint64_t v = 1; v <= size; ++v) {
                std::uint64_t j = spine[v] ? offset : (jumps[v] ? jumps[v] + offset : 0);
                jumps[v + offset] = j == v + offset - 1 ? 0 : j;
            }
        }
        jumps[top] = size == top - 1 ? 0 : size;
        spine[top] = true;
        size = top;
    }
    return jumps;
}

} // namespace antimonotone

/// Linear scheme plus one jump edge p_n → p_{f(n)} per vertex, with f the
/// simple (f2) or optimal (f3) antimonotone function.
class AntimonotoneScheme final : public ChainSchemeBase {
public:
    explicit AntimonotoneScheme(antimonotone::variant var,
                                antimonotone::construction how = antimonotone::construction::formula)
        : var_(var), how_(how) {}

    scheme_id id() const override {
        return var_ == antimonotone::variant::simple ? scheme_id::antimonotone_simple
                                                     : scheme_id::antimonotone_optimal;
    }

    antimonotone::variant which() const noexcept { return var_; }
    antimonotone::construction how() const noexcept { return how_; }

    std::vector<std::uint64_t> chain_targets(std::uint64_t n) const override {
        std::vector<std::uint64_t> out;
        if (n >= 2)
            out.push_back(n - 1);
        if (n >= 2) {
            const std::uint64_t f = cached_jump(n);
            if (f >= 1 && f != n - 1)
                out.push_back(f);
        }
        return out;
    }

    unsigned generation(std::uint64_t n) const { return antimonotone::generation(var_, n); }
    std::uint64_t vertebra(unsigned t) const { return antimonotone::vertebra(var_, t); }

    /// Paths vertebra(t) → p_n, p_n → vertebra(t-1), vertebra(t-1) → p_1
    /// for n of generation t.
    VertexSet certificate_pool(std::uint64_t n) const override {
        require_length(n);
        const unsigned t = generation(n);
        if (t == 0)
            return {VertexId::chain(1)};
        VertexSet out = chain_path_set(vertebra(t), n);
        out.merge(chain_path_set(n, vertebra(t - 1)));
        out.merge(chain_path_set(vertebra(t - 1), 1));
        return out;
    }

    /// The reduced digest pool: for the simple scheme the path
    /// from p_n to the previous vertebra, for the optimal scheme the largest
    /// p_m (m <= n) of each order up to the generation of n. With the jump
    /// functions taken literally this does not always support appending;
    /// see `digest_pool` for the pool that is actually used.
    std::vector<VertexId> reduced_digest_pool(std::uint64_t n) const {
        require_length(n);
        const unsigned t = generation(n);
        if (var_ == antimonotone::variant::simple) {
            if (t == 0)
                return {VertexId::chain(1)};
            return canonical_sequence(chain_path_set(n, vertebra(t - 1)));
        }
        std::map<unsigned, std::uint64_t> best;
        for (std::uint64_t m = 1; m <= n; ++m)
            best[antimonotone::order(var_, m)] = m;
        std::vector<VertexId> out;
        for (const auto& [ord, m] : best)
            if (ord <= t)
                out.push_back(VertexId::chain(m));
        if (std::find(out.begin(), out.end(), VertexId::chain(n)) == out.end())
            out.push_back(VertexId::chain(n));
        return canonical_sequence(std::move(out));
    }

    /// p_n plus every p_m (m < n) that some later vertex jumps to: exactly
    /// the vertices of ⌊G⌋_n whose labels feed a future vertex.
    std::vector<VertexId> digest_pool(std::uint64_t n) const override {
        require_length(n);
        std::vector<VertexId> out{VertexId::chain(n)};
        for (std::uint64_t later = n + 1;; ++later) {
            const unsigned t = generation(later);
            // Every jump out of generation t lands at or above vertebra(t-1) - 1.
            if (t >= 1 && vertebra(t - 1) >= n + 2)
                break;
            const std::uint64_t f = cached_jump(later);
            if (f >= 1 && f < n)
                out.push_back(VertexId::chain(f));
        }
        return canonical_sequence(std::move(out));
    }

private:
    // f is evaluated by repeated descent; the pool scan asks for it often.
    std::uint64_t cached_jump(std::uint64_t n) const {
        std::lock_guard lock(jump_mutex_);
        if (how_ == antimonotone::construction::copies) {
            unsigned t = 0;
            while (vertebra(t) < n)
                ++t;
            if (jump_cache_.size() <= n)
                jump_cache_ = antimonotone::copy_jumps(var_, t);
        }
        while (jump_cache_.size() <= n)
            jump_cache_.push_back(antimonotone::jump(var_, jump_cache_.size()));
        return jump_cache_[n];
    }

    antimonotone::variant var_;
    antimonotone::construction how_;
    mutable std::mutex jump_mutex_;
    mutable std::vector<std::uint64_t> jump_cache_{0};
};

namespace antimonotone {

/// The graph of the first t generations built by repeated copying rather
/// than from f: each step appends copies of the previous graph whose spine
/// (copied vertebrae) out-edges are redirected, then a new vertebra.
///
/// simple: G^{t+1} = G^t, copy of G^t with spine → vertebra of the
///         original, new vertebra → (last copy vertex, original vertebra).
/// optimal: three copies; the spine of copy j points to the vertebra of
///         copy j-1, the new vertebra to the last vertex and the original
///         vertebra.
inline ExplicitDag recursive_construction(variant var, unsigned t) {
    // chain edges only, keyed by position; sinks are attached at the end
    std::map<std::uint64_t, std::vector<std::uint64_t>> edges{{1, {}}};
    std::vector<std::uint64_t> spine{1};
    std::uint64_t size = 1;
    const unsigned copies = var == variant::simple ? 2 : 3;
    for (unsigned gen = 0; gen < t; ++gen) {
        std::map<std::uint64_t, std::vector<std::uint64_t>> next = edges;
        std::vector<std::uint64_t> next_spine = spine;
        for (unsigned c = 1; c < copies; ++c) {
            const std::uint64_t offset = c * size;
            const std::uint64_t anchor = offset;  // vertebra of the previous copy
            for (const auto& [v, outs] : edges) {
                std::vector<std::uint64_t> moved;
                const bool on_spine = std::find(spine.begin(), spine.end(), v) != spine.end();
                if (on_spine) {
                    moved.push_back(anchor);
                    if (v > 1)
                        moved.push_back(v + offset - 1);
                } else {
                    for (auto w : outs)
                        moved.push_back(w + offset);
                }
                next[v + offset] = moved;
            }
        }
        const std::uint64_t top = copies * size + 1;
        next[top] = {top - 1, size};
        next_spine.push_back(top);
        edges = std::move(next);
        spine = std::move(next_spine);
        size = top;
    }
    ExplicitDag dag;
    for (const auto& [v, outs] : edges) {
        dag.add_edge(VertexId::chain(v), VertexId::sink(v));
        for (auto w : outs)
            if (w != v && w >= 1)
                dag.add_edge(VertexId::chain(v), VertexId::chain(w));
    }
    return dag;
}

/// Formula-built graph restricted to the first t generations.
inline ExplicitDag formula_construction(const AntimonotoneScheme& scheme, unsigned t) {
    ExplicitDag dag;
    const std::uint64_t count = scheme.vertebra(t);
    for (std::uint64_t n = 1; n <= count; ++n)
        for (const auto& w : scheme.out_neighbors(VertexId::chain(n)))
            dag.add_edge(VertexId::chain(n), w);
    return dag;
}

struct EdgeDiscrepancy {
    VertexId from;
    VertexId to;
    bool only_in_formula;  // otherwise only in the recursive construction
};

/// Symmetric difference of the edge sets, formula vs. copy construction.
inline std::vector<EdgeDiscrepancy> compare_constructions(const AntimonotoneScheme& scheme, unsigned t) {
    const auto formula = formula_construction(scheme, t).edges();
    const auto recursive = recursive_construction(scheme.which(), t).edges();
    std::vector<EdgeDiscrepancy> out;
    std::vector<std::pair<VertexId, VertexId>> diff;
    std::set_difference(formula.begin(), formula.end(), recursive.begin(), recursive.end(),
                        std::back_inserter(diff));
    for (const auto& [a, b] : diff)
        out.push_back({a, b, true});
    diff.clear();
    std::set_difference(recursive.begin(), recursive.end(), formula.begin(), formula.end(),
                        std::back_inserter(diff));
    for (const auto& [a, b] : diff)
        out.push_back({a, b, false});
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        return std::tie(x.from, x.to, x.only_in_formula) < std::tie(y.from, y.to, y.only_in_formula);
    });
    return out;
}

} // namespace antimonotone

} // namespace pfxauth
