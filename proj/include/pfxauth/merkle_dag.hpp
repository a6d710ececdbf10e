#pragma once

#include <pfxauth/error.hpp>
#include <pfxauth/hash.hpp>
#include <pfxauth/vertex.hpp>

#include <concepts>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

namespace pfxauth {

/// Anything that exposes a (possibly infinite) acyclic graph by rule.
/// `out_neighbors` must return each neighbor once, in canonical order.
template <typename G>
concept DagView = requires(const G& g, const VertexId& v) {
    { g.out_neighbors(v) } -> std::convertible_to<std::vector<VertexId>>;
    { g.contains(v) } -> std::convertible_to<bool>;
};

/// A U-labeling: at most one label per vertex, iterated in canonical order.
using Labeling = std::map<VertexId, Label>;

/// Open out-neighborhood: vertices outside U with an in-edge from U.
template <DagView G>
VertexSet out_neighborhood(const G& graph, const VertexSet& set) {
    VertexSet out;
    for (const auto& u : set)
        for (const auto& w : graph.out_neighbors(u))
            if (!set.contains(w))
                out.insert(w);
    return out;
}

/// U together with its open out-neighborhood.
template <DagView G>
VertexSet closed_out_neighborhood(const G& graph, const VertexSet& set) {
    VertexSet out = out_neighborhood(graph, set);
    out.insert(set.begin(), set.end());
    return out;
}

/// The smallest subset of the closed out-neighborhood of U that determines
/// all of it: the open out-neighborhood plus the sinks inside U.
template <DagView G>
VertexSet frontier(const G& graph, const VertexSet& set) {
    VertexSet out = out_neighborhood(graph, set);
    for (const auto& u : set)
        if (graph.out_neighbors(u).empty())
            out.insert(u);
    return out;
}

namespace detail {

struct nothing_given {
    std::optional<Label> operator()(const VertexId&) const { return std::nullopt; }
};

struct underdetermined {
    Path witness;  // a maximal path that avoids the given labels
};

/// Depth-first label evaluation with memoization and an explicit stack.
/// `given(v)` returns a label for v when v's label is supplied rather than
/// computed; `leaf(v)` labels sinks that are not supplied, and a sink it
/// cannot label leaves the root underdetermined.
template <DagView G, typename Given, typename Leaf>
class LabelEvaluator {
public:
    LabelEvaluator(const G& graph, const Hasher& hasher, Given given, Leaf leaf)
        : graph_(graph), hasher_(hasher), given_(std::move(given)), leaf_(std::move(leaf)) {}

    /// Returns the label or the witness path of the first unsupplied sink.
    std::variant<Label, underdetermined> evaluate(const VertexId& root) {
        if (auto it = memo_.find(root); it != memo_.end())
            return it->second;

        struct Frame {
            VertexId v;
            std::vector<VertexId> outs;
            std::size_t next = 0;
        };
        std::vector<Frame> stack;
        std::unordered_set<VertexId, VertexIdHash> on_stack;

        auto enter = [&](const VertexId& v) -> std::optional<underdetermined> {
            if (std::optional<Label> l = given_(v)) {
                memo_.emplace(v, *l);
                return std::nullopt;
            }
            auto outs = graph_.out_neighbors(v);
            if (outs.empty()) {
                if (std::optional<Label> l = leaf_(v)) {
                    memo_.emplace(v, *l);
                    return std::nullopt;
                }
                underdetermined u;
                for (const auto& f : stack)
                    u.witness.push_back(f.v);
                u.witness.push_back(v);
                return u;
            }
            if (!on_stack.insert(v).second)
                throw error(errc::cyclic_graph, "at " + v.name());
            stack.push_back(Frame{v, std::move(outs), 0});
            return std::nullopt;
        };

        if (auto u = enter(root))
            return *u;
        while (!stack.empty()) {
            Frame& top = stack.back();
            bool descended = false;
            while (top.next < top.outs.size()) {
                const VertexId child = top.outs[top.next];
                if (memo_.contains(child)) {
                    ++top.next;
                    continue;
                }
                if (auto u = enter(child))
                    return *u;
                descended = true;
                break;
            }
            if (descended)
                continue;
            std::vector<Label> inputs;
            inputs.reserve(top.outs.size());
            for (const auto& w : top.outs)
                inputs.push_back(memo_.at(w));
            memo_.emplace(top.v, hasher_.inner(inputs));
            on_stack.erase(top.v);
            stack.pop_back();
        }
        return memo_.at(root);
    }

    const std::unordered_map<VertexId, Label, VertexIdHash>& memo() const { return memo_; }

private:
    const G& graph_;
    Hasher hasher_;
    Given given_;
    Leaf leaf_;
    std::unordered_map<VertexId, Label, VertexIdHash> memo_;
};

inline std::string describe(const Path& path) {
    std::string out;
    for (const auto& v : path) {
        if (!out.empty())
            out += " -> ";
        out += v.name();
    }
    return out;
}

} // namespace detail

/// Labels of a Merkle DAG whose sinks are labeled by `leaves`. Computed
/// labels are cached, so repeated queries on the same labeling are cheap.
template <DagView G, typename Leaves>
class MerkleLabeler {
    using nothing_given = detail::nothing_given;

public:
    MerkleLabeler(const G& graph, const Hasher& hasher, Leaves leaves)
        : graph_(graph), eval_(graph, hasher, nothing_given{}, Leaf{std::move(leaves)}) {}

    Label label(const VertexId& v) {
        if (!graph_.contains(v))
            throw error(errc::no_such_vertex, v.name());
        auto result = eval_.evaluate(v);
        if (auto* u = std::get_if<detail::underdetermined>(&result))
            throw error(errc::underdetermined_vertex, "sink without label: " + detail::describe(u->witness));
        return std::get<Label>(result);
    }

private:
    struct Leaf {
        Leaves leaves;
        std::optional<Label> operator()(const VertexId& v) const { return leaves(v); }
    };

    const G& graph_;
    detail::LabelEvaluator<G, nothing_given, Leaf> eval_;
};

/// lbl(v): the sink label for sinks, otherwise the inner hash of the
/// out-neighbors' labels in canonical order.
template <DagView G, typename Leaves>
Label label_of(const G& graph, const VertexId& v, Leaves leaves, const Hasher& hasher) {
    MerkleLabeler<G, Leaves> labeler(graph, hasher, std::move(leaves));
    return labeler.label(v);
}

/// Whether every maximal path from v meets `set`.
template <DagView G>
bool determines(const G& graph, const VertexSet& set, const VertexId& v) {
    std::unordered_map<VertexId, bool, VertexIdHash> memo;
    struct Frame {
        VertexId v;
        std::vector<VertexId> outs;
        std::size_t next = 0;
    };
    std::vector<Frame> stack;
    std::unordered_set<VertexId, VertexIdHash> on_stack;

    // Returns a decided value, or nullopt when a frame was pushed.
    auto enter = [&](const VertexId& x) -> std::optional<bool> {
        if (auto it = memo.find(x); it != memo.end())
            return it->second;
        if (set.contains(x))
            return memo[x] = true;
        auto outs = graph.out_neighbors(x);
        if (outs.empty())
            return memo[x] = false;
        if (!on_stack.insert(x).second)
            throw error(errc::cyclic_graph, "at " + x.name());
        stack.push_back(Frame{x, std::move(outs), 0});
        return std::nullopt;
    };

    if (auto d = enter(v))
        return *d;
    while (!stack.empty()) {
        Frame& top = stack.back();
        std::optional<bool> verdict;
        bool descended = false;
        while (top.next < top.outs.size()) {
            const VertexId child = top.outs[top.next];
            auto it = memo.find(child);
            if (it != memo.end()) {
                if (!it->second) {
                    verdict = false;
                    break;
                }
                ++top.next;
                continue;
            }
            auto d = enter(child);
            if (!d) {
                descended = true;
                break;
            }
            if (!*d) {
                verdict = false;
                break;
            }
            ++top.next;
        }
        if (descended)
            continue;
        memo[top.v] = verdict.value_or(true);
        on_stack.erase(top.v);
        stack.pop_back();
    }
    return memo.at(v);
}

template <DagView G>
bool determines_all(const G& graph, const VertexSet& set, const VertexSet& targets) {
    for (const auto& t : targets)
        if (!determines(graph, set, t))
            return false;
    return true;
}

/// The expected label of v computed from the labeling p alone. Entries of p
/// that the computation does not reach are ignored.
template <DagView G>
Label label_from(const G& graph, const VertexId& v, const Labeling& p, const Hasher& hasher) {
    auto given = [&p](const VertexId& x) -> std::optional<Label> {
        if (auto it = p.find(x); it != p.end())
            return it->second;
        return std::nullopt;
    };
    detail::LabelEvaluator<G, decltype(given), detail::nothing_given> eval(graph, hasher, given, {});
    auto result = eval.evaluate(v);
    if (auto* u = std::get_if<detail::underdetermined>(&result))
        throw error(errc::underdetermined_vertex, "maximal path avoids the labeling: " + detail::describe(u->witness));
    return std::get<Label>(result);
}

/// Computes several labels from one labeling, sharing intermediate work.
template <DagView G>
class PartialLabeler {
public:
    PartialLabeler(const G& graph, const Labeling& p, const Hasher& hasher)
        : eval_(graph, hasher, Given{&p}, {}) {}

    Label label(const VertexId& v) {
        auto result = eval_.evaluate(v);
        if (auto* u = std::get_if<detail::underdetermined>(&result))
            throw error(errc::underdetermined_vertex,
                        "maximal path avoids the labeling: " + detail::describe(u->witness));
        return std::get<Label>(result);
    }

    std::optional<Label> try_label(const VertexId& v) {
        auto result = eval_.evaluate(v);
        if (std::holds_alternative<detail::underdetermined>(result))
            return std::nullopt;
        return std::get<Label>(result);
    }

private:
    struct Given {
        const Labeling* p;
        std::optional<Label> operator()(const VertexId& x) const {
            if (auto it = p->find(x); it != p->end())
                return it->second;
            return std::nullopt;
        }
    };
    detail::LabelEvaluator<G, Given, detail::nothing_given> eval_;
};

/// A claimed root label plus the labels of the out-neighborhood of a path
/// family starting at the root.
struct SubgraphProof {
    VertexId root;
    Label claimed_root_label;
    PathFamily paths;
    Labeling boundary;
};

/// Checks the structural invariants of a proof; throws malformed_proof.
template <DagView G>
void check_proof_structure(const G& graph, const SubgraphProof& proof) {
    if (!graph.contains(proof.root))
        throw error(errc::malformed_proof, "root " + proof.root.name() + " is not a vertex");
    for (const auto& path : proof.paths) {
        if (path.empty() || path.front() != proof.root)
            throw error(errc::malformed_proof, "path does not start at the root");
        for (std::size_t i = 0; i < path.size(); ++i) {
            const auto outs = graph.out_neighbors(path[i]);
            if (outs.empty())
                throw error(errc::malformed_proof, "path passes through sink " + path[i].name());
            if (i + 1 < path.size() && !std::binary_search(outs.begin(), outs.end(), path[i + 1]))
                throw error(errc::malformed_proof,
                            "(" + path[i].name() + ", " + path[i + 1].name() + ") is not an edge");
        }
    }
    const VertexSet on_paths = proof.paths.empty() ? VertexSet{proof.root} : path_vertices(proof.paths);
    const VertexSet expected = out_neighborhood(graph, on_paths);
    if (expected.size() != proof.boundary.size())
        throw error(errc::malformed_proof, "boundary size mismatch");
    auto it = proof.boundary.begin();
    for (const auto& v : expected) {
        if (it->first != v)
            throw error(errc::malformed_proof, "boundary domain mismatch at " + v.name());
        ++it;
    }
}

/// Builds a subgraph proof for `root` along `paths` from a full labeler.
template <DagView G, typename LabelSource>
SubgraphProof make_subgraph_proof(const G& graph, const VertexId& root, PathFamily paths, LabelSource&& labels) {
    SubgraphProof proof{root, labels(root), std::move(paths), {}};
    const VertexSet on_paths = proof.paths.empty() ? VertexSet{root} : path_vertices(proof.paths);
    for (const auto& v : out_neighborhood(graph, on_paths))
        proof.boundary.emplace(v, labels(v));
    return proof;
}

/// True iff the boundary reproduces the claimed root label ("verified");
/// false means "refuted". Structural defects throw instead.
template <DagView G>
bool verify_subgraph_proof(const G& graph, const SubgraphProof& proof, const Hasher& hasher) {
    check_proof_structure(graph, proof);
    for (const auto& [v, l] : proof.boundary)
        if (l.size() != hasher.width())
            throw error(errc::malformed_proof, "label width mismatch at " + v.name());
    return label_from(graph, proof.root, proof.boundary, hasher) == proof.claimed_root_label;
}

} // namespace pfxauth
