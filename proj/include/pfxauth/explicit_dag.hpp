#pragma once

#include <pfxauth/error.hpp>
#include <pfxauth/vertex.hpp>

#include <map>
#include <utility>
#include <vector>

namespace pfxauth {

/// A finite DAG stored by adjacency. Used for hand-built graphs and for
/// structural comparisons against rule-defined scheme graphs.
class ExplicitDag {
public:
    void add_vertex(const VertexId& v) { adjacency_.try_emplace(v); }

    void add_edge(const VertexId& from, const VertexId& to) {
        add_vertex(to);
        auto& outs = adjacency_[from];
        auto it = std::lower_bound(outs.begin(), outs.end(), to);
        if (it == outs.end() || *it != to)
            outs.insert(it, to);
    }

    void remove_edge(const VertexId& from, const VertexId& to) {
        auto it = adjacency_.find(from);
        if (it == adjacency_.end())
            return;
        std::erase(it->second, to);
    }

    bool contains(const VertexId& v) const { return adjacency_.contains(v); }

    std::vector<VertexId> out_neighbors(const VertexId& v) const {
        auto it = adjacency_.find(v);
        if (it == adjacency_.end())
            throw error(errc::no_such_vertex, v.name());
        return it->second;
    }

    std::size_t vertex_count() const noexcept { return adjacency_.size(); }

    std::size_t edge_count() const noexcept {
        std::size_t n = 0;
        for (const auto& [v, outs] : adjacency_)
            n += outs.size();
        return n;
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
        return out;
    }

private:
    std::map<VertexId, std::vector<VertexId>> adjacency_;
};

} // namespace pfxauth
