#pragma once

#include <pfxauth/scheme.hpp>
#include <pfxauth/schemes/antimonotone.hpp>
#include <pfxauth/schemes/chain.hpp>
#include <pfxauth/schemes/tree.hpp>

#include <memory>
#include <sstream>
#include <string>

namespace pfxauth {

/// `how` only matters for the antimonotone schemes.
inline std::shared_ptr<const SchemeGraph> make_scheme(
    scheme_id id, antimonotone::construction how = antimonotone::construction::formula) {
    switch (id) {
    case scheme_id::linear: return std::make_shared<LinearScheme>();
    case scheme_id::full: return std::make_shared<FullScheme>();
    case scheme_id::skip_list: return std::make_shared<SkipListScheme>();
    case scheme_id::antimonotone_simple:
        return std::make_shared<AntimonotoneScheme>(antimonotone::variant::simple, how);
    case scheme_id::antimonotone_optimal:
        return std::make_shared<AntimonotoneScheme>(antimonotone::variant::optimal, how);
    case scheme_id::threaded_auth_tree: return std::make_shared<ThreadedAuthTreeScheme>();
    case scheme_id::hypercore: return std::make_shared<HypercoreScheme>();
    case scheme_id::transparency_log: return std::make_shared<TransparencyLogScheme>();
    }
    throw error(errc::context_mismatch, "unknown scheme id " + std::to_string(static_cast<int>(id)));
}

inline bool is_tree_scheme(scheme_id id) noexcept {
    return id == scheme_id::threaded_auth_tree || id == scheme_id::hypercore || id == scheme_id::transparency_log;
}

/// Graphviz rendering of ⌊G⌋_n. Sinks are boxes, commit vertices filled.
inline std::string export_dot(const SchemeGraph& scheme, std::uint64_t n) {
    const TruncatedGraph graph(scheme, n);
    VertexSet commits;
    for (std::uint64_t i = 1; i <= n; ++i)
        commits.insert(scheme.gcommit(i));

    std::ostringstream out;
    out << "digraph \"" << to_string(scheme.id()) << "_" << n << "\" {\n";
    out << "  rankdir=TB;\n";
    for (const auto& v : graph.vertices()) {
        out << "  \"" << v.name() << "\"";
        if (v.is_sink())
            out << " [shape=box]";
        else if (commits.contains(v))
            out << " [style=filled, fillcolor=lightblue]";
        out << ";\n";
    }
    for (const auto& [from, to] : graph.edges())
        out << "  \"" << from.name() << "\" -> \"" << to.name() << "\";\n";
    out << "}\n";
    return out.str();
}

} // namespace pfxauth
