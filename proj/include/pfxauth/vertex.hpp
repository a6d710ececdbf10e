#pragma once

#include <pfxauth/error.hpp>

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace pfxauth {

/// Vertex kinds. The numeric tag is the first octet of the canonical
/// encoding and therefore the most significant ordering key.
enum class vertex_kind : std::uint8_t {
    sink = 0,         // sequence position n
    chain = 1,        // p_n of the chain-based schemes
    tree = 2,         // (n, k) of the infinite Merkle tree
    hyper_digest = 3, // d_n of hypercore
    ct_internal = 4,  // j-th merge vertex created for length n
};

/// Scheme-scoped vertex identity. Ordering is lexicographic on the
/// canonical encoding (kind, a, b), which equals member-wise comparison.
struct VertexId {
    vertex_kind kind = vertex_kind::sink;
    std::uint64_t a = 0;
    std::uint64_t b = 0;

    static constexpr VertexId sink(std::uint64_t n) { return {vertex_kind::sink, n, 0}; }
    static constexpr VertexId chain(std::uint64_t n) { return {vertex_kind::chain, n, 0}; }
    static constexpr VertexId tree(std::uint64_t n, std::uint64_t k) { return {vertex_kind::tree, n, k}; }
    static constexpr VertexId hyper_digest(std::uint64_t n) { return {vertex_kind::hyper_digest, n, 0}; }
    static constexpr VertexId ct_internal(std::uint64_t n, std::uint64_t j) {
        return {vertex_kind::ct_internal, n, j};
    }

    constexpr bool is_sink() const noexcept { return kind == vertex_kind::sink; }

    friend constexpr auto operator<=>(const VertexId&, const VertexId&) = default;

    static constexpr std::size_t encoded_size = 17;

    std::array<std::uint8_t, encoded_size> encode() const noexcept {
        std::array<std::uint8_t, encoded_size> out{};
        out[0] = static_cast<std::uint8_t>(kind);
        for (int i = 0; i < 8; ++i) {
            out[1 + i] = static_cast<std::uint8_t>(a >> (56 - 8 * i));
            out[9 + i] = static_cast<std::uint8_t>(b >> (56 - 8 * i));
        }
        return out;
    }

    static VertexId decode(std::span<const std::uint8_t> in) {
        if (in.size() < encoded_size || in[0] > static_cast<std::uint8_t>(vertex_kind::ct_internal))
            throw error(errc::decode_error, "bad vertex encoding");
        VertexId v{static_cast<vertex_kind>(in[0]), 0, 0};
        for (int i = 0; i < 8; ++i) {
            v.a = (v.a << 8) | in[1 + i];
            v.b = (v.b << 8) | in[9 + i];
        }
        return v;
    }

    /// Rendering used in DOT output and diagnostics: 3, p3, (4,2), d6, c6.1
    std::string name() const {
        switch (kind) {
        case vertex_kind::sink: return std::to_string(a);
        case vertex_kind::chain: return "p" + std::to_string(a);
        case vertex_kind::tree: return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
        case vertex_kind::hyper_digest: return "d" + std::to_string(a);
        case vertex_kind::ct_internal: return "c" + std::to_string(a) + "." + std::to_string(b);
        }
        return "?";
    }
};

struct VertexIdHash {
    std::size_t operator()(const VertexId& v) const noexcept {
        std::uint64_t h = static_cast<std::uint64_t>(v.kind) * 0x9e3779b97f4a7c15ULL;
        h ^= v.a + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= v.b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

using VertexSet = std::set<VertexId>;
using Path = std::vector<VertexId>;
using PathFamily = std::vector<Path>;

/// seq(U): the vertex set in canonical ascending order.
inline std::vector<VertexId> canonical_sequence(const VertexSet& set) {
    return {set.begin(), set.end()};
}

inline std::vector<VertexId> canonical_sequence(std::vector<VertexId> vertices) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    return vertices;
}

inline VertexSet path_vertices(const PathFamily& family) {
    VertexSet out;
    for (const auto& path : family)
        out.insert(path.begin(), path.end());
    return out;
}

} // namespace pfxauth
