#pragma once

#include <pfxauth/explicit_dag.hpp>
#include <pfxauth/hash.hpp>

#include <openssl/evp.h>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace testing_support {

using pfxauth::bytes;

/// Plain one-shot digest through the EVP interface, independent of Hasher.
inline bytes reference_digest(const char* algorithm, const bytes& input) {
    bytes out(EVP_MAX_MD_SIZE);
    unsigned int size = 0;
    EVP_MD* md = EVP_MD_fetch(nullptr, algorithm, nullptr);
    EVP_Digest(input.data(), input.size(), out.data(), &size, md, nullptr);
    EVP_MD_free(md);
    out.resize(size);
    return out;
}

inline bytes concat(std::uint8_t tag, const std::vector<bytes>& parts) {
    bytes out{tag};
    for (const auto& p : parts)
        out.insert(out.end(), p.begin(), p.end());
    return out;
}

inline bytes to_bytes(const std::string& s) { return bytes(s.begin(), s.end()); }

inline bytes truncated(bytes b, std::size_t k) {
    b.resize(k);
    return b;
}

inline std::vector<std::string> random_items(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> len(0, 24), octet(0, 255);
    std::vector<std::string> items;
    for (std::size_t i = 0; i < n; ++i) {
        std::string s(static_cast<std::size_t>(len(rng)), '\0');
        for (auto& c : s)
            c = static_cast<char>(octet(rng));
        items.push_back(s);
    }
    return items;
}

/// Random DAG on chain-kind ids 1..size, edges only downwards; vertices that
/// end up without out-edges act as sinks.
inline pfxauth::ExplicitDag random_dag(std::mt19937_64& rng, std::uint64_t size, double density) {
    pfxauth::ExplicitDag dag;
    std::bernoulli_distribution edge(density);
    for (std::uint64_t i = 1; i <= size; ++i) {
        dag.add_vertex(pfxauth::VertexId::chain(i));
        for (std::uint64_t j = 1; j < i; ++j)
            if (edge(rng))
                dag.add_edge(pfxauth::VertexId::chain(i), pfxauth::VertexId::chain(j));
    }
    return dag;
}

} // namespace testing_support
