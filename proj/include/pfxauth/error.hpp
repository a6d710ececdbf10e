#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pfxauth {

enum class errc {
    no_such_vertex,
    underdetermined_vertex,
    malformed_proof,
    length_zero,
    not_proper_prefix,
    out_of_range,
    malformed_certificate,
    context_mismatch,
    corrupt_commit_state,
    insufficient_pool,
    bad_hash_config,
    decode_error,
    cyclic_graph,
};

constexpr std::string_view to_string(errc code) noexcept {
    switch (code) {
    case errc::no_such_vertex: return "no such vertex";
    case errc::underdetermined_vertex: return "underdetermined vertex";
    case errc::malformed_proof: return "malformed proof";
    case errc::length_zero: return "lengths start at 1";
    case errc::not_proper_prefix: return "not a proper prefix";
    case errc::out_of_range: return "out of range";
    case errc::malformed_certificate: return "malformed certificate";
    case errc::context_mismatch: return "context mismatch";
    case errc::corrupt_commit_state: return "corrupt commit state";
    case errc::insufficient_pool: return "insufficient pool";
    case errc::bad_hash_config: return "bad hash config";
    case errc::decode_error: return "decode error";
    case errc::cyclic_graph: return "cycle detected";
    }
    return "unknown error";
}

/// Every failure raised by the library. `code()` separates malformed input
/// from refutation, which is reported as `false` rather than thrown.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& detail)
        : std::runtime_error(detail.empty() ? std::string(to_string(code))
                                            : std::string(to_string(code)) + ": " + detail),
          code_(code) {}

    explicit error(errc code) : error(code, std::string{}) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

} // namespace pfxauth
