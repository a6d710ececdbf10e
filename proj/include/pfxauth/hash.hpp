#pragma once

#include <pfxauth/error.hpp>

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pfxauth {

using bytes = std::vector<std::uint8_t>;

/// Widest label any supported algorithm produces.
inline constexpr std::size_t max_label_width = 64;

/// A fixed-width hash output. Width is a runtime property so that the same
/// engine serves every configured algorithm; storage is inline.
class Label {
public:
    Label() = default;

    explicit Label(std::span<const std::uint8_t> data) {
        if (data.size() > max_label_width)
            throw error(errc::bad_hash_config, "label wider than " + std::to_string(max_label_width));
        size_ = static_cast<std::uint8_t>(data.size());
        std::copy(data.begin(), data.end(), bytes_.begin());
    }

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    std::span<const std::uint8_t> view() const noexcept { return {bytes_.data(), size_}; }
    std::span<std::uint8_t> mutable_view() noexcept { return {bytes_.data(), size_}; }

    std::uint8_t operator[](std::size_t i) const noexcept { return bytes_[i]; }
    std::uint8_t& operator[](std::size_t i) noexcept { return bytes_[i]; }

    friend bool operator==(const Label& a, const Label& b) noexcept {
        return std::ranges::equal(a.view(), b.view());
    }

    friend std::strong_ordering operator<=>(const Label& a, const Label& b) noexcept {
        return std::lexicographical_compare_three_way(a.view().begin(), a.view().end(),
                                                      b.view().begin(), b.view().end());
    }

    std::string hex() const {
        static constexpr char digits[] = "0123456789abcdef";
        std::string out;
        out.reserve(2 * size_);
        for (auto b : view()) {
            out.push_back(digits[b >> 4]);
            out.push_back(digits[b & 0xf]);
        }
        return out;
    }

private:
    std::array<std::uint8_t, max_label_width> bytes_{};
    std::uint8_t size_ = 0;
};

enum class hash_algorithm : std::uint8_t {
    sha256 = 1,
    sha512 = 2,
    sha3_256 = 3,
};

constexpr std::size_t native_width(hash_algorithm alg) noexcept {
    switch (alg) {
    case hash_algorithm::sha256: return 32;
    case hash_algorithm::sha512: return 64;
    case hash_algorithm::sha3_256: return 32;
    }
    return 0;
}

constexpr std::string_view to_string(hash_algorithm alg) noexcept {
    switch (alg) {
    case hash_algorithm::sha256: return "sha256";
    case hash_algorithm::sha512: return "sha512";
    case hash_algorithm::sha3_256: return "sha3-256";
    }
    return "unknown";
}

struct HashConfig {
    hash_algorithm algorithm = hash_algorithm::sha256;
    std::size_t width = 32;  // k, in octets; outputs are truncated to this
    std::uint8_t sink_tag = 0x00;
    std::uint8_t inner_tag = 0x01;

    static HashConfig sha256() { return {}; }

    static HashConfig for_algorithm(hash_algorithm alg) {
        return {alg, native_width(alg), 0x00, 0x01};
    }

    void validate() const {
        const auto native = native_width(algorithm);
        if (native == 0)
            throw error(errc::bad_hash_config, "unknown algorithm id");
        if (width < 16 || width > native)
            throw error(errc::bad_hash_config, "width must lie in [16, " + std::to_string(native) + "]");
        if (sink_tag == inner_tag)
            throw error(errc::bad_hash_config, "domain tags must differ");
    }

    friend bool operator==(const HashConfig&, const HashConfig&) = default;
};

inline hash_algorithm parse_hash_algorithm(std::string_view name) {
    for (auto alg : {hash_algorithm::sha256, hash_algorithm::sha512, hash_algorithm::sha3_256})
        if (to_string(alg) == name)
            return alg;
    throw error(errc::bad_hash_config, "unknown hash algorithm '" + std::string(name) + "'");
}

/// Work done by a Hasher. `invocations` counts calls of the hash function,
/// `inputs` counts labels absorbed by inner hashes (one per traversed edge).
struct HashCounter {
    std::uint64_t invocations = 0;
    std::uint64_t inputs = 0;
    std::uint64_t octets = 0;
};

namespace detail {

// Explicitly fetched once; the implicit lookup inside every init is costly.
inline const EVP_MD* evp_for(hash_algorithm alg) {
    static EVP_MD* const sha256 = EVP_MD_fetch(nullptr, "SHA256", nullptr);
    static EVP_MD* const sha512 = EVP_MD_fetch(nullptr, "SHA512", nullptr);
    static EVP_MD* const sha3_256 = EVP_MD_fetch(nullptr, "SHA3-256", nullptr);
    switch (alg) {
    case hash_algorithm::sha256: return sha256;
    case hash_algorithm::sha512: return sha512;
    case hash_algorithm::sha3_256: return sha3_256;
    }
    throw error(errc::bad_hash_config, "unknown algorithm id");
}

struct md_ctx_deleter {
    void operator()(EVP_MD_CTX* ctx) const noexcept { EVP_MD_CTX_free(ctx); }
};

inline EVP_MD_CTX* thread_ctx() {
    thread_local std::unique_ptr<EVP_MD_CTX, md_ctx_deleter> ctx{EVP_MD_CTX_new()};
    return ctx.get();
}

} // namespace detail

/// The hash h, with domain separation between sink and inner labels.
/// Copies are cheap; an optional counter records the work done.
class Hasher {
public:
    explicit Hasher(HashConfig config = HashConfig::sha256()) : config_(config), md_(nullptr) {
        config_.validate();
        md_ = detail::evp_for(config_.algorithm);
    }

    const HashConfig& config() const noexcept { return config_; }
    std::size_t width() const noexcept { return config_.width; }

    /// Returns a copy of this hasher that records its work in `counter`.
    Hasher counted(HashCounter& counter) const {
        Hasher copy = *this;
        copy.counter_ = &counter;
        return copy;
    }

    /// H(sink-tag || payload)
    Label sink(std::span<const std::uint8_t> payload) const {
        Session s(*this);
        s.update(&config_.sink_tag, 1);
        s.update(payload.data(), payload.size());
        return s.finish(0);
    }

    Label sink(std::string_view payload) const {
        return sink(std::span(reinterpret_cast<const std::uint8_t*>(payload.data()), payload.size()));
    }

    /// H(inner-tag || children[0] || children[1] || ...)
    template <typename LabelRange>
    Label inner(const LabelRange& children) const {
        Session s(*this);
        s.update(&config_.inner_tag, 1);
        std::uint64_t count = 0;
        for (const Label& child : children) {
            s.update(child.view().data(), child.size());
            ++count;
        }
        return s.finish(count);
    }

private:
    class Session {
    public:
        explicit Session(const Hasher& h) : h_(h), ctx_(detail::thread_ctx()) {
            if (EVP_DigestInit_ex(ctx_, h_.md_, nullptr) != 1)
                throw error(errc::bad_hash_config, "digest init failed");
        }
        void update(const void* data, std::size_t n) {
            if (n == 0)
                return;
            EVP_DigestUpdate(ctx_, data, n);
            octets_ += n;
        }
        Label finish(std::uint64_t inputs) {
            std::array<std::uint8_t, EVP_MAX_MD_SIZE> out{};
            unsigned int len = 0;
            EVP_DigestFinal_ex(ctx_, out.data(), &len);
            if (h_.counter_) {
                ++h_.counter_->invocations;
                h_.counter_->inputs += inputs;
                h_.counter_->octets += octets_;
            }
            return Label(std::span(out.data(), h_.config_.width));
        }

    private:
        const Hasher& h_;
        EVP_MD_CTX* ctx_;
        std::uint64_t octets_ = 0;
    };

    HashConfig config_;
    const EVP_MD* md_;
    HashCounter* counter_ = nullptr;
};

} // namespace pfxauth
