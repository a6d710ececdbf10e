#pragma once

#include <pfxauth/pas.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace pfxauth::wire {

inline constexpr std::uint8_t format_version = 0x01;

class Writer {
public:
    void u8(std::uint8_t v) { out_.push_back(v); }
    void u32(std::uint32_t v) { be(v, 4); }
    void u64(std::uint64_t v) { be(v, 8); }
    void raw(std::span<const std::uint8_t> data) { out_.insert(out_.end(), data.begin(), data.end()); }
    void label(const Label& l) { raw(l.view()); }

    bytes take() && { return std::move(out_); }

private:
    void be(std::uint64_t v, int n) {
        for (int i = n - 1; i >= 0; --i)
            out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    bytes out_;
};

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

    std::uint8_t u8() { return static_cast<std::uint8_t>(be(1)); }
    std::uint32_t u32() { return static_cast<std::uint32_t>(be(4)); }
    std::uint64_t u64() { return be(8); }

    std::span<const std::uint8_t> raw(std::size_t n) {
        need(n);
        auto out = in_.subspan(pos_, n);
        pos_ += n;
        return out;
    }

    Label label(std::size_t k) { return Label(raw(k)); }

    std::size_t remaining() const noexcept { return in_.size() - pos_; }

    void finish() const {
        if (remaining() != 0)
            throw error(errc::decode_error, std::to_string(remaining()) + " trailing octets");
    }

private:
    void need(std::size_t n) const {
        if (remaining() < n)
            throw error(errc::decode_error, "truncated input");
    }
    std::uint64_t be(std::size_t n) {
        need(n);
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < n; ++i)
            v = (v << 8) | in_[pos_ + i];
        pos_ += n;
        return v;
    }

    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
};

namespace detail {

inline scheme_id read_header(Reader& r) {
    const auto version = r.u8();
    if (version != format_version)
        throw error(errc::decode_error, "unsupported format version " + std::to_string(version));
    const auto raw = r.u8();
    if (!is_valid_scheme_id(raw))
        throw error(errc::decode_error, "unknown scheme id " + std::to_string(raw));
    return static_cast<scheme_id>(raw);
}

inline void write_header(Writer& w, scheme_id id) {
    w.u8(format_version);
    w.u8(static_cast<std::uint8_t>(id));
}

/// Label count read from the wire, checked against what is actually left.
inline std::uint32_t read_count(Reader& r, std::size_t k) {
    const auto count = r.u32();
    if (static_cast<std::uint64_t>(count) * k > r.remaining())
        throw error(errc::decode_error, "label count exceeds input");
    return count;
}

} // namespace detail

inline bytes encode(const Digest& d) {
    Writer w;
    detail::write_header(w, d.scheme);
    w.u64(d.length);
    w.label(d.label);
    return std::move(w).take();
}

inline Digest decode_digest(std::span<const std::uint8_t> in, std::size_t k) {
    Reader r(in);
    Digest d;
    d.scheme = detail::read_header(r);
    d.length = r.u64();
    d.label = r.label(k);
    r.finish();
    return d;
}

inline bytes encode(const PrefixCertificate& c) {
    Writer w;
    detail::write_header(w, c.scheme);
    w.u64(c.len_s);
    w.u64(c.len_t);
    w.u32(static_cast<std::uint32_t>(c.labels.size()));
    for (const auto& l : c.labels)
        w.label(l);
    return std::move(w).take();
}

inline PrefixCertificate decode_prefix_certificate(std::span<const std::uint8_t> in, std::size_t k) {
    Reader r(in);
    PrefixCertificate c;
    c.scheme = detail::read_header(r);
    c.len_s = r.u64();
    c.len_t = r.u64();
    const auto count = detail::read_count(r, k);
    for (std::uint32_t i = 0; i < count; ++i)
        c.labels.push_back(r.label(k));
    r.finish();
    return c;
}

inline bytes encode(const Identifier& id) {
    Writer w;
    detail::write_header(w, id.scheme);
    w.u64(id.position);
    w.label(id.item_hash);
    w.u32(static_cast<std::uint32_t>(id.boundary.size()));
    for (const auto& l : id.boundary)
        w.label(l);
    return std::move(w).take();
}

inline Identifier decode_identifier(std::span<const std::uint8_t> in, std::size_t k) {
    Reader r(in);
    Identifier id;
    id.scheme = detail::read_header(r);
    id.position = r.u64();
    id.item_hash = r.label(k);
    const auto count = detail::read_count(r, k);
    for (std::uint32_t i = 0; i < count; ++i)
        id.boundary.push_back(r.label(k));
    r.finish();
    return id;
}

inline bytes encode(const TimestampCertificate& tc) {
    Writer w;
    for (const bytes& part : {encode(tc.prefix), encode(tc.id_s), encode(tc.id_t)}) {
        w.u32(static_cast<std::uint32_t>(part.size()));
        w.raw(part);
    }
    return std::move(w).take();
}

inline TimestampCertificate decode_timestamp_certificate(std::span<const std::uint8_t> in, std::size_t k) {
    Reader r(in);
    auto part = [&r] { return r.raw(r.u32()); };
    TimestampCertificate tc;
    tc.prefix = decode_prefix_certificate(part(), k);
    tc.id_s = decode_identifier(part(), k);
    tc.id_t = decode_identifier(part(), k);
    r.finish();
    return tc;
}

/// root (17) || claimed label (k) || count (4) || boundary labels.
inline bytes encode(const SubgraphProof& p) {
    Writer w;
    w.raw(p.root.encode());
    w.label(p.claimed_root_label);
    w.u32(static_cast<std::uint32_t>(p.boundary.size()));
    for (const auto& [v, l] : p.boundary)
        w.label(l);
    return std::move(w).take();
}

inline std::string hex(std::span<const std::uint8_t> data) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (auto b : data) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

inline bytes unhex(std::string_view text) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9')
            return c - '0';
        if (c >= 'a' && c <= 'f')
            return c - 'a' + 10;
        if (c >= 'A' && c <= 'F')
            return c - 'A' + 10;
        return -1;
    };
    if (text.size() % 2 != 0)
        throw error(errc::decode_error, "odd number of hex digits");
    bytes out;
    for (std::size_t i = 0; i < text.size(); i += 2) {
        const int hi = nibble(text[i]), lo = nibble(text[i + 1]);
        if (hi < 0 || lo < 0)
            throw error(errc::decode_error, "not a hex digit");
        out.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
    }
    return out;
}

} // namespace pfxauth::wire
