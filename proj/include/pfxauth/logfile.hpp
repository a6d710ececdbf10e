#pragma once

#include <pfxauth/pas.hpp>
#include <pfxauth/wire.hpp>

#include <openssl/evp.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

namespace pfxauth::logfile {

inline constexpr std::uint8_t log_magic[4] = {'P', 'F', 'X', 'D'};
inline constexpr std::uint8_t state_magic[4] = {'P', 'F', 'X', 'S'};
inline constexpr std::size_t header_size = 8;
inline constexpr std::size_t checksum_size = 32;

/// I/O failures, kept apart from pfxauth::error so callers can tell
/// environment trouble from bad input.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Header {
    scheme_id scheme{};
    HashConfig hash;

    bool operator==(const Header&) const = default;
};

inline bytes encode_header(const Header& h) {
    bytes out(log_magic, log_magic + 4);
    out.push_back(wire::format_version);
    out.push_back(static_cast<std::uint8_t>(h.scheme));
    out.push_back(static_cast<std::uint8_t>(h.hash.algorithm));
    out.push_back(static_cast<std::uint8_t>(h.hash.width));
    return out;
}

inline Header decode_header(wire::Reader& r) {
    const auto magic = r.raw(4);
    if (!std::equal(magic.begin(), magic.end(), log_magic) && !std::equal(magic.begin(), magic.end(), state_magic))
        throw error(errc::decode_error, "bad magic");
    if (r.u8() != wire::format_version)
        throw error(errc::decode_error, "unsupported format version");
    const auto raw_scheme = r.u8();
    if (!is_valid_scheme_id(raw_scheme))
        throw error(errc::decode_error, "unknown scheme id " + std::to_string(raw_scheme));
    Header h;
    h.scheme = static_cast<scheme_id>(raw_scheme);
    h.hash = HashConfig::for_algorithm(static_cast<hash_algorithm>(r.u8()));
    h.hash.width = r.u8();
    h.hash.validate();
    return h;
}

inline bytes read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot open " + path.string());
    bytes out((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad())
        throw io_error("cannot read " + path.string());
    return out;
}

inline void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out)
        throw io_error("cannot write " + path.string());
}

struct Log {
    Header header;
    std::vector<bytes> items;
};

inline Log scan(const std::filesystem::path& path) {
    const auto data = read_file(path);
    wire::Reader r(data);
    Log log{decode_header(r), {}};
    while (r.remaining() > 0) {
        const auto size = r.u32();
        const auto payload = r.raw(size);
        log.items.emplace_back(payload.begin(), payload.end());
    }
    return log;
}

inline void create(const std::filesystem::path& path, const Header& h) {
    if (std::filesystem::exists(path))
        throw io_error(path.string() + " already exists");
    write_file(path, encode_header(h));
}

inline void append_record(const std::filesystem::path& path, std::span<const std::uint8_t> item) {
    if (item.size() > UINT32_MAX)
        throw error(errc::out_of_range, "item larger than 4 GiB");
    wire::Writer w;
    w.u32(static_cast<std::uint32_t>(item.size()));
    w.raw(item);
    const auto record = std::move(w).take();
    std::ofstream out(path, std::ios::binary | std::ios::app);
    out.write(reinterpret_cast<const char*>(record.data()), static_cast<std::streamsize>(record.size()));
    if (!out)
        throw io_error("cannot append to " + path.string());
}

inline std::filesystem::path state_path(const std::filesystem::path& log) {
    return log.string() + ".state";
}

inline std::array<std::uint8_t, checksum_size> checksum(std::span<const std::uint8_t> data) {
    std::array<std::uint8_t, checksum_size> out{};
    unsigned int size = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &size, EVP_sha256(), nullptr) != 1)
        throw error(errc::bad_hash_config, "checksum failed");
    return out;
}

/// Sidecar: "PFXS" header, length, pool entries (vertex ∥ label), then a
/// SHA-256 checksum over everything before it.
inline bytes encode_state(const Header& h, const CommitState& state) {
    wire::Writer w;
    auto head = encode_header(h);
    std::copy(state_magic, state_magic + 4, head.begin());
    w.raw(head);
    w.u64(state.length);
    w.u32(static_cast<std::uint32_t>(state.pool.size()));
    for (const auto& [v, l] : state.pool) {
        w.raw(v.encode());
        w.label(l);
    }
    auto out = std::move(w).take();
    const auto sum = checksum(out);
    out.insert(out.end(), sum.begin(), sum.end());
    return out;
}

inline std::pair<Header, CommitState> decode_state(std::span<const std::uint8_t> data) {
    if (data.size() < checksum_size)
        throw error(errc::corrupt_commit_state, "state file truncated");
    const auto body = data.first(data.size() - checksum_size);
    const auto sum = checksum(body);
    if (!std::equal(sum.begin(), sum.end(), data.end() - checksum_size))
        throw error(errc::corrupt_commit_state, "state checksum mismatch");
    if (!std::equal(state_magic, state_magic + 4, body.begin()))
        throw error(errc::corrupt_commit_state, "bad state magic");
    try {
        wire::Reader r(body);
        const Header h = decode_header(r);
        CommitState state{h.scheme, r.u64(), {}};
        const auto count = r.u32();
        for (std::uint32_t i = 0; i < count; ++i) {
            const auto v = VertexId::decode(r.raw(VertexId::encoded_size));
            state.pool.emplace_back(v, r.label(h.hash.width));
        }
        r.finish();
        return {h, std::move(state)};
    } catch (const error& e) {
        throw error(errc::corrupt_commit_state, e.what());
    }
}

/// Advisory exclusive lock held for the lifetime of the object.
class FileLock {
public:
    explicit FileLock(const std::filesystem::path& path) {
        fd_ = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
        if (fd_ < 0)
            throw io_error("cannot open " + path.string() + " for locking");
        if (::flock(fd_, LOCK_EX) != 0) {
            ::close(fd_);
            throw io_error("cannot lock " + path.string());
        }
    }
    ~FileLock() {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
    FileLock(const FileLock&) = delete;
    FileLock& operator=(const FileLock&) = delete;

private:
    int fd_ = -1;
};

} // namespace pfxauth::logfile
