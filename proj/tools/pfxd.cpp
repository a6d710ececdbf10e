// pfxd: append-only item logs with prefix and timestamp certificates.
//
// exit codes: 0 ok / verified, 1 refuted, 2 malformed input, context or
// range error, 3 I/O failure.

#include <pfxauth/bench.hpp>
#include <pfxauth/logfile.hpp>
#include <pfxauth/pas.hpp>
#include <pfxauth/schemes.hpp>
#include <pfxauth/wire.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace pfxauth;

namespace {

enum exit_code : int { ok = 0, refuted = 1, bad_input = 2, io_failure = 3 };

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

HashConfig new_log_hash(const std::optional<std::string>& flag, std::optional<std::size_t> width) {
    std::string name = "sha256";
    if (const char* env = std::getenv("PFXD_HASH"); env && *env)
        name = env;
    if (flag)
        name = *flag;
    auto config = HashConfig::for_algorithm(parse_hash_algorithm(name));
    if (width)
        config.width = *width;
    config.validate();
    return config;
}

bytes read_item(const std::optional<std::string>& file, const std::optional<std::string>& text) {
    if (text)
        return bytes(text->begin(), text->end());
    if (file && *file != "-")
        return logfile::read_file(*file);
    std::cin >> std::noskipws;
    bytes out((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    if (std::cin.bad())
        throw logfile::io_error("cannot read standard input");
    return out;
}

std::string hex_digest(const Digest& d) { return wire::hex(wire::encode(d)); }

struct AppendArgs {
    std::string log;
    bool create = false;
    std::optional<std::string> scheme;
    std::optional<std::string> hash;
    std::optional<std::size_t> width;
    std::optional<std::string> item_file;
    std::optional<std::string> text;
};

int cmd_append(const AppendArgs& a) {
    const fs::path log_path = a.log;
    const fs::path state_path = logfile::state_path(log_path);
    if (!fs::exists(log_path)) {
        if (!a.create)
            throw usage_error(a.log + " does not exist (use --create)");
        logfile::create(log_path, {parse_scheme_id(a.scheme.value_or("linear")), new_log_hash(a.hash, a.width)});
    }
    const logfile::FileLock lock(state_path);
    const auto log = logfile::scan(log_path);
    if (a.scheme && parse_scheme_id(*a.scheme) != log.header.scheme)
        throw error(errc::context_mismatch, a.log + " uses scheme " + std::string(to_string(log.header.scheme)));
    if ((a.hash || a.width) && !(new_log_hash(a.hash.value_or(std::string(to_string(log.header.hash.algorithm))),
                                               a.width.value_or(log.header.hash.width)) == log.header.hash))
        throw error(errc::context_mismatch, a.log + " uses another hash configuration");
    const PrefixAuth pas(make_scheme(log.header.scheme), Hasher(log.header.hash));

    CommitState state;
    if (fs::file_size(state_path) == 0) {
        state = pas.state_of(log.items);
    } else {
        auto [header, stored] = logfile::decode_state(logfile::read_file(state_path));
        if (!(header == log.header))
            throw error(errc::context_mismatch, "state file belongs to another scheme or hash");
        if (stored.length != log.items.size())
            throw error(errc::corrupt_commit_state, "state covers " + std::to_string(stored.length) +
                                                        " items, log holds " + std::to_string(log.items.size()));
        state = std::move(stored);
    }
    const auto item = read_item(a.item_file, a.text);
    auto [digest, next] = pas.sparse_commit(state, item);
    logfile::append_record(log_path, item);
    logfile::write_file(state_path, logfile::encode_state(log.header, next));
    std::cout << hex_digest(digest) << "\n";
    return ok;
}

int cmd_digest(const std::string& log_path, std::optional<std::uint64_t> at) {
    const auto log = logfile::scan(log_path);
    const std::uint64_t n = at.value_or(log.items.size());
    if (n == 0 || n > log.items.size())
        throw error(errc::out_of_range, "--at must lie in 1.." + std::to_string(log.items.size()));
    const PrefixAuth pas(make_scheme(log.header.scheme), Hasher(log.header.hash));
    const std::vector<bytes> items(log.items.begin(), log.items.begin() + static_cast<std::ptrdiff_t>(n));
    std::cout << hex_digest(pas.commit(items)) << "\n";
    return ok;
}

struct ProveArgs {
    std::string log;
    std::optional<std::uint64_t> prefix;
    std::optional<std::uint64_t> at;
    std::vector<std::uint64_t> stamp;
    std::string out;
};

int cmd_prove(const ProveArgs& a) {
    const auto log = logfile::scan(a.log);
    const std::uint64_t count = log.items.size();
    const PrefixAuth pas(make_scheme(log.header.scheme), Hasher(log.header.hash));
    auto prefix_of = [&](std::uint64_t n) {
        return std::vector<bytes>(log.items.begin(), log.items.begin() + static_cast<std::ptrdiff_t>(n));
    };
    bytes encoded;
    if (!a.stamp.empty()) {
        const auto i = a.stamp[0], j = a.stamp[1];
        if (i < 1 || i >= j || j > count)
            throw error(errc::out_of_range, "--stamp needs 1 <= I < J <= " + std::to_string(count));
        encoded = wire::encode(pas.timestamp_certify(prefix_of(j), i));
    } else {
        const std::uint64_t lt = a.at.value_or(count);
        const std::uint64_t ls = *a.prefix;
        if (lt > count)
            throw error(errc::out_of_range, "--at must not exceed the item count " + std::to_string(count));
        if (ls < 1 || ls >= lt)
            throw error(errc::out_of_range, "--prefix needs 1 <= LS < LT = " + std::to_string(lt));
        encoded = wire::encode(pas.certify(prefix_of(lt), ls));
    }
    logfile::write_file(a.out, encoded);
    return ok;
}

struct VerifyArgs {
    std::string digest_s, digest_t, cert;
    bool stamp = false;
    std::string hash = "sha256";
};

int cmd_verify(const VerifyArgs& a) {
    const auto raw_s = wire::unhex(a.digest_s), raw_t = wire::unhex(a.digest_t);
    if (raw_t.size() < 10 || raw_s.size() != raw_t.size())
        throw error(errc::decode_error, "digests differ in width or are too short");
    auto config = HashConfig::for_algorithm(parse_hash_algorithm(a.hash));
    config.width = raw_t.size() - 10;
    config.validate();
    const Digest d_s = wire::decode_digest(raw_s, config.width);
    const Digest d_t = wire::decode_digest(raw_t, config.width);
    if (d_s.scheme != d_t.scheme)
        throw error(errc::context_mismatch, "digests of different schemes");
    const PrefixAuth pas(make_scheme(d_t.scheme), Hasher(config));
    const auto cert = logfile::read_file(a.cert);
    bool verified;
    if (a.stamp)
        verified = pas.timestamp_verify(d_s, d_t, wire::decode_timestamp_certificate(cert, config.width));
    else
        verified = pas.verify(d_s, d_t, wire::decode_prefix_certificate(cert, config.width));
    if (!verified) {
        std::cerr << "refuted\n";
        return refuted;
    }
    std::cout << "verified\n";
    return ok;
}

std::vector<scheme_id> parse_scheme_list(const std::string& list) {
    if (list == "all")
        return {std::begin(all_schemes), std::end(all_schemes)};
    std::vector<scheme_id> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        const auto end = std::min(list.find(',', start), list.size());
        out.push_back(parse_scheme_id(list.substr(start, end - start)));
        start = end + 1;
    }
    return out;
}

int cmd_bench(const std::string& schemes, std::uint64_t n_max, const std::optional<std::string>& csv_path,
              const std::string& construction) {
    if (construction != "formula" && construction != "copies")
        throw usage_error("--construction must be formula or copies");
    const auto how = construction == "copies" ? antimonotone::construction::copies : antimonotone::construction::formula;
    if (n_max < 1 || n_max > bench::n_limit)
        throw error(errc::out_of_range, "--n-max must lie in 1.." + std::to_string(bench::n_limit));
    std::vector<bench::MetricRow> rows;
    for (auto id : parse_scheme_list(schemes)) {
        auto part = bench::measure(*make_scheme(id, how), bench::n_grid(n_max));
        rows.insert(rows.end(), part.begin(), part.end());
    }
    std::cout << bench::table(rows);
    if (csv_path) {
        const auto text = bench::csv(rows);
        logfile::write_file(*csv_path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
    }
    return ok;
}

inline constexpr std::uint64_t dot_limit = 4096;

int cmd_export_dot(const std::string& scheme, std::uint64_t n, const std::optional<std::string>& out) {
    if (n < 1 || n > dot_limit)
        throw error(errc::out_of_range, "--n must lie in 1.." + std::to_string(dot_limit));
    const auto text = export_dot(*make_scheme(parse_scheme_id(scheme)), n);
    if (out)
        logfile::write_file(*out, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
    else
        std::cout << text;
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pfxd - prefix authenticated logs"};
    app.require_subcommand(1);

    AppendArgs append;
    auto* append_cmd = app.add_subcommand("append", "append one item, print the new digest");
    append_cmd->add_option("log", append.log, "log file")->required();
    append_cmd->add_flag("--create", append.create, "create the log if missing");
    append_cmd->add_option("--scheme", append.scheme, "scheme of a new log");
    append_cmd->add_option("--hash", append.hash, "hash of a new log (sha256, sha512, sha3-256)");
    append_cmd->add_option("--width", append.width, "label width k of a new log");
    auto* item_opt = append_cmd->add_option("--item", append.item_file, "item file, - for stdin");
    append_cmd->add_option("--text", append.text, "item given inline")->excludes(item_opt);

    std::string digest_log;
    std::optional<std::uint64_t> digest_at;
    auto* digest_cmd = app.add_subcommand("digest", "digest of the log (or of its first N items)");
    digest_cmd->add_option("log", digest_log, "log file")->required();
    digest_cmd->add_option("--at", digest_at, "prefix length");

    ProveArgs prove;
    auto* prove_cmd = app.add_subcommand("prove", "write a prefix or timestamp certificate");
    prove_cmd->add_option("log", prove.log, "log file")->required();
    auto* prefix_opt = prove_cmd->add_option("--prefix", prove.prefix, "prefix length LS");
    prove_cmd->add_option("--at", prove.at, "sequence length LT (default: item count)")->needs(prefix_opt);
    auto* stamp_opt = prove_cmd->add_option("--stamp", prove.stamp, "positions I J")->expected(2);
    prefix_opt->excludes(stamp_opt);
    prove_cmd->add_option("--out", prove.out, "certificate file")->required();

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "check a certificate against two digests");
    verify_cmd->add_option("--digest-s", verify.digest_s, "hex digest of the prefix")->required();
    verify_cmd->add_option("--digest-t", verify.digest_t, "hex digest of the sequence")->required();
    verify_cmd->add_option("--cert", verify.cert, "certificate file")->required();
    verify_cmd->add_flag("--stamp", verify.stamp, "the certificate is a timestamp certificate");
    verify_cmd->add_option("--hash", verify.hash, "hash algorithm of the digests");

    std::string bench_schemes = "all";
    std::uint64_t bench_n_max = 1024;
    std::optional<std::string> bench_csv;
    std::string bench_construction = "formula";
    auto* bench_cmd = app.add_subcommand("bench", "measure certificate sizes and graph growth");
    bench_cmd->add_option("--schemes", bench_schemes, "comma separated list or all");
    bench_cmd->add_option("--n-max", bench_n_max, "largest n");
    bench_cmd->add_option("--csv", bench_csv, "CSV output path");
    bench_cmd->add_option("--construction", bench_construction, "antimonotone graphs from the jump formula or by copying");

    std::string dot_scheme;
    std::uint64_t dot_n = 0;
    std::optional<std::string> dot_out;
    auto* dot_cmd = app.add_subcommand("export-dot", "Graphviz rendering of the truncated graph");
    dot_cmd->add_option("--scheme", dot_scheme, "scheme")->required();
    dot_cmd->add_option("--n", dot_n, "sequence length")->required();
    dot_cmd->add_option("--out", dot_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return bad_input;
    }

    try {
        if (*append_cmd)
            return cmd_append(append);
        if (*digest_cmd)
            return cmd_digest(digest_log, digest_at);
        if (*prove_cmd) {
            if (!prove.prefix && prove.stamp.empty())
                throw usage_error("prove needs --prefix or --stamp");
            return cmd_prove(prove);
        }
        if (*verify_cmd)
            return cmd_verify(verify);
        if (*bench_cmd)
            return cmd_bench(bench_schemes, bench_n_max, bench_csv, bench_construction);
        if (*dot_cmd)
            return cmd_export_dot(dot_scheme, dot_n, dot_out);
    } catch (const logfile::io_error& e) {
        std::cerr << "pfxd: " << e.what() << "\n";
        return io_failure;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "pfxd: " << e.what() << "\n";
        return io_failure;
    } catch (const error& e) {
        std::cerr << "pfxd: " << e.what() << "\n";
        return bad_input;
    } catch (const usage_error& e) {
        std::cerr << "pfxd: " << e.what() << "\n";
        return bad_input;
    } catch (const std::exception& e) {
        std::cerr << "pfxd: " << e.what() << "\n";
        return bad_input;
    }
    return bad_input;
}
