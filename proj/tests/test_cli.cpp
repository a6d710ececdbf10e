#include <pfxauth/logfile.hpp>
#include <pfxauth/wire.hpp>

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

namespace fs = std::filesystem;
using namespace pfxauth;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run pfxd(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + PFXD_PATH + " " + args + " 2>&1";
    Run r;
    FILE* p = ::popen(cmd.c_str(), "r");
    if (!p)
        return r;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, p))
        r.out.append(buf, n);
    const int raw = ::pclose(p);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string trimmed(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r'))
        s.pop_back();
    return s;
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("pfxd-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()) + "-" +
                std::to_string(::getpid()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    /// Appends item-1..item-n to a fresh log and returns the digests.
    std::vector<std::string> fill(const std::string& log, const std::string& scheme, int n,
                                  const std::string& extra = "") {
        std::vector<std::string> digests;
        for (int i = 1; i <= n; ++i) {
            const auto r = pfxd("append " + log + (i == 1 ? " --create --scheme " + scheme + " " + extra : "") +
                                " --text item-" + std::to_string(i));
            EXPECT_EQ(r.status, 0) << r.out;
            digests.push_back(trimmed(r.out));
        }
        return digests;
    }

    fs::path dir_;
};

} // namespace

TEST_F(Cli, AppendDigestProveVerify) {
    const auto log = path("a.log");
    const auto digests = fill(log, "hypercore", 12);
    EXPECT_EQ(trimmed(pfxd("digest " + log).out), digests.back());
    EXPECT_EQ(trimmed(pfxd("digest " + log + " --at 5").out), digests[4]);
    EXPECT_EQ(digests.back().size(), 2 * (10 + 32u));

    ASSERT_EQ(pfxd("prove " + log + " --prefix 5 --out " + path("c")).status, 0);
    EXPECT_EQ(pfxd("verify --digest-s " + digests[4] + " --digest-t " + digests[11] + " --cert " + path("c")).status, 0);
    EXPECT_EQ(pfxd("verify --digest-s " + digests[3] + " --digest-t " + digests[11] + " --cert " + path("c")).status, 2);

    ASSERT_EQ(pfxd("prove " + log + " --prefix 3 --at 9 --out " + path("c39")).status, 0);
    EXPECT_EQ(pfxd("verify --digest-s " + digests[2] + " --digest-t " + digests[8] + " --cert " + path("c39")).status, 0);
}

TEST_F(Cli, DigestsMatchTheLibrary) {
    const auto log = path("b.log");
    const auto digests = fill(log, "skiplist", 6);
    const PrefixAuth pas(scheme_id::skip_list);
    std::vector<std::string> items;
    for (int i = 1; i <= 6; ++i) {
        items.push_back("item-" + std::to_string(i));
        EXPECT_EQ(digests[static_cast<std::size_t>(i - 1)], wire::hex(wire::encode(pas.commit(items))));
    }
}

TEST_F(Cli, TamperedCertificateIsRefuted) {
    const auto log = path("t.log");
    const auto digests = fill(log, "tat", 9);
    ASSERT_EQ(pfxd("prove " + log + " --prefix 4 --out " + path("c")).status, 0);
    auto cert = logfile::read_file(path("c"));
    cert.back() ^= 0x40;
    logfile::write_file(path("c"), cert);
    const auto r = pfxd("verify --digest-s " + digests[3] + " --digest-t " + digests[8] + " --cert " + path("c"));
    EXPECT_EQ(r.status, 1) << r.out;
}

TEST_F(Cli, TimestampRoundTrip) {
    const auto log = path("s.log");
    const auto digests = fill(log, "ct", 7);
    ASSERT_EQ(pfxd("prove " + log + " --stamp 2 7 --out " + path("ts")).status, 0);
    const std::string args = " --digest-t " + digests[6] + " --cert " + path("ts") + " --stamp";
    EXPECT_EQ(pfxd("verify --digest-s " + digests[1] + args).status, 0);
    EXPECT_EQ(pfxd("verify --digest-s " + digests[2] + args).status, 2);
}

TEST_F(Cli, RangeErrorsNameTheBound) {
    const auto log = path("r.log");
    fill(log, "linear", 7);
    const auto r = pfxd("prove " + log + " --prefix 7 --out " + path("c"));
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.out.find('7'), std::string::npos) << r.out;
    EXPECT_EQ(pfxd("digest " + log + " --at 8").status, 2);
    EXPECT_EQ(pfxd("bench --schemes linear --n-max 99999").status, 2);
}

TEST_F(Cli, CorruptStateIsRefusedNotRepaired) {
    const auto log = path("c.log");
    fill(log, "linear", 3);
    const auto state = logfile::state_path(log);
    auto bytes = logfile::read_file(state);
    bytes[bytes.size() / 2] ^= 0xff;
    logfile::write_file(state, bytes);
    const auto r = pfxd("append " + log + " --text more");
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.out.find("checksum"), std::string::npos) << r.out;
    EXPECT_EQ(logfile::scan(log).items.size(), 3u);
}

TEST_F(Cli, MissingStateIsRebuiltFromTheLog) {
    const auto log = path("m.log");
    const auto digests = fill(log, "antimonotone-optimal", 5);
    fs::remove(logfile::state_path(log));
    const auto r = pfxd("append " + log + " --text item-6");
    ASSERT_EQ(r.status, 0) << r.out;
    const PrefixAuth pas(scheme_id::antimonotone_optimal);
    std::vector<std::string> items;
    for (int i = 1; i <= 6; ++i)
        items.push_back("item-" + std::to_string(i));
    EXPECT_EQ(trimmed(r.out), wire::hex(wire::encode(pas.commit(items))));
}

TEST_F(Cli, HashSelection) {
    const auto a = path("h1.log"), b = path("h2.log");
    const auto wide = fill(a, "linear", 3, "--hash sha512");
    EXPECT_EQ(wide.back().size(), 2 * (10 + 64u));
    ASSERT_EQ(pfxd("append " + b + " --create --scheme linear --text x", "PFXD_HASH=sha3-256").status, 0);
    EXPECT_EQ(logfile::scan(b).header.hash.algorithm, hash_algorithm::sha3_256);
    ASSERT_EQ(pfxd("prove " + a + " --prefix 1 --out " + path("c")).status, 0);
    const std::string args = "verify --digest-s " + wide[0] + " --digest-t " + wide[2] + " --cert " + path("c");
    EXPECT_EQ(pfxd(args + " --hash sha512").status, 0);
    EXPECT_NE(pfxd(args + " --hash sha3-256").status, 0);
}

TEST_F(Cli, InputErrors) {
    EXPECT_EQ(pfxd("digest " + path("missing.log")).status, 3);
    EXPECT_EQ(pfxd("verify --digest-s zz --digest-t 00 --cert " + path("x")).status, 2);
    EXPECT_EQ(pfxd("no-such-command").status, 2);
    const auto log = path("d.log");
    fill(log, "linear", 1);
    EXPECT_EQ(pfxd("append " + log + " --create --scheme linear --text again").status, 0);
    EXPECT_EQ(pfxd("append " + log + " --create --scheme full --text other").status, 2);
}

TEST_F(Cli, ExportDotAndBench) {
    const auto r = pfxd("export-dot --scheme linear --n 3");
    ASSERT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("\"p3\" -> \"p2\""), std::string::npos) << r.out;
    const auto csv = path("b.csv");
    ASSERT_EQ(pfxd("bench --schemes linear,hypercore --n-max 64 --csv " + csv).status, 0);
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header.rfind("scheme,n,", 0), 0u);
}
