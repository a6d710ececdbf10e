#include "support.hpp"

#include <pfxauth/pas.hpp>
#include <pfxauth/wire.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <map>

using namespace pfxauth;
using testing_support::concat;
using testing_support::reference_digest;
using testing_support::to_bytes;

namespace {

std::vector<std::string> items_of(std::size_t n, const std::string& tag = "item-") {
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= n; ++i)
        out.push_back(tag + std::to_string(i));
    return out;
}

/// Labels recomputed from the rule graph with one-shot SHA-256 calls.
class OracleLabels {
public:
    OracleLabels(const SchemeGraph& scheme, const std::vector<std::string>& items) : scheme_(scheme), items_(items) {}

    bytes operator()(const VertexId& v) {
        if (auto it = memo_.find(v); it != memo_.end())
            return it->second;
        bytes out;
        if (v.is_sink()) {
            const std::string payload = v.a <= items_.size() ? items_[v.a - 1] : std::string{};
            out = reference_digest("SHA256", concat(0x00, {to_bytes(payload)}));
        } else {
            std::vector<bytes> parts;
            for (const auto& w : canonical_sequence(scheme_.out_neighbors(v)))
                parts.push_back((*this)(w));
            out = reference_digest("SHA256", concat(0x01, parts));
        }
        return memo_[v] = out;
    }

private:
    const SchemeGraph& scheme_;
    const std::vector<std::string>& items_;
    std::map<VertexId, bytes> memo_;
};

bytes label_bytes(const Label& l) { return {l.view().begin(), l.view().end()}; }

Label flipped(Label l, std::size_t octet, std::uint8_t mask = 0x01) {
    l[octet] ^= mask;
    return l;
}

class EveryScheme : public ::testing::TestWithParam<scheme_id> {};

std::string scheme_name(const ::testing::TestParamInfo<scheme_id>& info) {
    std::string name(to_string(info.param));
    std::replace(name.begin(), name.end(), '-', '_');
    return name;
}

} // namespace

INSTANTIATE_TEST_SUITE_P(Schemes, EveryScheme, ::testing::ValuesIn(all_schemes), scheme_name);

TEST_P(EveryScheme, CommitMatchesIndependentRelabeling) {
    const PrefixAuth pas(GetParam());
    const auto items = items_of(40);
    OracleLabels oracle(pas.scheme(), items);
    for (std::size_t n = 1; n <= items.size(); ++n) {
        const std::vector<std::string> prefix(items.begin(), items.begin() + static_cast<long>(n));
        EXPECT_EQ(label_bytes(pas.commit(prefix).label), oracle(pas.scheme().gcommit(n))) << n;
    }
}

TEST_P(EveryScheme, CommitRejectsEmpty) {
    const PrefixAuth pas(GetParam());
    try {
        pas.commit(std::vector<std::string>{});
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::length_zero);
    }
}

TEST_P(EveryScheme, HonestCertificatesVerify) {
    const PrefixAuth pas(GetParam());
    const auto items = items_of(24);
    std::vector<Digest> digests;
    for (std::size_t n = 1; n <= items.size(); ++n)
        digests.push_back(pas.commit(std::vector<std::string>(items.begin(), items.begin() + static_cast<long>(n))));
    for (std::uint64_t lt = 2; lt <= items.size(); ++lt) {
        const std::vector<std::string> t(items.begin(), items.begin() + static_cast<long>(lt));
        for (std::uint64_t ls = 1; ls < lt; ++ls) {
            const auto cert = pas.certify(t, ls);
            EXPECT_EQ(cert.labels.size(), certificate_vertices(pas.scheme(), ls, lt).size());
            EXPECT_TRUE(pas.verify(digests[ls - 1], digests[lt - 1], cert)) << ls << " " << lt;
        }
    }
}

TEST_P(EveryScheme, CertifyRejectsImproperPrefix) {
    const PrefixAuth pas(GetParam());
    const auto items = items_of(5);
    for (std::uint64_t ls : {0, 5, 6}) {
        try {
            pas.certify(items, ls);
            FAIL() << ls;
        } catch (const error& e) {
            EXPECT_TRUE(e.code() == errc::not_proper_prefix || e.code() == errc::length_zero) << ls;
        }
    }
}

TEST_P(EveryScheme, EveryLabelFlipRefutes) {
    const PrefixAuth pas(GetParam());
    const auto items = items_of(19);
    const auto d_t = pas.commit(items);
    for (std::uint64_t ls : {1, 6, 11, 18}) {
        const auto d_s = pas.commit(std::vector<std::string>(items.begin(), items.begin() + static_cast<long>(ls)));
        const auto cert = pas.certify(items, ls);
        for (std::size_t i = 0; i < cert.labels.size(); ++i)
            for (std::size_t octet : {std::size_t{0}, std::size_t{31}}) {
                auto bad = cert;
                bad.labels[i] = flipped(bad.labels[i], octet);
                EXPECT_FALSE(pas.verify(d_s, d_t, bad)) << ls << " label " << i;
            }
    }
}

TEST_P(EveryScheme, DivergentSequencesRefute) {
    const PrefixAuth pas(GetParam());
    auto items = items_of(16);
    const auto cert = pas.certify(items, 7);
    const auto d_t = pas.commit(items);
    auto other = items_of(7, "other-");
    EXPECT_FALSE(pas.verify(pas.commit(other), d_t, cert));
    items[3] = "changed";
    EXPECT_FALSE(pas.verify(pas.commit(std::vector<std::string>(items.begin(), items.begin() + 7)), d_t, cert));
}

TEST_P(EveryScheme, MismatchedContextThrows) {
    const PrefixAuth pas(GetParam());
    const auto items = items_of(9);
    const auto cert = pas.certify(items, 4);
    const auto d_s = pas.commit(std::vector<std::string>(items.begin(), items.begin() + 4));
    const auto d_t = pas.commit(items);
    auto expect_code = [&](const Digest& s, const Digest& t, const PrefixCertificate& c, errc code) {
        try {
            pas.verify(s, t, c);
            FAIL();
        } catch (const error& e) {
            EXPECT_EQ(e.code(), code);
        }
    };
    auto other_scheme = cert;
    other_scheme.scheme = GetParam() == scheme_id::linear ? scheme_id::full : scheme_id::linear;
    expect_code(d_s, d_t, other_scheme, errc::context_mismatch);
    auto short_t = d_t;
    short_t.length = 8;
    expect_code(d_s, short_t, cert, errc::context_mismatch);
    auto missing = cert;
    missing.labels.pop_back();
    expect_code(d_s, d_t, missing, errc::malformed_certificate);
}

TEST_P(EveryScheme, SparseCommitFoldsToTheFullCommit) {
    const PrefixAuth pas(GetParam());
    const auto items = items_of(100);
    auto state = pas.initial_state();
    std::vector<std::string> so_far;
    for (const auto& item : items) {
        so_far.push_back(item);
        auto [digest, next] = pas.sparse_commit(state, item);
        EXPECT_EQ(digest, pas.commit(so_far));
        EXPECT_EQ(next, pas.state_of(so_far));
        EXPECT_EQ(next.pool.size(), pas.scheme().digest_pool(so_far.size()).size());
        state = std::move(next);
    }
}

TEST_P(EveryScheme, CorruptStateIsRejected) {
    const PrefixAuth pas(GetParam());
    const auto state = pas.state_of(items_of(13));
    auto expect_corrupt = [&](const CommitState& s) {
        try {
            pas.sparse_commit(s, std::string("x"));
            FAIL();
        } catch (const error& e) {
            EXPECT_EQ(e.code(), errc::corrupt_commit_state);
        }
    };
    auto shorter = state;
    shorter.length = 12;
    expect_corrupt(shorter);
    auto wrong_vertex = state;
    wrong_vertex.pool.front().first = VertexId::sink(999);
    expect_corrupt(wrong_vertex);
    auto narrow = state;
    narrow.pool.front().second = Label(std::vector<std::uint8_t>(20, 0));
    expect_corrupt(narrow);
}

// The antimonotone pools are only sufficient on the copy construction; the
// formula graph breaks its spine and is covered separately below.
TEST_P(EveryScheme, CertificatesFromPositionalPools) {
    const PrefixAuth pas(make_scheme(GetParam(), antimonotone::construction::copies), Hasher(HashConfig::sha256()));
    const auto items = items_of(33);
    for (std::uint64_t lt : {2, 9, 16, 33})
        for (std::uint64_t ls = 1; ls < lt; ls += 3) {
            const std::vector<std::string> t(items.begin(), items.begin() + static_cast<long>(lt));
            const auto from_pools =
                pas.certify_from_pools(pas.positional_certificate(t, ls), pas.positional_certificate(t));
            EXPECT_EQ(from_pools, pas.certify(t, ls)) << ls << " " << lt;
        }
}

TEST_P(EveryScheme, IdentifiersBindItemAndPosition) {
    const PrefixAuth pas(GetParam());
    const auto items = items_of(21);
    const auto d = pas.commit(items);
    const auto id_last = pas.identify(items, items.size());
    EXPECT_TRUE(pas.verify_identifier(d, id_last));
    auto other_item = id_last;
    other_item.item_hash = pas.hasher().sink(std::string_view("forged"));
    EXPECT_FALSE(pas.verify_identifier(d, other_item));
    for (std::uint64_t i = 1; i < items.size(); ++i) {
        const auto d_i = pas.commit(std::vector<std::string>(items.begin(), items.begin() + static_cast<long>(i)));
        const auto id = pas.identify(items, i);
        EXPECT_TRUE(pas.verify_identifier(d_i, id)) << i;
        EXPECT_FALSE(pas.verify_identifier(d, id)) << i;
        for (std::size_t b = 0; b < id.boundary.size(); ++b) {
            auto bad = id;
            bad.boundary[b] = flipped(bad.boundary[b], 5);
            EXPECT_FALSE(pas.verify_identifier(d_i, bad)) << i << " boundary " << b;
        }
    }
}

TEST_P(EveryScheme, TimestampTamperClasses) {
    const PrefixAuth pas(GetParam());
    const auto t = items_of(27);
    const std::vector<std::string> s(t.begin(), t.begin() + 10);
    const auto d_s = pas.commit(s), d_t = pas.commit(t);
    const auto tc = pas.timestamp_certify(s, t);
    EXPECT_EQ(tc, pas.timestamp_certify(t, s.size()));
    EXPECT_TRUE(pas.timestamp_verify(d_s, d_t, tc));

    auto bad_prefix = tc;
    bad_prefix.prefix.labels.front() = flipped(bad_prefix.prefix.labels.front(), 0);
    EXPECT_FALSE(pas.timestamp_verify(d_s, d_t, bad_prefix));
    auto bad_s = tc;
    bad_s.id_s.item_hash = flipped(bad_s.id_s.item_hash, 3);
    EXPECT_FALSE(pas.timestamp_verify(d_s, d_t, bad_s));
    auto bad_t = tc;
    bad_t.id_t.boundary.back() = flipped(bad_t.id_t.boundary.back(), 7);
    EXPECT_FALSE(pas.timestamp_verify(d_s, d_t, bad_t));
    auto swapped = tc;
    std::swap(swapped.id_s, swapped.id_t);
    EXPECT_FALSE(pas.timestamp_verify(d_s, d_t, swapped));

    auto not_prefix = t;
    not_prefix[2] = "x";
    try {
        pas.timestamp_certify(s, not_prefix);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::not_proper_prefix);
    }
}

TEST_P(EveryScheme, WireRoundTrips) {
    const PrefixAuth pas(GetParam());
    const auto t = items_of(14);
    const auto tc = pas.timestamp_certify(t, 5);
    const auto d = pas.commit(t);
    EXPECT_EQ(wire::encode(d).size(), 10 + 32u);
    EXPECT_EQ(wire::decode_digest(wire::encode(d), 32), d);
    EXPECT_EQ(wire::decode_prefix_certificate(wire::encode(tc.prefix), 32), tc.prefix);
    EXPECT_EQ(wire::decode_identifier(wire::encode(tc.id_s), 32), tc.id_s);
    EXPECT_EQ(wire::decode_timestamp_certificate(wire::encode(tc), 32), tc);

    const auto encoded = wire::encode(tc.prefix);
    EXPECT_EQ(encoded.size(), 2 + 8 + 8 + 4 + 32 * tc.prefix.labels.size());
    for (std::size_t cut : {std::size_t{0}, std::size_t{1}, std::size_t{17}, encoded.size() - 1}) {
        const bytes truncated(encoded.begin(), encoded.begin() + static_cast<long>(cut));
        EXPECT_THROW(wire::decode_prefix_certificate(truncated, 32), error) << cut;
    }
    auto trailing = encoded;
    trailing.push_back(0);
    EXPECT_THROW(wire::decode_prefix_certificate(trailing, 32), error);
    auto bad_version = encoded;
    bad_version[0] = 0x7f;
    EXPECT_THROW(wire::decode_prefix_certificate(bad_version, 32), error);
    auto bad_scheme = encoded;
    bad_scheme[1] = 0xee;
    EXPECT_THROW(wire::decode_prefix_certificate(bad_scheme, 32), error);
}

TEST_P(EveryScheme, OtherHashConfigurations) {
    for (auto alg : {hash_algorithm::sha512, hash_algorithm::sha3_256}) {
        auto config = HashConfig::for_algorithm(alg);
        config.width = 20;
        const PrefixAuth pas(GetParam(), config);
        const auto t = items_of(12);
        const auto d_t = pas.commit(t);
        EXPECT_EQ(d_t.label.size(), 20u);
        const auto d_s = pas.commit(std::vector<std::string>(t.begin(), t.begin() + 5));
        const auto cert = pas.certify(t, 5);
        EXPECT_TRUE(pas.verify(d_s, d_t, cert));
        const PrefixAuth sha256(GetParam());
        EXPECT_THROW(sha256.verify(d_s, d_t, cert), error);
    }
}

TEST(LinearCertificate, ThreeOfSevenHoldsSinksAndTheOldHead) {
    const PrefixAuth pas(scheme_id::linear);
    const auto t = items_of(7);
    EXPECT_EQ(certificate_vertices(pas.scheme(), 3, 7),
              (std::vector<VertexId>{VertexId::sink(3), VertexId::sink(4), VertexId::sink(5), VertexId::sink(6),
                                     VertexId::sink(7), VertexId::chain(2)}));
    const auto cert = pas.certify(t, 3);
    ASSERT_EQ(cert.labels.size(), 6u);
    for (std::size_t i = 0; i < 5; ++i)
        EXPECT_EQ(label_bytes(cert.labels[i]), reference_digest("SHA256", concat(0x00, {to_bytes(t[i + 2])})));
    EXPECT_EQ(cert.labels[5], pas.commit(std::vector<std::string>(t.begin(), t.begin() + 2)).label);
}

TEST(FormulaAntimonotone, PoolDefectIsReportedNotHidden) {
    const PrefixAuth pas(scheme_id::antimonotone_simple);
    const auto t = items_of(33);
    std::size_t refused = 0;
    for (std::uint64_t ls = 1; ls < t.size(); ++ls) {
        try {
            const auto cert = pas.certify_from_pools(pas.positional_certificate(t, ls), pas.positional_certificate(t));
            EXPECT_EQ(cert, pas.certify(t, ls)) << ls;
        } catch (const error& e) {
            EXPECT_EQ(e.code(), errc::insufficient_pool);
            ++refused;
        }
    }
    EXPECT_GT(refused, 0u);
}
