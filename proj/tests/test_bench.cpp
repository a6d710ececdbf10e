#include <pfxauth/bench.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace pfxauth;

TEST(Measure, LinearHundred) {
    const auto rows = bench::measure(LinearScheme{}, {100});
    ASSERT_EQ(rows.size(), 1u);
    const auto& r = rows[0];
    EXPECT_EQ(r.vertices_total, 200u);
    EXPECT_EQ(r.edges_total, 199u);
    EXPECT_EQ(r.vertices_delta, 2u);
    EXPECT_EQ(r.edges_delta, 2u);
    EXPECT_EQ(r.positional_cert_labels, 100u);
    EXPECT_EQ(r.prefix_cert_labels, 100u);
    EXPECT_EQ(r.identifier_labels, 2u);
    EXPECT_EQ(r.digest_pool_size, 1u);
    // every chain vertex on the path is rehashed once, plus both digests' sinks
    EXPECT_GE(r.verify_hash_invocations, 99u);
}

TEST(Measure, CountsMatchTheTruncatedGraph) {
    for (auto id : all_schemes) {
        const auto scheme = make_scheme(id);
        const auto rows = bench::measure(*scheme, {1, 2, 17, 40}, false);
        for (const auto& r : rows) {
            const TruncatedGraph g(*scheme, r.n);
            EXPECT_EQ(r.vertices_total, g.vertex_count()) << to_string(id) << " " << r.n;
            EXPECT_EQ(r.edges_total, g.edge_count()) << to_string(id) << " " << r.n;
            EXPECT_EQ(r.verify_hash_invocations, 0u);
        }
    }
}

TEST(Measure, RejectsOutOfRange) {
    EXPECT_THROW(bench::measure(LinearScheme{}, {0}), error);
    EXPECT_THROW(bench::measure(LinearScheme{}, {bench::n_limit + 1}), error);
}

TEST(Measure, TreeSchemesMatchTheirClosedForms) {
    for (auto id : {scheme_id::threaded_auth_tree, scheme_id::hypercore, scheme_id::transparency_log}) {
        for (const auto& r : bench::measure(*make_scheme(id), bench::n_grid(512), false)) {
            if (r.n < 2)
                continue;
            EXPECT_EQ(static_cast<double>(r.positional_cert_labels), bench::positional_closed_form(id, r.n));
            EXPECT_EQ(static_cast<double>(r.digest_pool_size), bench::digest_pool_closed_form(id, r.n));
        }
    }
}

TEST(Grid, PowersAndNeighbours) {
    EXPECT_EQ(bench::n_grid(16), (std::vector<std::uint64_t>{1, 2, 3, 4, 6, 7, 8, 12, 15, 16}));
}

TEST(Sample, SmallLengthsAreExhaustive) {
    const auto s = bench::prefix_sample(10);
    EXPECT_EQ(s, (std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 7, 8, 9}));
    for (auto ls : bench::prefix_sample(5000)) {
        EXPECT_GE(ls, 1u);
        EXPECT_LT(ls, 5000u);
    }
}

TEST(Fit, ExactLineAndNoise) {
    const auto f = bench::fit({1, 2, 3, 4}, {3, 5, 7, 9});
    EXPECT_DOUBLE_EQ(f.slope, 2);
    EXPECT_DOUBLE_EQ(f.intercept, 1);
    EXPECT_DOUBLE_EQ(f.r_squared, 1);
    const auto g = bench::fit({1, 2, 3}, {1, 3, 2});
    EXPECT_NEAR(g.slope, 0.5, 1e-12);
    EXPECT_NEAR(g.r_squared, 0.25, 1e-12);
    EXPECT_EQ(bench::fit({2, 2}, {1, 5}).slope, 0);
}

TEST(Csv, HeaderAndOneRowPerMeasurement) {
    std::vector<bench::MetricRow> rows;
    for (auto id : {scheme_id::linear, scheme_id::hypercore}) {
        const auto part = bench::measure(*make_scheme(id), bench::n_grid(64), false);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    std::istringstream in(bench::csv(rows));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, bench::csv_header);
    std::size_t count = 0;
    while (std::getline(in, line)) {
        ++count;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), std::count(bench::csv_header.begin(), bench::csv_header.end(), ','));
    }
    EXPECT_EQ(count, rows.size());
    EXPECT_THROW(bench::table({}), error);
    EXPECT_NE(bench::table(rows).find("hypercore"), std::string::npos);
}

TEST(Growth, ThreadedTreeEdgesPerLengthGrowLogarithmically) {
    std::vector<double> x, y;
    for (const auto& r : bench::measure(ThreadedAuthTreeScheme{}, bench::n_grid(2048), false)) {
        if (r.n < 16)
            continue;
        x.push_back(std::log2(static_cast<double>(r.n)));
        y.push_back(static_cast<double>(r.edges_total) / static_cast<double>(r.n));
    }
    const auto f = bench::fit(x, y);
    EXPECT_GT(f.slope, 0.3);
    EXPECT_LT(f.slope, 0.7);
    EXPECT_GT(f.r_squared, 0.9);
}

TEST(Growth, CopyAntimonotoneMaximaPerGeneration) {
    const AntimonotoneScheme simple(antimonotone::variant::simple, antimonotone::construction::copies);
    for (const auto& g : bench::antimonotone_maxima(simple, 1023)) {
        if (g.generation >= 2) {
            EXPECT_EQ(static_cast<double>(g.measured), 5.0 * g.generation - 3) << g.generation;
        }
    }
}
