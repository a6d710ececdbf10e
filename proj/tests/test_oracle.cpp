#include "support.hpp"

#include <pfxauth/oracle.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace pfxauth;
using antimonotone::construction;
using antimonotone::variant;

namespace {

std::shared_ptr<const SchemeGraph> reference_scheme(scheme_id id) { return make_scheme(id, construction::copies); }

} // namespace

TEST(Contract, HoldsForEveryScheme) {
    for (auto id : all_schemes) {
        const std::uint64_t n_max = id == scheme_id::full ? 64 : 128;
        const auto report = oracle::check_tpag_contract(*reference_scheme(id), n_max);
        EXPECT_TRUE(report.passed()) << report.text();
    }
}

TEST(Contract, PoolsHoldForEveryScheme) {
    for (auto id : all_schemes) {
        const auto report = oracle::check_pools(*reference_scheme(id), 128);
        EXPECT_TRUE(report.passed()) << report.text();
    }
}

TEST(Contract, FormulaAntimonotonePoolDefectsAreCaught) {
    const auto report = oracle::check_pools(AntimonotoneScheme(variant::simple), 64);
    EXPECT_GT(report.count("certificate-pool"), 0u);
    EXPECT_EQ(report.count("digest-pool"), 0u);
}

TEST(Contract, EveryMutantTripsItsInvariant) {
    const auto all = oracle::mutants();
    ASSERT_EQ(all.size(), 8u);
    std::set<std::string> covered;
    for (const auto& m : all) {
        const auto report = oracle::check_tpag_contract(*m.scheme, 24);
        EXPECT_GT(report.count(m.invariant), 0u) << m.description << "\n" << report.text();
        covered.insert(m.invariant);
    }
    EXPECT_EQ(covered.size(), all.size());
}

TEST(Contract, CtContractsToHypercore) {
    const auto report = oracle::ct_contraction_check(256);
    EXPECT_TRUE(report.passed()) << report.text();
}

TEST(Relabel, EngineAgreesWithTopologicalRelabel) {
    std::mt19937_64 rng(7);
    for (auto id : all_schemes) {
        const auto items = testing_support::random_items(rng, id == scheme_id::full ? 40 : 150);
        for (auto config : {HashConfig::sha256(), HashConfig{hash_algorithm::sha512, 24, 0x00, 0x01}}) {
            const auto report = oracle::check_label_equality(*make_scheme(id), items, Hasher(config));
            EXPECT_TRUE(report.passed()) << report.text();
        }
    }
}

TEST(Relabel, TopologicalOrderPutsParentsFirst) {
    const TruncatedGraph g(*make_scheme(scheme_id::transparency_log), 37);
    const auto order = oracle::topological_order(g);
    ASSERT_TRUE(order);
    std::map<VertexId, std::size_t> at;
    for (std::size_t i = 0; i < order->size(); ++i)
        at[(*order)[i]] = i;
    EXPECT_EQ(at.size(), g.vertex_count());
    for (const auto& [from, to] : g.edges())
        EXPECT_LT(at.at(from), at.at(to));
}

// Path enumeration is exponential, so the graphs stay tiny.
TEST(Determines, AgreesWithPathEnumeration) {
    std::mt19937_64 rng(11);
    std::bernoulli_distribution pick(0.3);
    for (int trial = 0; trial < 300; ++trial) {
        const auto dag = testing_support::random_dag(rng, 4 + trial % 9, 0.35);
        VertexSet set;
        for (const auto& v : dag.vertices())
            if (pick(rng))
                set.insert(v);
        for (const auto& v : dag.vertices())
            EXPECT_EQ(determines(dag, set, v), oracle::determines_by_paths(dag, set, v)) << trial << " " << v.name();
    }
}

TEST(AntimonotoneReport, FormulaDeviationsAreAllExplained) {
    for (auto var : {variant::simple, variant::optimal}) {
        const auto report = oracle::antimonotone_report(var, var == variant::simple ? 6 : 4, 64);
        EXPECT_FALSE(report.spine_breaks.empty());
        EXPECT_GT(report.order_violations, 0u);
        EXPECT_FALSE(report.pool_defects.empty());
        EXPECT_TRUE(report.unexplained_pool_defects.empty()) << report.text();
        EXPECT_FALSE(report.explains_generation(0));
        EXPECT_TRUE(report.explains_generation(2));
    }
}

TEST(AntimonotoneReport, FirstOrderViolation) {
    const auto simple = oracle::antimonotone_report(variant::simple, 4, 8);
    EXPECT_EQ(simple.first_order_violation, (std::pair<std::uint64_t, std::uint64_t>{4, 5}));
    const auto optimal = oracle::antimonotone_report(variant::optimal, 3, 8);
    EXPECT_EQ(optimal.first_order_violation, (std::pair<std::uint64_t, std::uint64_t>{3, 5}));
}
