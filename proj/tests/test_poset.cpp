#include <gtest/gtest.h>

#include <bit>
#include <fstream>
#include <sstream>

#include "bipinv/error.hpp"
#include "bipinv/linalg.hpp"
#include "bipinv/poset.hpp"

using namespace bipinv;

namespace {

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(BIPINV_FIXTURES) + "/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Integer mu(const Poset& p, const IntegerMatrix& mobius, int a, int b) {
    const auto order = p.linear_extension();
    std::vector<std::size_t> pos(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    return mobius(pos[b], pos[a]);
}

}  // namespace

TEST(PosetTest, ConstructionChecksAxioms) {
    EXPECT_THROW(Poset(2, {0, 0, 0, 1}), Error);        // not reflexive
    EXPECT_THROW(Poset(2, {1, 1, 1, 1}), Error);        // not antisymmetric
    EXPECT_THROW(Poset(3, {1, 1, 0, 0, 1, 1, 0, 0, 1}), Error);  // not transitive
    EXPECT_THROW(Poset::from_relations(2, {{0, 1}, {1, 0}}), Error);
    EXPECT_NO_THROW(Poset(2, {1, 1, 0, 1}));
}

TEST(PosetTest, FromDagSingleVertexAndP4) {
    EXPECT_EQ(poset_from_dag(Dag(1, {})).size(), 1u);
    auto p = poset_from_dag(Dag(2, {{1, 0}}));
    EXPECT_TRUE(p.leq(0, 1));
    EXPECT_FALSE(p.leq(1, 0));
    EXPECT_THROW(poset_from_dag(Dag(2, {{1, 0}, {0, 1}})), Error);
}

TEST(PosetTest, W8ClosureIsAChain) {
    auto g = read_graph(std::string(BIPINV_FIXTURES) + "/w8.edges");
    auto p = poset_from_dag(build_dag(g, unique_perfect_matching(g)));
    EXPECT_EQ(p, chain(4));
}

TEST(Zeta, ChainOfTwo) {
    Dag d(2, {{1, 0}});
    EXPECT_EQ(zeta_at(d, 0), (IntegerMatrix{{1, 0}, {1, 1}}));
    EXPECT_EQ(zeta_at(d, 9), (IntegerMatrix{{1, 0}, {1, 1}}));
}

TEST(Zeta, ThreeChainImpliedEntry) {
    Dag d(3, {{1, 0}, {2, 1}});
    EXPECT_EQ(zeta_at(d, 5), (IntegerMatrix{{1, 0, 0}, {1, 1, 0}, {5, 1, 1}}));
    EXPECT_EQ(zeta_at(d, 1), zeta_matrix(chain(3)));
}

TEST(Zeta, W8AtZeroAndOne) {
    auto g = read_graph(std::string(BIPINV_FIXTURES) + "/w8.edges");
    auto m = unique_perfect_matching(g);
    auto d = build_dag(g, m);
    auto L = triangularize(g, m).L;
    EXPECT_EQ(zeta_at(d, 0), L);
    auto full = L;
    full(3, 0) = 1;
    EXPECT_EQ(zeta_at(d, 1), full);
    EXPECT_EQ(zeta_at(d, 1), zeta_matrix(poset_from_dag(d)));
}

TEST(Mobius, ThreeChainIsBidiagonal) {
    EXPECT_EQ(mobius_matrix(chain(3)), (IntegerMatrix{{1, 0, 0}, {-1, 1, 0}, {0, -1, 1}}));
}

TEST(Mobius, AntichainIsIdentity) { EXPECT_EQ(mobius_matrix(antichain(4)), IntegerMatrix::identity(4)); }

TEST(Mobius, BooleanLatticeInclusionExclusion) {
    auto p = boolean_lattice(3);
    auto mob = mobius_matrix(p);
    EXPECT_EQ(zeta_matrix(p) * mob, IntegerMatrix::identity(8));
    EXPECT_TRUE(satisfies_mobius_recurrence(p, mob));
    EXPECT_EQ(mu(p, mob, 0, 7), -1);
    for (int s = 0; s < 8; ++s)
        for (int t = 0; t < 8; ++t) {
            const Integer expected = (s & ~t) ? 0 : ((std::popcount(unsigned(t)) - std::popcount(unsigned(s))) % 2 ? -1 : 1);
            EXPECT_EQ(mu(p, mob, s, t), expected);
        }
    EXPECT_THROW(boolean_lattice(9), Error);
}

TEST(Mobius, RecurrenceCatchesCorruption) {
    auto p = chain(3);
    auto mob = mobius_matrix(p);
    mob(2, 0) = 1;
    EXPECT_FALSE(satisfies_mobius_recurrence(p, mob));
}

TEST(PosetGraph, TwoChainIsP4) {
    auto g = poset_to_graph(chain(2));
    EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}}));
}

TEST(PosetGraph, AntichainIsMatching) {
    auto g = poset_to_graph(antichain(3));
    EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {2, 3}, {4, 5}}));
}

TEST(PosetGraph, RoundTripAndZetaAgreement) {
    for (auto p : {chain(4), antichain(3), boolean_lattice(2), boolean_lattice(3)}) {
        auto g = poset_to_graph(p);
        auto m = unique_perfect_matching(g);
        EXPECT_EQ(poset_from_dag(build_dag(g, m)), p);
        EXPECT_EQ(triangularize(g, m).L, zeta_matrix(p));
    }
}

TEST(MobiusBalance, BooleanLatticeRankParity) {
    auto p = boolean_lattice(3);
    auto result = mobius_balance(p);
    ASSERT_TRUE(std::holds_alternative<NonnegativeForm>(result));
    const auto& form = std::get<NonnegativeForm>(result);
    EXPECT_TRUE(form.B_plus.is_nonnegative());
    const auto order = p.linear_extension();
    for (std::size_t i = 0; i < order.size(); ++i) {
        EXPECT_EQ(form.D[i], std::popcount(unsigned(order[i])) % 2 ? -1 : 1);
    }
}

TEST(PosetText, ParseAndCovers) {
    auto p = parse_poset(slurp("chain3.poset"));
    EXPECT_EQ(p, chain(3));
    EXPECT_EQ(to_poset_text(p), "3\nle 0 1\nle 1 2\n");
    EXPECT_EQ(parse_poset(to_poset_text(boolean_lattice(3))), boolean_lattice(3));
    EXPECT_THROW(parse_poset("2\nle 0 1\nle 1 0\n"), Error);
    EXPECT_THROW(parse_poset("2\nge 0 1\n"), Error);
    EXPECT_THROW(parse_poset("2\nle 0 2\n"), Error);
}
