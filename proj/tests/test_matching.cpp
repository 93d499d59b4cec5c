#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "bipinv/error.hpp"
#include "bipinv/matching.hpp"

using namespace bipinv;

namespace {

BipartiteGraph fixture(const std::string& name) { return read_graph(std::string(BIPINV_FIXTURES) + "/" + name); }

void expect_alternating_cycle(const BipartiteGraph& g, const std::vector<int>& mate, const std::vector<int>& cycle) {
    ASSERT_GE(cycle.size(), 4u);
    ASSERT_EQ(cycle.size() % 2, 0u);
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const int a = cycle[i], b = cycle[(i + 1) % cycle.size()];
        EXPECT_TRUE(g.has_edge(a, b));
        EXPECT_EQ(mate[a] == b, i % 2 == 1) << "position " << i;
    }
}

}  // namespace

TEST(UniqueMatching, K2) {
    auto m = unique_perfect_matching(fixture("k2.edges"));
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m.pairs[0], (MatchedPair{0, 1}));
    EXPECT_EQ(m.elimination_order, (std::vector<EliminationStep>{{0, 1}}));
}

TEST(UniqueMatching, P4) {
    auto g = fixture("p4.edges");
    auto m = unique_perfect_matching(g);
    EXPECT_EQ(m.pairs, (std::vector<MatchedPair>{{0, 1}, {2, 3}}));
    EXPECT_EQ(m.elimination_order, (std::vector<EliminationStep>{{0, 1}, {2, 3}}));
    EXPECT_TRUE(replay_elimination(g, m));
}

TEST(UniqueMatching, W8EliminationOrder) {
    auto g = fixture("w8.edges");
    auto m = unique_perfect_matching(g);
    EXPECT_EQ(m.elimination_order, (std::vector<EliminationStep>{{0, 1}, {2, 3}, {4, 5}, {6, 7}}));
    EXPECT_EQ(m.pair_index[5], 2);
    EXPECT_TRUE(m.contains(6, 7));
    EXPECT_FALSE(m.contains(6, 5));
}

TEST(UniqueMatching, C4IsNotUnique) {
    auto g = fixture("c4.edges");
    try {
        unique_perfect_matching(g);
        FAIL();
    } catch (const NotUniqueError& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotUnique);
        expect_alternating_cycle(g, e.mate(), e.witness());
    }
}

TEST(UniqueMatching, CycleBehindPendantsStillFound) {
    // a pendant pair hanging off a 6-cycle
    BipartiteGraph g(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {6, 7}, {7, 0}});
    try {
        unique_perfect_matching(g);
        FAIL();
    } catch (const NotUniqueError& e) {
        expect_alternating_cycle(g, e.mate(), e.witness());
    }
}

TEST(UniqueMatching, NoPerfectMatching) {
    BipartiteGraph star(3, {{0, 1}, {0, 2}});
    try {
        unique_perfect_matching(star);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NoPerfectMatching);
    }
    BipartiteGraph unbalanced_sides(4, {{0, 1}, {0, 3}, {2, 1}, {2, 3}}, {Side::R, Side::C, Side::R, Side::C});
    EXPECT_THROW(unique_perfect_matching(BipartiteGraph(5, {{0, 1}, {2, 3}})), Error);
    EXPECT_THROW(unique_perfect_matching(unbalanced_sides), NotUniqueError);
}

TEST(UniqueMatching, ReplayRejectsForgedOrder) {
    auto g = fixture("w8.edges");
    auto m = unique_perfect_matching(g);
    std::swap(m.elimination_order[0], m.elimination_order[3]);
    EXPECT_FALSE(replay_elimination(g, m));
}

TEST(Dag, W8Arcs) {
    auto g = fixture("w8.edges");
    auto m = unique_perfect_matching(g);
    auto d = build_dag(g, m);
    EXPECT_EQ(d.size(), 4u);
    EXPECT_EQ(d.arcs(), (std::vector<std::pair<int, int>>{{1, 0}, {2, 0}, {2, 1}, {3, 1}, {3, 2}}));
    EXPECT_EQ(d.topological_order(), (std::vector<int>{3, 2, 1, 0}));
    EXPECT_EQ(d.canonical_order(), (std::vector<int>{0, 1, 2, 3}));
}

TEST(Dag, P4SingleArc) {
    auto g = fixture("p4.edges");
    auto d = build_dag(g, unique_perfect_matching(g));
    EXPECT_EQ(d.arcs(), (std::vector<std::pair<int, int>>{{1, 0}}));
}

TEST(Dag, CycleIsReported) {
    Dag d(3, {{0, 1}, {1, 2}, {2, 0}});
    try {
        d.topological_order();
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotAcyclic);
        EXPECT_EQ(e.witness().size(), 3u);
    }
}

TEST(Dag, DuplicateArcsCollapse) {
    Dag d(2, {{1, 0}, {1, 0}});
    EXPECT_EQ(d.arcs().size(), 1u);
}

TEST(TauCounts, W8Corners) {
    auto g = fixture("w8.edges");
    auto m = unique_perfect_matching(g);
    EXPECT_EQ(tau_counts(g, m, 0, 7), (PathProfile{3, 2, 1}));
    EXPECT_EQ(tau_counts(g, m, 7, 0), (PathProfile{3, 2, 1}));
    EXPECT_EQ(tau_counts(g, m, 0, 1), (PathProfile{1, 1, 0}));
    EXPECT_EQ(tau_counts(g, m, 0, 3), (PathProfile{1, 0, 1}));
    EXPECT_EQ(tau_counts(g, m, 0, 2), (PathProfile{0, 0, 0}));  // same side
    EXPECT_EQ(tau_counts(g, m, 7, 2), (PathProfile{2, 1, 1}));
    EXPECT_EQ(tau_counts(g, m, 6, 1), (PathProfile{0, 0, 0}));  // no D-path from c1 up to r4
    EXPECT_THROW(tau_counts(g, m, 3, 3), Error);
}

TEST(Span, W8CornersCoverEverything) {
    auto g = fixture("w8.edges");
    auto m = unique_perfect_matching(g);
    std::vector<int> s{0, 7};
    auto span = m_span(g, m, s);
    EXPECT_EQ(span.vertices.size(), 8u);
    EXPECT_EQ(span.edges.size(), 9u);
    std::vector<int> adjacent{0, 1};
    EXPECT_EQ(m_span(g, m, adjacent).edges, (std::vector<Edge>{{0, 1}}));
}

TEST(Flower, W8SixCycleIsOdd) {
    auto g = fixture("w8.edges");
    auto m = unique_perfect_matching(g);
    std::vector<int> s{7, 0, 3, 2, 5, 4};
    auto check = flower_check(g, m, s);
    ASSERT_TRUE(check) << check.reason;
    EXPECT_EQ(check.certificate->order, (std::vector<int>{0, 3, 2, 5, 4, 7}));
    EXPECT_EQ(check.certificate->negative_pairs, 3u);
    EXPECT_TRUE(check.certificate->odd());
    EXPECT_EQ(check.certificate->profiles.size(), 15u);
    EXPECT_TRUE(validate_odd_flower(g, m, *check.certificate));
}

TEST(Flower, JsonRoundTripRevalidates) {
    auto g = fixture("w8.edges");
    auto m = unique_perfect_matching(g);
    std::vector<int> s{0, 3, 2, 5, 4, 7};
    auto cert = *flower_check(g, m, s).certificate;
    auto back = flower_from_json(to_json(cert));
    EXPECT_EQ(back.order, cert.order);
    EXPECT_EQ(back.profiles, cert.profiles);
    EXPECT_TRUE(validate_odd_flower(g, m, back));
    back.negative_pairs = 1;
    EXPECT_FALSE(validate_odd_flower(g, m, back));
}

TEST(Flower, NonFlowersAndBadInput) {
    auto g = fixture("w8.edges");
    auto m = unique_perfect_matching(g);
    std::vector<int> path{0, 1, 2};
    EXPECT_FALSE(flower_check(g, m, path));
    std::vector<int> pair{0, 1};
    EXPECT_THROW(flower_check(g, m, pair), Error);
    std::vector<int> repeated{0, 1, 1};
    EXPECT_THROW(flower_check(g, m, repeated), Error);
}
