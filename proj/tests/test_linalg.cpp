#include <gtest/gtest.h>

#include <random>

#include "bipinv/error.hpp"
#include "bipinv/linalg.hpp"
#include "bipinv/oracle.hpp"

using namespace bipinv;

namespace {

BipartiteGraph fixture(const std::string& name) { return read_graph(std::string(BIPINV_FIXTURES) + "/" + name); }

const IntegerMatrix kW8L{{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 1, 1, 0}, {0, 1, 1, 1}};
const IntegerMatrix kW8Inverse{{1, 0, 0, 0}, {-1, 1, 0, 0}, {0, -1, 1, 0}, {1, 0, -1, 1}};

}  // namespace

TEST(Triangularize, W8) {
    auto g = fixture("w8.edges");
    auto form = triangularize(g, unique_perfect_matching(g));
    EXPECT_EQ(form.L, kW8L);
    EXPECT_EQ(form.row_vertices, (std::vector<int>{0, 2, 4, 6}));
    EXPECT_EQ(form.col_vertices, (std::vector<int>{1, 3, 5, 7}));
    EXPECT_EQ(form.pair_order, (std::vector<int>{0, 1, 2, 3}));
}

TEST(Triangularize, P4AndK2) {
    auto p4 = fixture("p4.edges");
    EXPECT_EQ(triangularize(p4, unique_perfect_matching(p4)).L, (IntegerMatrix{{1, 0}, {1, 1}}));
    auto k2 = fixture("k2.edges");
    EXPECT_EQ(triangularize(k2, unique_perfect_matching(k2)).L, IntegerMatrix::identity(1));
}

TEST(Triangularize, RelabelledInputStillTriangular) {
    auto g = relabel(fixture("w8.edges"), std::vector<int>{5, 2, 7, 0, 3, 6, 1, 4});
    auto m = unique_perfect_matching(g);
    auto form = triangularize(g, m);
    EXPECT_TRUE(form.L.is_unit_lower_triangular());
    for (std::size_t i = 0; i < form.row_vertices.size(); ++i) {
        EXPECT_EQ(m.mate[form.row_vertices[i]], form.col_vertices[i]);
    }
}

TEST(Triangularize, ForeignMatchingRejected) {
    auto g = fixture("w8.edges");
    auto m = unique_perfect_matching(g);
    IntegerMatrix full(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) full(i, j) = 1;
    std::vector<int> rows{0, 2, 4, 6}, cols{1, 3, 5, 7};
    EXPECT_THROW(permute_to_triangular(full, m, rows, cols), Error);
}

TEST(Invert, W8Fixture) {
    EXPECT_EQ(invert_unit_lower_triangular(kW8L), kW8Inverse);
}

TEST(Invert, RejectsNonUnitTriangular) {
    EXPECT_THROW(invert_unit_lower_triangular(IntegerMatrix{{2}}), Error);
    EXPECT_THROW(invert_unit_lower_triangular(IntegerMatrix{{1, 1}, {0, 1}}), Error);
    EXPECT_THROW(invert_unit_lower_triangular(IntegerMatrix(2, 3)), Error);
}

TEST(Invert, LongChainHasAlternatingSigns) {
    // bidiagonal ones: the inverse is (-1)^(i-j) below the diagonal
    const std::size_t n = 40;
    IntegerMatrix L = IntegerMatrix::identity(n);
    for (std::size_t i = 1; i < n; ++i) L(i, i - 1) = 1;
    auto X = invert_unit_lower_triangular(L);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) EXPECT_EQ(X(i, j), (i - j) % 2 ? -1 : 1);
}

TEST(Invert, FullLowerTriangleGrowsPastMachineWords) {
    // all-ones lower triangle minus identity twice over: entries blow up, checked by product
    const std::size_t n = 80;
    IntegerMatrix L(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        L(i, i) = 1;
        for (std::size_t j = 0; j < i; ++j) L(i, j) = 1;
    }
    auto X = invert_unit_lower_triangular(L);
    EXPECT_EQ(L * X, IntegerMatrix::identity(n));
}

TEST(Determinant, SignOfMatchingSize) {
    auto w8 = fixture("w8.edges");
    EXPECT_EQ(det_adjacency(w8, unique_perfect_matching(w8)), 1);
    auto k2 = fixture("k2.edges");
    EXPECT_EQ(det_adjacency(k2, unique_perfect_matching(k2)), -1);
    EXPECT_EQ(oracle::det_fraction_free(adjacency_matrix(k2)), -1);
}

TEST(AssembledInverse, IsTheInverseOfTheAdjacency) {
    auto A = assemble_adjacency(kW8L);
    auto Ai = assemble_inverse_adjacency(kW8Inverse);
    EXPECT_EQ(A * Ai, IntegerMatrix::identity(8));
    EXPECT_TRUE(Ai.is_symmetric());
}

TEST(InvertBiadjacency, ScrambledW8) {
    std::vector<std::size_t> rp{2, 0, 3, 1}, cp{3, 1, 0, 2};
    IntegerMatrix B(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) B(i, j) = kW8L(rp[i], cp[j]);
    auto Y = invert_biadjacency(B);
    EXPECT_EQ(B * Y, IntegerMatrix::identity(4));
    EXPECT_EQ(Y * B, IntegerMatrix::identity(4));
}

TEST(InvertBiadjacency, NotUniqueOrNotSquare) {
    try {
        invert_biadjacency(IntegerMatrix{{1, 1}, {1, 1}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotUnique);
    }
    EXPECT_THROW(invert_biadjacency(IntegerMatrix(2, 3)), Error);
}

TEST(InvertBiadjacency, AgreesWithRationalInverse) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        auto g = oracle::random_unique_pm_graph(6, 0.5, seed);
        auto m = unique_perfect_matching(g);
        auto form = triangularize(g, m);
        auto X = invert_unit_lower_triangular(form.L);
        auto Q = oracle::exact_inverse(form.L);
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(Rational(X(i, j)), Q[i][j]) << "seed " << seed;
    }
}
