#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bipinv/graph.hpp"
#include "bipinv/integer_matrix.hpp"
#include "bipinv/matching.hpp"

namespace bipinv {

// L(i, j) = B(row_perm[i], col_perm[j]) is unit lower triangular. Row i and
// column i of L belong to matched pair pair_order[i]; pair_order is the
// canonical order of the Simion-Cao digraph.
struct TriangularForm {
    std::vector<std::size_t> row_perm;
    std::vector<std::size_t> col_perm;
    std::vector<int> pair_order;
    std::vector<int> row_vertices;  // R vertex of each L row
    std::vector<int> col_vertices;  // C vertex of each L column
    IntegerMatrix L;
};

// B has rows labelled by row_vertices and columns by col_vertices (vertex
// ids). Replays m.elimination_order against B, then permutes rows and columns
// into canonical triangular form. Throws Error(NotTriangularizable) when the
// order does not eliminate B.
TriangularForm permute_to_triangular(const IntegerMatrix& B, const Matching& m, std::span<const int> row_vertices,
                                     std::span<const int> col_vertices);

// Same, with B = bipartite_adjacency(g, R sorted, C sorted).
TriangularForm triangularize(const BipartiteGraph& g, const Matching& m);

// Forward substitution; the product with L is checked against I before
// returning. Throws Error(NotUnitTriangular).
IntegerMatrix invert_unit_lower_triangular(const IntegerMatrix& L);

// (-1)^|M|
int det_adjacency(const BipartiteGraph& g, const Matching& m);

// [[0, B_inv^T], [B_inv, 0]]: the inverse of assemble_adjacency(B).
IntegerMatrix assemble_inverse_adjacency(const IntegerMatrix& B_inv);

// Inverse of a square 0/1 matrix whose bipartite graph (rows = R, columns = C)
// has a unique perfect matching, in the input's own indexing: the result is
// indexed (column of B, row of B).
IntegerMatrix invert_biadjacency(const IntegerMatrix& B);

}  // namespace bipinv
