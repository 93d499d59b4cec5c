#include "bipinv/linalg.hpp"

#include <algorithm>
#include <unordered_map>

#include "bipinv/error.hpp"

namespace bipinv {
namespace {

struct SparseRows {
    // Strictly-lower nonzeros of each row: (column, value).
    std::vector<std::vector<std::pair<std::size_t, const Integer*>>> below;
};

SparseRows strictly_lower(const IntegerMatrix& L) {
    SparseRows rows;
    rows.below.resize(L.rows());
    for (std::size_t i = 0; i < L.rows(); ++i)
        for (std::size_t k = 0; k < i; ++k)
            if (sgn(L(i, k)) != 0) rows.below[i].emplace_back(k, &L(i, k));
    return rows;
}

}  // namespace

TriangularForm permute_to_triangular(const IntegerMatrix& B, const Matching& m, std::span<const int> row_vertices,
                                     std::span<const int> col_vertices) {
    const std::size_t k = B.rows();
    if (!B.is_square() || row_vertices.size() != k || col_vertices.size() != k) {
        throw Error(ErrorCode::NotTriangularizable, "bipartite adjacency matrix is not square or labels mismatch");
    }
    if (m.elimination_order.size() != k) {
        throw Error(ErrorCode::NotTriangularizable, "elimination order does not have one step per row");
    }
    std::unordered_map<int, std::size_t> row_of, col_of;
    for (std::size_t i = 0; i < k; ++i) row_of.emplace(row_vertices[i], i);
    for (std::size_t j = 0; j < k; ++j) col_of.emplace(col_vertices[j], j);

    std::vector<std::size_t> row_degree(k, 0), col_degree(k, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (sgn(B(i, j)) != 0) ++row_degree[i], ++col_degree[j];
    std::vector<char> row_gone(k, 0), col_gone(k, 0);
    std::vector<std::size_t> mate_col(k, k);

    for (const auto& step : m.elimination_order) {
        auto fail = [&](const std::string& why) {
            throw Error(ErrorCode::NotTriangularizable,
                        "elimination step (" + std::to_string(step.pendant) + "," + std::to_string(step.partner) +
                            "): " + why);
        };
        std::size_t i, j;
        bool pendant_is_row;
        if (auto it = row_of.find(step.pendant); it != row_of.end()) {
            auto jt = col_of.find(step.partner);
            if (jt == col_of.end()) fail("partner is not a column");
            i = it->second, j = jt->second, pendant_is_row = true;
        } else if (auto jt = col_of.find(step.pendant); jt != col_of.end()) {
            auto it2 = row_of.find(step.partner);
            if (it2 == row_of.end()) fail("partner is not a row");
            i = it2->second, j = jt->second, pendant_is_row = false;
        } else {
            fail("pendant is not a labelled row or column");
        }
        if (row_gone[i] || col_gone[j]) fail("vertex already eliminated");
        if (sgn(B(i, j)) == 0) fail("not an edge");
        if ((pendant_is_row ? row_degree[i] : col_degree[j]) != 1) fail("pendant does not have degree 1");
        row_gone[i] = col_gone[j] = 1;
        mate_col[i] = j;
        for (std::size_t x = 0; x < k; ++x) {
            if (!col_gone[x] && sgn(B(i, x)) != 0) --col_degree[x];
            if (!row_gone[x] && sgn(B(x, j)) != 0) --row_degree[x];
        }
    }

    // Pair index = rank of the row vertex id, matching Matching::pairs.
    std::vector<std::size_t> rows_by_id(k);
    for (std::size_t i = 0; i < k; ++i) rows_by_id[i] = i;
    std::sort(rows_by_id.begin(), rows_by_id.end(),
              [&](std::size_t a, std::size_t b) { return row_vertices[a] < row_vertices[b]; });
    std::vector<std::size_t> pair_of_row(k), pair_of_col(k);
    for (std::size_t p = 0; p < k; ++p) {
        pair_of_row[rows_by_id[p]] = p;
        pair_of_col[mate_col[rows_by_id[p]]] = p;
    }
    std::vector<std::pair<int, int>> arcs;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (sgn(B(i, j)) != 0 && mate_col[i] != j)
                arcs.emplace_back(static_cast<int>(pair_of_row[i]), static_cast<int>(pair_of_col[j]));

    TriangularForm form;
    try {
        form.pair_order = Dag(k, std::move(arcs)).canonical_order();
    } catch (const Error& e) {
        throw Error(ErrorCode::NotTriangularizable, std::string("pair digraph is cyclic: ") + e.what(), e.witness());
    }
    form.L = IntegerMatrix(k, k);
    form.row_perm.resize(k);
    form.col_perm.resize(k);
    for (std::size_t pos = 0; pos < k; ++pos) {
        const std::size_t row = rows_by_id[form.pair_order[pos]];
        form.row_perm[pos] = row;
        form.col_perm[pos] = mate_col[row];
        form.row_vertices.push_back(row_vertices[row]);
        form.col_vertices.push_back(col_vertices[mate_col[row]]);
    }
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) form.L(a, b) = B(form.row_perm[a], form.col_perm[b]);
    if (!form.L.is_unit_lower_triangular()) {
        throw Error(ErrorCode::NotTriangularizable, "permuted matrix is not unit lower triangular");
    }
    return form;
}

TriangularForm triangularize(const BipartiteGraph& g, const Matching& m) {
    const IntegerMatrix B = bipartite_adjacency(g, g.R(), g.C());
    return permute_to_triangular(B, m, g.R(), g.C());
}

IntegerMatrix invert_unit_lower_triangular(const IntegerMatrix& L) {
    if (!L.is_unit_lower_triangular()) {
        throw Error(ErrorCode::NotUnitTriangular, "matrix is not unit lower triangular");
    }
    const std::size_t n = L.rows();
    const SparseRows rows = strictly_lower(L);
    IntegerMatrix X(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        X(i, i) = 1;
        for (const auto& [k, value] : rows.below[i]) {
            for (std::size_t j = 0; j <= k; ++j) {
                if (sgn(X(k, j)) != 0) X(i, j) -= *value * X(k, j);
            }
        }
    }
    // L * X == I, row by row over the same sparsity.
    std::vector<Integer> acc(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) acc[j] = X(i, j);
        for (const auto& [k, value] : rows.below[i])
            for (std::size_t j = 0; j <= k; ++j)
                if (sgn(X(k, j)) != 0) acc[j] += *value * X(k, j);
        for (std::size_t j = 0; j <= i; ++j) {
            if (acc[j] != (i == j ? 1 : 0)) {
                throw Error(ErrorCode::Internal, "triangular inverse failed its product check");
            }
        }
    }
    return X;
}

int det_adjacency(const BipartiteGraph&, const Matching& m) { return m.size() % 2 == 0 ? 1 : -1; }

IntegerMatrix assemble_inverse_adjacency(const IntegerMatrix& B_inv) {
    const std::size_t p = B_inv.cols(), q = B_inv.rows();
    IntegerMatrix A(p + q, p + q);
    for (std::size_t z = 0; z < q; ++z) {
        for (std::size_t a = 0; a < p; ++a) {
            A(p + z, a) = B_inv(z, a);
            A(a, p + z) = B_inv(z, a);
        }
    }
    return A;
}

IntegerMatrix invert_biadjacency(const IntegerMatrix& B) {
    const BipartiteGraph g = graph_from_biadjacency(B);
    const Matching m = unique_perfect_matching(g);
    const TriangularForm form = triangularize(g, m);
    const IntegerMatrix X = invert_unit_lower_triangular(form.L);
    const std::size_t k = B.rows();
    IntegerMatrix Y(k, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < k; ++i) Y(form.col_perm[j], form.row_perm[i]) = X(j, i);
    return Y;
}

}  // namespace bipinv
