#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "bipinv/balance.hpp"
#include "bipinv/graph.hpp"
#include "bipinv/integer_matrix.hpp"
#include "bipinv/matching.hpp"

// Brute-force reference implementations and instance generators. Everything
// here is exponential or otherwise independent of the fast paths it checks.
namespace bipinv::oracle {

inline constexpr std::size_t kMatchingBound = 24;
inline constexpr std::size_t kSachsBound = 14;
inline constexpr std::size_t kPathPairBound = 7;
inline constexpr std::size_t kSwitchingBound = 16;

// Any simple graph, not necessarily bipartite.
struct SimpleGraph {
    std::size_t n = 0;
    std::vector<Edge> edges;

    std::vector<std::vector<int>> adjacency() const;
};

SimpleGraph as_simple(const BipartiteGraph& g);
IntegerMatrix adjacency_matrix(const SimpleGraph& g);

// All perfect matchings as sorted edge lists, by backtracking on the smallest
// uncovered vertex. Throws Error(TooLarge) above `bound` vertices.
std::vector<std::vector<Edge>> enumerate_perfect_matchings(const SimpleGraph& g, std::size_t bound = kMatchingBound);

struct SachsSubgraph {
    std::vector<std::vector<int>> cycles;
    std::vector<Edge> k2_components;

    std::size_t edge_count() const;
};

// Spanning subgraphs whose components are single edges and cycles. The null
// graph has exactly one, the empty subgraph.
std::vector<SachsSubgraph> enumerate_sachs_subgraphs(const SimpleGraph& g, std::size_t bound = kSachsBound);

// Sum over Sachs subgraphs S of 2^|C| (-1)^(|C| + |E(S)|).
Integer det_via_sachs(const SimpleGraph& g, std::size_t bound = kSachsBound);

// Bareiss elimination with row pivoting.
Integer det_fraction_free(const IntegerMatrix& A);

// Gauss-Jordan over the rationals. Throws Error(Singular).
std::vector<std::vector<Rational>> exact_inverse(const IntegerMatrix& A);

// (A^-1)_ij as a sum over i-j paths P of (-1)^|E(P)| det(A[G - V(P)]) / det(A),
// and det(A_ii) / det(A) on the diagonal, all determinants via Sachs
// subgraphs. Throws Error(Singular) or Error(TooLarge).
Rational inverse_entry_via_paths_sachs(const SimpleGraph& g, int i, int j, std::size_t bound = kSachsBound);

// Every simple i-j path whose edges alternate matching / non-matching and
// start and end on matching edges, by exhaustive DFS. Uses only m.mate.
std::vector<std::vector<int>> enumerate_alternating_path_list(const BipartiteGraph& g, const Matching& m, int i, int j,
                                                              std::size_t pair_bound = kPathPairBound);
PathProfile enumerate_alternating_paths(const BipartiteGraph& g, const Matching& m, int i, int j,
                                        std::size_t pair_bound = kPathPairBound);

// Tries all 2^n switchings. A found switching is returned; unbalanced
// verdicts carry no cycle.
BalanceVerdict balance_exhaustive(const WeightedGraph& w, std::size_t bound = kSwitchingBound);

// G/M on pair indices; parallel edges kept.
Multigraph quotient_by_matching(const BipartiteGraph& g, const Matching& m);

// Throws Error(NotUnitTriangular) unless both factors are unit lower
// triangular 0/1 matrices.
IntegerMatrix kronecker_product(const IntegerMatrix& a, const IntegerMatrix& b);
BipartiteGraph kronecker_graph(const IntegerMatrix& a, const IntegerMatrix& b);

// All generators draw from std::mt19937_64 seeded with `seed`.
// A Bernoulli(p) draw is (engine() >> 11) * 2^-53 < p; a uniform index below
// k is engine() % k.

// Unit lower-triangular 0/1 matrix with strictly-lower entries drawn in
// row-major order, assembled with row i as vertex 2i and column j as 2j+1.
BipartiteGraph random_unique_pm_graph(std::size_t n_pairs, double p, std::uint64_t seed);

// Start from the edge 0-1; for i = 1..n_pairs-1 attach vertex 2i to a uniform
// existing vertex and hang the matched pendant 2i+1 from it.
BipartiteGraph random_matched_tree(std::size_t n_pairs, std::uint64_t seed);

// G(n, p) with edge draws in (u, v) lexicographic order.
SimpleGraph random_simple_graph(std::size_t n, double p, std::uint64_t seed);

// Fisher-Yates from the back: swap i with engine() % (i + 1).
std::vector<int> random_permutation(std::size_t n, std::uint64_t seed);

// {"generator": "unique_pm" | "matched_tree", "parameters": {...}, "seed": s}
struct CorpusRecord {
    std::string generator;
    std::size_t pairs = 1;
    double p = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t relabel_seed = 0;  // 0 keeps generator labels
};

BipartiteGraph regenerate(const CorpusRecord& record);
nlohmann::json to_json(const std::vector<CorpusRecord>& manifest);
std::vector<CorpusRecord> manifest_from_json(const nlohmann::json& j);

}  // namespace bipinv::oracle
