#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bipinv/graph.hpp"
#include "bipinv/integer_matrix.hpp"
#include "bipinv/linalg.hpp"
#include "bipinv/matching.hpp"

namespace bipinv {

struct WeightedEdge {
    int u = 0;
    int v = 0;
    Integer w;
    friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

// Simple graph with nonzero integer edge weights. Edges are stored with u < v,
// sorted. Immutable after construction.
class WeightedGraph {
public:
    WeightedGraph() = default;
    // Throws Error(InvalidGraph) on loops, parallel edges, zero weights or
    // out-of-range ids.
    WeightedGraph(std::size_t n, std::vector<WeightedEdge> edges);

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<WeightedEdge>& edges() const noexcept { return edges_; }

    // Incident (neighbour, edge index) pairs, sorted by neighbour.
    std::span<const std::pair<int, std::size_t>> incident(int v) const {
        return {incidence_.data() + offsets_[v], incidence_.data() + offsets_[v + 1]};
    }
    // Sign of w(u, v); 0 when there is no edge.
    int sign(int u, int v) const;
    const Integer* weight(int u, int v) const;

    friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    std::size_t n_ = 0;
    std::vector<WeightedEdge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<std::pair<int, std::size_t>> incidence_;
};

// Weighted edge list: header "n m", then m lines "w u v weight".
WeightedGraph parse_weighted_graph(const std::string& text);
std::string to_weighted_edge_list(const WeightedGraph& g);

// zeta(v) in {-1, +1} for every vertex.
struct SwitchingFunction {
    std::vector<int> signs;

    std::size_t size() const noexcept { return signs.size(); }
    int operator[](std::size_t v) const { return signs[v]; }
    friend bool operator==(const SwitchingFunction&, const SwitchingFunction&) = default;
};

struct BalanceVerdict {
    bool balanced = false;
    SwitchingFunction switching;      // when balanced
    std::vector<int> negative_cycle;  // when unbalanced; consecutive vertices adjacent, closing edge implied
};

// Edge ij of the inverse exists iff (A^-1)_ij != 0, with that weight.
WeightedGraph inverse_graph(const BipartiteGraph& g, const Matching& m);
WeightedGraph inverse_graph(const TriangularForm& form, const IntegerMatrix& L_inv, std::size_t vertex_count);

// w'(ij) = zeta(i) w(ij) zeta(j). Throws Error(MissingVertex) when zeta does
// not cover every vertex with a sign.
WeightedGraph apply_switching(const WeightedGraph& w, const SwitchingFunction& zeta);

// Contracts positive edges and two-colours the quotient along negative ones.
// Balanced switchings give +1 to the smallest vertex of every component.
// Unbalanced verdicts carry a fundamental cycle of a sign-propagating spanning
// forest whose closing edge is violated.
BalanceVerdict is_balanced(const WeightedGraph& w);

// Product of the edge signs around `cycle`; 0 if some edge is missing.
int cycle_sign(const WeightedGraph& w, std::span<const int> cycle);

// Splits a negative cycle along chords until none remain. Throws
// Error(PreconditionViolated) if the starting cycle is not negative.
std::vector<int> chordless_negative_cycle(const WeightedGraph& w, std::vector<int> negative_cycle);
// Runs is_balanced first; Error(PreconditionViolated) when balanced.
std::vector<int> chordless_negative_cycle(const WeightedGraph& w);

std::optional<FlowerCertificate> find_odd_flower(const BipartiteGraph& g, const Matching& m);

// D B^-1 D = B_plus >= 0, with D indexed like the rows of the triangular form.
struct NonnegativeForm {
    IntegerMatrix B_plus;
    std::vector<int> D;
    SwitchingFunction switching;
};

// Everything the end-to-end pipeline computes for one graph.
struct Analysis {
    BipartiteGraph graph;
    Matching matching;
    TriangularForm triangular;
    IntegerMatrix B_inverse;  // inverse of triangular.L
    int det = 0;
    WeightedGraph inverse;
    BalanceVerdict balance;
    std::optional<NonnegativeForm> nonnegative;
    std::optional<FlowerCertificate> flower;
};

// Matching -> triangular form -> inverse -> balance -> certificate. Each
// certificate is re-validated. Propagates NoPerfectMatching / NotUnique.
Analysis analyze(const BipartiteGraph& g);

std::variant<NonnegativeForm, FlowerCertificate> nonnegative_inverse(const BipartiteGraph& g);
// Parses the edge list first, so NotBipartite surfaces here too.
std::variant<NonnegativeForm, FlowerCertificate> nonnegative_inverse(const std::string& edge_list);

nlohmann::json to_json(const BalanceVerdict& verdict);

}  // namespace bipinv
