#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bipinv/graph.hpp"
#include "bipinv/integer_matrix.hpp"

namespace bipinv {

struct EliminationStep {
    int pendant = 0;  // degree 1 in the graph remaining at this step
    int partner = 0;
    friend bool operator==(const EliminationStep&, const EliminationStep&) = default;
};

struct MatchedPair {
    int r = 0;
    int c = 0;
    friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

// A perfect matching together with the pendant-elimination order that proves
// it is the only one. Pairs are indexed by increasing R-vertex id; that index
// is the vertex id of the pair in the Simion-Cao digraph.
struct Matching {
    std::vector<MatchedPair> pairs;
    std::vector<int> mate;        // per vertex
    std::vector<int> pair_index;  // per vertex
    std::vector<EliminationStep> elimination_order;

    std::size_t size() const noexcept { return pairs.size(); }
    bool contains(int a, int b) const { return mate[a] == b; }
};

// Pendant elimination, smallest pendant id first. Throws
// Error(NoPerfectMatching) or NotUniqueError (one perfect matching plus an
// alternating cycle) when elimination stalls.
Matching unique_perfect_matching(const BipartiteGraph& g);

// Re-runs the elimination order on g; true iff every step removes a current
// pendant together with its only neighbour and the graph ends up empty.
bool replay_elimination(const BipartiteGraph& g, const Matching& m);

// Directed graph on 0..k-1.
class Dag {
public:
    Dag() = default;
    Dag(std::size_t k, std::vector<std::pair<int, int>> arcs);

    std::size_t size() const noexcept { return k_; }
    const std::vector<std::pair<int, int>>& arcs() const noexcept { return arcs_; }
    const std::vector<int>& successors(int v) const { return out_[v]; }
    const std::vector<int>& predecessors(int v) const { return in_[v]; }

    // Kahn's algorithm taking the smallest available source first. Throws
    // Error(NotAcyclic) with a directed cycle as witness.
    std::vector<int> topological_order() const;

    // Reverse of topological_order(): every arc points from a later position
    // to an earlier one, so matrices indexed this way are lower triangular.
    std::vector<int> canonical_order() const;

private:
    std::size_t k_ = 0;
    std::vector<std::pair<int, int>> arcs_;
    std::vector<std::vector<int>> out_, in_;
};

// Orient R -> C and contract M: the non-matching edge r_j - c_i becomes the
// arc j -> i. Throws Error(CycleFound) if the result is cyclic.
Dag build_dag(const BipartiteGraph& g, const Matching& m);

struct PathProfile {
    Integer tau;
    Integer tau_e;
    Integer tau_o;
    friend bool operator==(const PathProfile&, const PathProfile&) = default;
};

struct Subgraph {
    std::vector<int> vertices;
    std::vector<Edge> edges;
    bool empty() const noexcept { return edges.empty(); }
    friend bool operator==(const Subgraph&, const Subgraph&) = default;
};

// M-alternating path statistics through the Simion-Cao digraph. An
// alternating path from r_a to c_z is a directed path z -> ... -> a whose
// length is its number of non-matching edges. Read-only after construction.
class AlternatingPaths {
public:
    AlternatingPaths(const BipartiteGraph& g, const Matching& m);

    const Dag& dag() const noexcept { return dag_; }

    // Throws Error(SameVertex) when i == j.
    PathProfile profile(int i, int j) const;

    // Union of all alternating paths between pairs of `vertices`.
    Subgraph span(std::span<const int> vertices) const;

private:
    std::vector<char> reachable_from(int pair) const;
    std::vector<char> reaching(int pair) const;

    const BipartiteGraph* graph_;
    const Matching* matching_;
    Dag dag_;
    std::vector<int> topo_;
    std::vector<std::size_t> position_;
};

PathProfile tau_counts(const BipartiteGraph& g, const Matching& m, int i, int j);
Subgraph m_span(const BipartiteGraph& g, const Matching& m, std::span<const int> vertices);

struct FlowerCertificate {
    std::vector<int> order;                                // cyclic order of S
    std::map<std::pair<int, int>, PathProfile> profiles;   // every unordered pair, key (min, max)
    std::size_t negative_pairs = 0;                        // pairs with tau_o > tau_e
    Subgraph span;

    bool odd() const noexcept { return negative_pairs % 2 == 1; }
};

struct FlowerCheck {
    std::optional<FlowerCertificate> certificate;
    std::string reason;  // set when not a flower
    explicit operator bool() const noexcept { return certificate.has_value(); }
};

// Builds the graph H on S joining pairs with tau_o != tau_e; S spans a flower
// iff H is one cycle through all of S. Throws Error(SizeTooSmall) for |S| < 3
// and Error(PreconditionViolated) for repeated or out-of-range vertices.
FlowerCheck flower_check(const BipartiteGraph& g, const Matching& m, std::span<const int> vertices);

nlohmann::json to_json(const FlowerCertificate& cert);
FlowerCertificate flower_from_json(const nlohmann::json& j);

// Recomputes every profile and the flower structure; true iff `cert` is an
// odd flower of (g, m) exactly as recorded.
bool validate_odd_flower(const BipartiteGraph& g, const Matching& m, const FlowerCertificate& cert);

}  // namespace bipinv
