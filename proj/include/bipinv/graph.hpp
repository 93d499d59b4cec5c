#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "bipinv/integer_matrix.hpp"

namespace bipinv {

// Undirected edge, stored with u <= v.
struct Edge {
    int u = 0;
    int v = 0;
    auto operator<=>(const Edge&) const = default;
};

inline Edge make_edge(int a, int b) { return a <= b ? Edge{a, b} : Edge{b, a}; }

enum class Side : unsigned char { R = 0, C = 1 };

struct Bipartition {
    std::vector<int> R;
    std::vector<int> C;
    std::vector<Side> side;  // indexed by vertex
};

// Proper two-coloring of a simple graph. In every connected component the
// smallest vertex id goes to R. Throws Error(NotBipartite) whose witness is an
// odd cycle, rotated to start at its smallest vertex.
Bipartition bipartition(std::size_t n, std::span<const Edge> edges);

// Simple bipartite graph on vertices 0..n-1 with a certified bipartition.
// Immutable after construction.
class BipartiteGraph {
public:
    BipartiteGraph() = default;

    // Certifies the bipartition with bipartition().
    BipartiteGraph(std::size_t n, std::vector<Edge> edges);

    // Uses the given sides; every edge must join R to C.
    BipartiteGraph(std::size_t n, std::vector<Edge> edges, std::vector<Side> sides);

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    std::span<const int> neighbors(int v) const {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }
    std::size_t degree(int v) const { return offsets_[v + 1] - offsets_[v]; }
    bool has_edge(int a, int b) const;

    Side side(int v) const { return parts_.side[v]; }
    bool in_R(int v) const { return parts_.side[v] == Side::R; }
    const std::vector<int>& R() const noexcept { return parts_.R; }
    const std::vector<int>& C() const noexcept { return parts_.C; }

    friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_ && a.parts_.side == b.parts_.side;
    }

private:
    void build(std::vector<Edge> edges);

    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<int> adjacency_;
    Bipartition parts_;
};

// Loops and parallel edges allowed; only produced by contractions.
struct Multigraph {
    std::size_t n = 0;
    std::vector<Edge> edges;

    bool is_bipartite() const;
};

// Edge-list text: header "n m", then m lines "e u v"; '#' starts a comment.
BipartiteGraph parse_graph(const std::string& text);
BipartiteGraph read_graph(const std::string& path);
std::string to_edge_list(const BipartiteGraph& g);

// {"n":..,"edges":[[u,v],..],"R":[..],"C":[..]}
nlohmann::json to_json(const BipartiteGraph& g);
BipartiteGraph graph_from_json(const nlohmann::json& j);

// FNV-1a 64-bit digest of the canonical edge list, as 16 hex digits.
std::string graph_digest(const BipartiteGraph& g);

// 0/1 matrix with rows indexed by row_order (a permutation of R) and columns
// by col_order (a permutation of C). Throws Error(OrderMismatch).
IntegerMatrix bipartite_adjacency(const BipartiteGraph& g, std::span<const int> row_order,
                                  std::span<const int> col_order);

// [[0, B], [B^T, 0]]
IntegerMatrix assemble_adjacency(const IntegerMatrix& B);

// Full adjacency matrix in vertex-id order.
IntegerMatrix adjacency_matrix(const BipartiteGraph& g);

// Square 0/1 matrix -> bipartite graph with row i as vertex 2i (in R) and
// column j as vertex 2j+1 (in C).
BipartiteGraph graph_from_biadjacency(const IntegerMatrix& B);

// Renames vertex v to perm[v]; the bipartition is recomputed canonically.
BipartiteGraph relabel(const BipartiteGraph& g, std::span<const int> perm);

}  // namespace bipinv
