#include "bipinv/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <queue>
#include <sstream>

#include "bipinv/error.hpp"

namespace bipinv {
namespace {

// Rotate so the smallest vertex comes first, then orient toward its smaller
// cycle-neighbour.
std::vector<int> normalize_cycle(std::vector<int> cycle) {
    if (cycle.size() < 3) return cycle;
    auto it = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), it, cycle.end());
    if (cycle.back() < cycle[1]) std::reverse(cycle.begin() + 1, cycle.end());
    return cycle;
}

std::vector<Edge> normalized_edges(std::size_t n, std::vector<Edge> edges) {
    for (auto& e : edges) {
        if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(e.u) >= n || static_cast<std::size_t>(e.v) >= n) {
            throw Error(ErrorCode::InvalidGraph,
                        "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " has an id outside 0.." +
                            std::to_string(static_cast<long long>(n) - 1));
        }
        if (e.u == e.v) throw Error(ErrorCode::InvalidGraph, "loop at vertex " + std::to_string(e.u), {e.u});
        e = make_edge(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end());
    auto dup = std::adjacent_find(edges.begin(), edges.end());
    if (dup != edges.end()) {
        throw Error(ErrorCode::InvalidGraph,
                    "parallel edge " + std::to_string(dup->u) + "-" + std::to_string(dup->v), {dup->u, dup->v});
    }
    return edges;
}

struct Csr {
    std::vector<std::size_t> offsets;
    std::vector<int> adjacency;
};

Csr build_csr(std::size_t n, std::span<const Edge> edges) {
    Csr csr;
    csr.offsets.assign(n + 1, 0);
    for (const auto& e : edges) {
        ++csr.offsets[e.u + 1];
        ++csr.offsets[e.v + 1];
    }
    for (std::size_t v = 0; v < n; ++v) csr.offsets[v + 1] += csr.offsets[v];
    csr.adjacency.resize(csr.offsets[n]);
    std::vector<std::size_t> fill(csr.offsets.begin(), csr.offsets.end() - 1);
    for (const auto& e : edges) {
        csr.adjacency[fill[e.u]++] = e.v;
        csr.adjacency[fill[e.v]++] = e.u;
    }
    for (std::size_t v = 0; v < n; ++v) {
        std::sort(csr.adjacency.begin() + csr.offsets[v], csr.adjacency.begin() + csr.offsets[v + 1]);
    }
    return csr;
}

}  // namespace

Bipartition bipartition(std::size_t n, std::span<const Edge> edges) {
    const Csr csr = build_csr(n, edges);
    std::vector<int> color(n, -1), parent(n, -1), depth(n, 0);
    for (std::size_t root = 0; root < n; ++root) {
        if (color[root] != -1) continue;
        color[root] = 0;
        std::queue<int> queue;
        queue.push(static_cast<int>(root));
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop();
            for (std::size_t k = csr.offsets[v]; k < csr.offsets[v + 1]; ++k) {
                const int w = csr.adjacency[k];
                if (color[w] == -1) {
                    color[w] = 1 - color[v];
                    parent[w] = v;
                    depth[w] = depth[v] + 1;
                    queue.push(w);
                } else if (color[w] == color[v]) {
                    std::vector<int> up, down;
                    int a = v, b = w;
                    while (depth[a] > depth[b]) up.push_back(a), a = parent[a];
                    while (depth[b] > depth[a]) down.push_back(b), b = parent[b];
                    while (a != b) {
                        up.push_back(a), a = parent[a];
                        down.push_back(b), b = parent[b];
                    }
                    up.push_back(a);
                    up.insert(up.end(), down.rbegin(), down.rend());
                    auto cycle = normalize_cycle(std::move(up));
                    std::string text;
                    for (int x : cycle) text += (text.empty() ? "" : ",") + std::to_string(x);
                    throw Error(ErrorCode::NotBipartite, "odd cycle (" + text + ")", std::move(cycle));
                }
            }
        }
    }
    Bipartition parts;
    parts.side.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        parts.side[v] = color[v] == 0 ? Side::R : Side::C;
        (color[v] == 0 ? parts.R : parts.C).push_back(static_cast<int>(v));
    }
    return parts;
}

BipartiteGraph::BipartiteGraph(std::size_t n, std::vector<Edge> edges) : n_(n) {
    edges = normalized_edges(n, std::move(edges));
    parts_ = bipartition(n, edges);
    build(std::move(edges));
}

BipartiteGraph::BipartiteGraph(std::size_t n, std::vector<Edge> edges, std::vector<Side> sides) : n_(n) {
    if (sides.size() != n) throw Error(ErrorCode::InvalidGraph, "side assignment does not cover every vertex");
    edges = normalized_edges(n, std::move(edges));
    for (const auto& e : edges) {
        if (sides[e.u] == sides[e.v]) {
            throw Error(ErrorCode::NotBipartite,
                        "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " lies inside one part",
                        {e.u, e.v});
        }
    }
    parts_.side = std::move(sides);
    for (std::size_t v = 0; v < n; ++v) (parts_.side[v] == Side::R ? parts_.R : parts_.C).push_back(static_cast<int>(v));
    build(std::move(edges));
}

void BipartiteGraph::build(std::vector<Edge> edges) {
    edges_ = std::move(edges);
    Csr csr = build_csr(n_, edges_);
    offsets_ = std::move(csr.offsets);
    adjacency_ = std::move(csr.adjacency);
}

bool BipartiteGraph::has_edge(int a, int b) const {
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n_ || static_cast<std::size_t>(b) >= n_) return false;
    auto nb = neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

bool Multigraph::is_bipartite() const {
    std::vector<std::vector<int>> adj(n);
    for (const auto& e : edges) {
        if (e.u == e.v) return false;
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<int> color(n, -1);
    for (std::size_t root = 0; root < n; ++root) {
        if (color[root] != -1) continue;
        color[root] = 0;
        std::queue<int> queue;
        queue.push(static_cast<int>(root));
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop();
            for (int w : adj[v]) {
                if (color[w] == -1) {
                    color[w] = 1 - color[v];
                    queue.push(w);
                } else if (color[w] == color[v]) {
                    return false;
                }
            }
        }
    }
    return true;
}

BipartiteGraph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& what) {
        throw Error(ErrorCode::Syntax, "line " + std::to_string(line_no) + ": " + what);
    };

    bool have_header = false;
    long long n = 0, m = 0;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first)) continue;
        std::string extra;
        if (!have_header) {
            std::istringstream header(line);
            if (!(header >> n >> m) || (header >> extra) || n < 0 || m < 0) fail("expected header 'n m'");
            have_header = true;
            continue;
        }
        if (first != "e") fail("expected 'e u v', got '" + first + "'");
        long long u = 0, v = 0;
        if (!(fields >> u >> v) || (fields >> extra)) fail("expected 'e u v'");
        if (u < 0 || v < 0 || u >= n || v >= n) fail("vertex id out of range 0.." + std::to_string(n - 1));
        edges.push_back({static_cast<int>(u), static_cast<int>(v)});
    }
    if (!have_header) fail("missing header 'n m'");
    if (static_cast<long long>(edges.size()) != m) {
        throw Error(ErrorCode::Syntax,
                    "header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
    }
    return BipartiteGraph(static_cast<std::size_t>(n), std::move(edges));
}

BipartiteGraph read_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_graph(buffer.str());
}

std::string to_edge_list(const BipartiteGraph& g) {
    std::ostringstream out;
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& e : g.edges()) out << "e " << e.u << ' ' << e.v << '\n';
    return out.str();
}

nlohmann::json to_json(const BipartiteGraph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
    return {{"n", g.vertex_count()}, {"edges", edges}, {"R", g.R()}, {"C", g.C()}};
}

BipartiteGraph graph_from_json(const nlohmann::json& j) {
    try {
        const auto n = j.at("n").get<std::size_t>();
        std::vector<Edge> edges;
        for (const auto& e : j.at("edges")) edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
        if (!j.contains("R") && !j.contains("C")) return BipartiteGraph(n, std::move(edges));

        std::vector<int> marks(n, 0);
        std::vector<Side> sides(n, Side::R);
        for (int v : j.at("R").get<std::vector<int>>()) {
            if (v < 0 || static_cast<std::size_t>(v) >= n) throw Error(ErrorCode::InvalidGraph, "R has an id out of range");
            ++marks[v];
        }
        for (int v : j.at("C").get<std::vector<int>>()) {
            if (v < 0 || static_cast<std::size_t>(v) >= n) throw Error(ErrorCode::InvalidGraph, "C has an id out of range");
            ++marks[v];
            sides[v] = Side::C;
        }
        if (std::any_of(marks.begin(), marks.end(), [](int k) { return k != 1; })) {
            throw Error(ErrorCode::InvalidGraph, "R and C must partition the vertex set");
        }
        return BipartiteGraph(n, std::move(edges), std::move(sides));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Syntax, std::string("graph json: ") + e.what());
    }
}

std::string graph_digest(const BipartiteGraph& g) {
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char c : to_edge_list(g)) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int k = 15; k >= 0; --k, hash >>= 4) out[k] = digits[hash & 0xf];
    return out;
}

IntegerMatrix bipartite_adjacency(const BipartiteGraph& g, std::span<const int> row_order,
                                  std::span<const int> col_order) {
    auto check = [&](std::span<const int> order, const std::vector<int>& part, const char* name) {
        std::vector<int> sorted(order.begin(), order.end());
        std::sort(sorted.begin(), sorted.end());
        if (sorted != part) {
            throw Error(ErrorCode::OrderMismatch, std::string(name) + " order is not a permutation of part " + name);
        }
    };
    check(row_order, g.R(), "R");
    check(col_order, g.C(), "C");

    std::vector<int> col_index(g.vertex_count(), -1);
    for (std::size_t j = 0; j < col_order.size(); ++j) col_index[col_order[j]] = static_cast<int>(j);
    IntegerMatrix B(row_order.size(), col_order.size());
    for (std::size_t i = 0; i < row_order.size(); ++i)
        for (int w : g.neighbors(row_order[i])) B(i, col_index[w]) = 1;
    return B;
}

IntegerMatrix assemble_adjacency(const IntegerMatrix& B) {
    const std::size_t p = B.rows(), q = B.cols();
    IntegerMatrix A(p + q, p + q);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < q; ++j) {
            A(i, p + j) = B(i, j);
            A(p + j, i) = B(i, j);
        }
    }
    return A;
}

IntegerMatrix adjacency_matrix(const BipartiteGraph& g) {
    IntegerMatrix A(g.vertex_count(), g.vertex_count());
    for (const auto& e : g.edges()) {
        A(e.u, e.v) = 1;
        A(e.v, e.u) = 1;
    }
    return A;
}

BipartiteGraph graph_from_biadjacency(const IntegerMatrix& B) {
    if (!B.is_square()) throw Error(ErrorCode::DimensionMismatch, "bipartite adjacency matrix must be square");
    if (!B.is_zero_one()) throw Error(ErrorCode::InvalidGraph, "bipartite adjacency matrix must be 0/1");
    const std::size_t k = B.rows();
    std::vector<Edge> edges;
    std::vector<Side> sides(2 * k);
    for (std::size_t i = 0; i < k; ++i) {
        sides[2 * i] = Side::R;
        sides[2 * i + 1] = Side::C;
        for (std::size_t j = 0; j < k; ++j)
            if (B(i, j) == 1) edges.push_back(make_edge(static_cast<int>(2 * i), static_cast<int>(2 * j + 1)));
    }
    return BipartiteGraph(2 * k, std::move(edges), std::move(sides));
}

BipartiteGraph relabel(const BipartiteGraph& g, std::span<const int> perm) {
    if (perm.size() != g.vertex_count()) throw Error(ErrorCode::DimensionMismatch, "relabelling has wrong length");
    std::vector<Edge> edges;
    edges.reserve(g.edge_count());
    for (const auto& e : g.edges()) edges.push_back(make_edge(perm[e.u], perm[e.v]));
    return BipartiteGraph(g.vertex_count(), std::move(edges));
}

}  // namespace bipinv
