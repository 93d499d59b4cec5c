#include "bipinv/balance.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

#include "bipinv/error.hpp"

namespace bipinv {
namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a), b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

std::vector<int> normalize_cycle(std::vector<int> cycle) {
    if (cycle.size() < 3) return cycle;
    std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
    if (cycle.back() < cycle[1]) std::reverse(cycle.begin() + 1, cycle.end());
    return cycle;
}

std::vector<int> violated_fundamental_cycle(const WeightedGraph& w) {
    const std::size_t n = w.vertex_count();
    std::vector<int> sign(n, 0), parent(n, -1), depth(n, 0);
    for (std::size_t root = 0; root < n; ++root) {
        if (sign[root] != 0) continue;
        sign[root] = 1;
        std::queue<int> queue;
        queue.push(static_cast<int>(root));
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop();
            for (const auto& [x, e] : w.incident(v)) {
                if (sign[x] != 0) continue;
                sign[x] = sign[v] * sgn(w.edges()[e].w);
                parent[x] = v;
                depth[x] = depth[v] + 1;
                queue.push(x);
            }
        }
    }
    for (const auto& e : w.edges()) {
        if (sign[e.u] * sgn(e.w) * sign[e.v] > 0) continue;
        std::vector<int> up, down;
        int a = e.u, b = e.v;
        while (depth[a] > depth[b]) up.push_back(a), a = parent[a];
        while (depth[b] > depth[a]) down.push_back(b), b = parent[b];
        while (a != b) {
            up.push_back(a), a = parent[a];
            down.push_back(b), b = parent[b];
        }
        up.push_back(a);
        up.insert(up.end(), down.rbegin(), down.rend());
        return normalize_cycle(std::move(up));
    }
    return {};
}

}  // namespace

WeightedGraph::WeightedGraph(std::size_t n, std::vector<WeightedEdge> edges) : n_(n) {
    for (auto& e : edges) {
        if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(e.u) >= n || static_cast<std::size_t>(e.v) >= n) {
            throw Error(ErrorCode::InvalidGraph, "weighted edge endpoint out of range");
        }
        if (e.u == e.v) throw Error(ErrorCode::InvalidGraph, "loop at vertex " + std::to_string(e.u), {e.u});
        if (sgn(e.w) == 0) throw Error(ErrorCode::InvalidGraph, "zero weight on an edge");
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end(),
              [](const WeightedEdge& a, const WeightedEdge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
    for (std::size_t k = 1; k < edges.size(); ++k) {
        if (edges[k].u == edges[k - 1].u && edges[k].v == edges[k - 1].v) {
            throw Error(ErrorCode::InvalidGraph, "parallel weighted edge", {edges[k].u, edges[k].v});
        }
    }
    edges_ = std::move(edges);

    offsets_.assign(n + 1, 0);
    for (const auto& e : edges_) ++offsets_[e.u + 1], ++offsets_[e.v + 1];
    for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];
    incidence_.resize(offsets_[n]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        incidence_[fill[edges_[k].u]++] = {edges_[k].v, k};
        incidence_[fill[edges_[k].v]++] = {edges_[k].u, k};
    }
    for (std::size_t v = 0; v < n; ++v) std::sort(incidence_.begin() + offsets_[v], incidence_.begin() + offsets_[v + 1]);
}

const Integer* WeightedGraph::weight(int u, int v) const {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n_ || static_cast<std::size_t>(v) >= n_) return nullptr;
    auto inc = incident(u);
    auto it = std::lower_bound(inc.begin(), inc.end(), std::make_pair(v, std::size_t{0}));
    if (it == inc.end() || it->first != v) return nullptr;
    return &edges_[it->second].w;
}

int WeightedGraph::sign(int u, int v) const {
    const Integer* w = weight(u, v);
    return w ? sgn(*w) : 0;
}

WeightedGraph parse_weighted_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& what) {
        throw Error(ErrorCode::Syntax, "line " + std::to_string(line_no) + ": " + what);
    };
    bool have_header = false;
    long long n = 0, m = 0;
    std::vector<WeightedEdge> edges;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string first, extra;
        if (!(fields >> first)) continue;
        if (!have_header) {
            std::istringstream header(line);
            if (!(header >> n >> m) || (header >> extra) || n < 0 || m < 0) fail("expected header 'n m'");
            have_header = true;
            continue;
        }
        if (first != "w") fail("expected 'w u v weight', got '" + first + "'");
        long long u = 0, v = 0;
        std::string weight;
        if (!(fields >> u >> v >> weight) || (fields >> extra)) fail("expected 'w u v weight'");
        if (u < 0 || v < 0 || u >= n || v >= n) fail("vertex id out of range");
        Integer w;
        if (w.set_str(weight, 10) != 0) fail("bad weight '" + weight + "'");
        edges.push_back({static_cast<int>(u), static_cast<int>(v), std::move(w)});
    }
    if (!have_header) fail("missing header 'n m'");
    if (static_cast<long long>(edges.size()) != m) {
        throw Error(ErrorCode::Syntax,
                    "header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
    }
    return WeightedGraph(static_cast<std::size_t>(n), std::move(edges));
}

std::string to_weighted_edge_list(const WeightedGraph& g) {
    std::ostringstream out;
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& e : g.edges()) out << "w " << e.u << ' ' << e.v << ' ' << e.w.get_str() << '\n';
    return out.str();
}

WeightedGraph inverse_graph(const TriangularForm& form, const IntegerMatrix& L_inv, std::size_t vertex_count) {
    std::vector<WeightedEdge> edges;
    const std::size_t k = L_inv.rows();
    for (std::size_t z = 0; z < k; ++z)
        for (std::size_t a = 0; a < k; ++a)
            if (sgn(L_inv(z, a)) != 0) edges.push_back({form.row_vertices[a], form.col_vertices[z], L_inv(z, a)});
    return WeightedGraph(vertex_count, std::move(edges));
}

WeightedGraph inverse_graph(const BipartiteGraph& g, const Matching& m) {
    const TriangularForm form = triangularize(g, m);
    return inverse_graph(form, invert_unit_lower_triangular(form.L), g.vertex_count());
}

WeightedGraph apply_switching(const WeightedGraph& w, const SwitchingFunction& zeta) {
    if (zeta.size() < w.vertex_count()) {
        throw Error(ErrorCode::MissingVertex, "switching function misses vertex " + std::to_string(zeta.size()),
                    {static_cast<int>(zeta.size())});
    }
    for (std::size_t v = 0; v < w.vertex_count(); ++v) {
        if (zeta[v] != 1 && zeta[v] != -1) {
            throw Error(ErrorCode::MissingVertex, "switching value at vertex " + std::to_string(v) + " is not +-1",
                        {static_cast<int>(v)});
        }
    }
    std::vector<WeightedEdge> edges = w.edges();
    for (auto& e : edges)
        if (zeta[e.u] * zeta[e.v] < 0) e.w = -e.w;
    return WeightedGraph(w.vertex_count(), std::move(edges));
}

BalanceVerdict is_balanced(const WeightedGraph& w) {
    const std::size_t n = w.vertex_count();
    DisjointSets sets(n);
    for (const auto& e : w.edges())
        if (sgn(e.w) > 0) sets.unite(e.u, e.v);

    // Quotient graph on class representatives, negative edges only.
    std::vector<std::size_t> offsets(n + 1, 0);
    std::vector<std::pair<std::size_t, std::size_t>> negative;
    bool consistent = true;
    for (const auto& e : w.edges()) {
        if (sgn(e.w) > 0) continue;
        const std::size_t a = sets.find(e.u), b = sets.find(e.v);
        if (a == b) {
            consistent = false;
            break;
        }
        negative.emplace_back(a, b);
        ++offsets[a + 1], ++offsets[b + 1];
    }

    std::vector<int> color(n, 0);
    if (consistent) {
        for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
        std::vector<std::size_t> adjacency(offsets[n]);
        std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
        for (const auto& [a, b] : negative) adjacency[fill[a]++] = b, adjacency[fill[b]++] = a;

        std::vector<std::size_t> queue;
        for (std::size_t v = 0; v < n && consistent; ++v) {
            const std::size_t root = sets.find(v);
            if (color[root] != 0) continue;
            color[root] = 1;
            queue.assign(1, root);
            for (std::size_t head = 0; head < queue.size() && consistent; ++head) {
                const std::size_t x = queue[head];
                for (std::size_t k = offsets[x]; k < offsets[x + 1]; ++k) {
                    const std::size_t y = adjacency[k];
                    if (color[y] == 0) {
                        color[y] = -color[x];
                        queue.push_back(y);
                    } else if (color[y] == color[x]) {
                        consistent = false;
                        break;
                    }
                }
            }
        }
    }

    BalanceVerdict verdict;
    if (consistent) {
        verdict.balanced = true;
        verdict.switching.signs.resize(n);
        for (std::size_t v = 0; v < n; ++v) verdict.switching.signs[v] = color[sets.find(v)];
        return verdict;
    }
    verdict.negative_cycle = violated_fundamental_cycle(w);
    if (verdict.negative_cycle.empty()) throw Error(ErrorCode::Internal, "unbalanced graph without a violated edge");
    return verdict;
}

int cycle_sign(const WeightedGraph& w, std::span<const int> cycle) {
    if (cycle.size() < 2) return 0;
    int product = 1;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        product *= w.sign(cycle[i], cycle[(i + 1) % cycle.size()]);
        if (product == 0) return 0;
    }
    return product;
}

std::vector<int> chordless_negative_cycle(const WeightedGraph& w, std::vector<int> cycle) {
    const std::size_t n = w.vertex_count();
    {
        std::vector<int> sorted = cycle;
        std::sort(sorted.begin(), sorted.end());
        if (cycle.size() < 3 || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
            cycle_sign(w, cycle) >= 0) {
            throw Error(ErrorCode::PreconditionViolated, "starting cycle is not a negative cycle");
        }
    }
    std::vector<int> position(n, -1);
    while (true) {
        const std::size_t k = cycle.size();
        for (std::size_t i = 0; i < k; ++i) position[cycle[i]] = static_cast<int>(i);
        std::size_t chord_i = k, chord_j = k;
        for (std::size_t i = 0; i < k && chord_i == k; ++i) {
            for (const auto& [x, e] : w.incident(cycle[i])) {
                const int j = position[x];
                if (j < 0 || static_cast<std::size_t>(j) <= i + 1) continue;
                if (i == 0 && static_cast<std::size_t>(j) == k - 1) continue;
                chord_i = i, chord_j = static_cast<std::size_t>(j);
                break;
            }
        }
        for (int v : cycle) position[v] = -1;
        if (chord_i == k) break;

        // The chord appears in both halves, so their signs multiply to the
        // sign of the whole cycle: exactly one half is negative.
        std::vector<int> inner(cycle.begin() + chord_i, cycle.begin() + chord_j + 1);
        if (cycle_sign(w, inner) < 0) {
            cycle = std::move(inner);
        } else {
            std::vector<int> outer(cycle.begin() + chord_j, cycle.end());
            outer.insert(outer.end(), cycle.begin(), cycle.begin() + chord_i + 1);
            cycle = std::move(outer);
        }
    }
    return normalize_cycle(std::move(cycle));
}

std::vector<int> chordless_negative_cycle(const WeightedGraph& w) {
    BalanceVerdict verdict = is_balanced(w);
    if (verdict.balanced) throw Error(ErrorCode::PreconditionViolated, "weighted graph is balanced");
    return chordless_negative_cycle(w, std::move(verdict.negative_cycle));
}

std::optional<FlowerCertificate> find_odd_flower(const BipartiteGraph& g, const Matching& m) {
    const WeightedGraph inverse = inverse_graph(g, m);
    BalanceVerdict verdict = is_balanced(inverse);
    if (verdict.balanced) return std::nullopt;
    const auto cycle = chordless_negative_cycle(inverse, std::move(verdict.negative_cycle));
    FlowerCheck check = flower_check(g, m, cycle);
    if (!check || !check.certificate->odd()) {
        throw Error(ErrorCode::Internal, "chordless negative cycle did not yield an odd flower: " + check.reason, cycle);
    }
    return std::move(check.certificate);
}

Analysis analyze(const BipartiteGraph& g) {
    Analysis a;
    a.graph = g;
    a.matching = unique_perfect_matching(g);
    a.triangular = triangularize(g, a.matching);
    a.B_inverse = invert_unit_lower_triangular(a.triangular.L);
    a.det = det_adjacency(g, a.matching);
    a.inverse = inverse_graph(a.triangular, a.B_inverse, g.vertex_count());
    a.balance = is_balanced(a.inverse);

    if (a.balance.balanced) {
        const std::size_t k = a.B_inverse.rows();
        NonnegativeForm form;
        form.switching = a.balance.switching;
        form.D.resize(k);
        for (std::size_t p = 0; p < k; ++p) {
            form.D[p] = form.switching[a.triangular.row_vertices[p]];
            if (form.switching[a.triangular.col_vertices[p]] != form.D[p]) {
                throw Error(ErrorCode::Internal, "switching separates a matched pair");
            }
        }
        form.B_plus = IntegerMatrix(k, k);
        for (std::size_t z = 0; z < k; ++z)
            for (std::size_t x = 0; x < k; ++x)
                form.B_plus(z, x) = form.D[z] * form.D[x] < 0 ? Integer(-a.B_inverse(z, x)) : a.B_inverse(z, x);
        if (!form.B_plus.is_nonnegative()) throw Error(ErrorCode::Internal, "D B^-1 D has a negative entry");
        a.nonnegative = std::move(form);
    } else {
        const auto cycle = chordless_negative_cycle(a.inverse, a.balance.negative_cycle);
        FlowerCheck check = flower_check(g, a.matching, cycle);
        if (!check || !validate_odd_flower(g, a.matching, *check.certificate)) {
            throw Error(ErrorCode::Internal, "chordless negative cycle did not yield an odd flower: " + check.reason,
                        cycle);
        }
        a.flower = std::move(check.certificate);
    }
    return a;
}

std::variant<NonnegativeForm, FlowerCertificate> nonnegative_inverse(const BipartiteGraph& g) {
    Analysis a = analyze(g);
    if (a.nonnegative) return std::move(*a.nonnegative);
    return std::move(*a.flower);
}

std::variant<NonnegativeForm, FlowerCertificate> nonnegative_inverse(const std::string& edge_list) {
    return nonnegative_inverse(parse_graph(edge_list));
}

nlohmann::json to_json(const BalanceVerdict& verdict) {
    if (verdict.balanced) return {{"balanced", true}, {"zeta", verdict.switching.signs}};
    return {{"balanced", false}, {"negative_cycle", verdict.negative_cycle}};
}

}  // namespace bipinv
