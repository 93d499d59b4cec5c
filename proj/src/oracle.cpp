#include "bipinv/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "bipinv/error.hpp"

namespace bipinv::oracle {
namespace {

void require_at_most(std::size_t n, std::size_t bound, const char* what) {
    if (n > bound) {
        throw Error(ErrorCode::TooLarge, std::string(what) + ": " + std::to_string(n) + " vertices exceeds bound " +
                                             std::to_string(bound));
    }
}

bool bernoulli(std::mt19937_64& engine, double p) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53 < p;
}

void require_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::PreconditionViolated, "density must lie in [0, 1]");
}

// Accumulates 2^|C| (-1)^(|C| + |E(S)|) over Sachs subgraphs; optionally
// records them.
class SachsWalker {
public:
    SachsWalker(const SimpleGraph& g, std::vector<SachsSubgraph>* sink)
        : adj_(g.adjacency()), covered_(g.n, 0), sink_(sink) {}

    Integer run() {
        total_ = 0;
        recurse();
        return total_;
    }

private:
    void recurse() {
        int v = -1;
        for (std::size_t x = 0; x < covered_.size(); ++x)
            if (!covered_[x]) {
                v = static_cast<int>(x);
                break;
            }
        if (v == -1) {
            const std::size_t c = current_.cycles.size();
            Integer term = Integer(1) << c;  // mpz shift
            if ((c + current_.edge_count()) % 2 == 1) term = -term;
            total_ += term;
            if (sink_) sink_->push_back(current_);
            return;
        }
        covered_[v] = 1;
        for (int u : adj_[v]) {
            if (covered_[u]) continue;
            covered_[u] = 1;
            current_.k2_components.push_back(make_edge(v, u));
            recurse();
            current_.k2_components.pop_back();
            covered_[u] = 0;
        }
        // Cycles through v on uncovered vertices, each found once: first
        // neighbour smaller than last.
        std::vector<int> path{v};
        extend_cycle(path);
        covered_[v] = 0;
    }

    void extend_cycle(std::vector<int>& path) {
        const int tail = path.back();
        for (int u : adj_[tail]) {
            if (covered_[u]) continue;
            path.push_back(u);
            covered_[u] = 1;
            if (path.size() >= 3 && path[1] < u &&
                std::binary_search(adj_[path[0]].begin(), adj_[path[0]].end(), u)) {
                current_.cycles.push_back(path);
                recurse();
                current_.cycles.pop_back();
            }
            extend_cycle(path);
            covered_[u] = 0;
            path.pop_back();
        }
    }

    std::vector<std::vector<int>> adj_;
    std::vector<char> covered_;
    std::vector<SachsSubgraph>* sink_;
    SachsSubgraph current_;
    Integer total_;
};

SimpleGraph induced_without(const SimpleGraph& g, const std::vector<char>& drop) {
    std::vector<int> index(g.n, -1);
    SimpleGraph h;
    for (std::size_t v = 0; v < g.n; ++v)
        if (!drop[v]) index[v] = static_cast<int>(h.n++);
    for (const auto& e : g.edges)
        if (!drop[e.u] && !drop[e.v]) h.edges.push_back(make_edge(index[e.u], index[e.v]));
    return h;
}

}  // namespace

std::vector<std::vector<int>> SimpleGraph::adjacency() const {
    std::vector<std::vector<int>> adj(n);
    for (const auto& e : edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());
    return adj;
}

SimpleGraph as_simple(const BipartiteGraph& g) { return {g.vertex_count(), g.edges()}; }

IntegerMatrix adjacency_matrix(const SimpleGraph& g) {
    IntegerMatrix A(g.n, g.n);
    for (const auto& e : g.edges) A(e.u, e.v) = A(e.v, e.u) = 1;
    return A;
}

std::vector<std::vector<Edge>> enumerate_perfect_matchings(const SimpleGraph& g, std::size_t bound) {
    require_at_most(g.n, bound, "perfect matching enumeration");
    const auto adj = g.adjacency();
    std::vector<char> covered(g.n, 0);
    std::vector<Edge> current;
    std::vector<std::vector<Edge>> out;
    auto recurse = [&](auto&& self) -> void {
        int v = -1;
        for (std::size_t x = 0; x < g.n; ++x)
            if (!covered[x]) {
                v = static_cast<int>(x);
                break;
            }
        if (v == -1) {
            out.push_back(current);
            return;
        }
        covered[v] = 1;
        for (int u : adj[v]) {
            if (covered[u]) continue;
            covered[u] = 1;
            current.push_back(make_edge(v, u));
            self(self);
            current.pop_back();
            covered[u] = 0;
        }
        covered[v] = 0;
    };
    recurse(recurse);
    return out;
}

std::size_t SachsSubgraph::edge_count() const {
    std::size_t count = k2_components.size();
    for (const auto& c : cycles) count += c.size();
    return count;
}

std::vector<SachsSubgraph> enumerate_sachs_subgraphs(const SimpleGraph& g, std::size_t bound) {
    require_at_most(g.n, bound, "Sachs subgraph enumeration");
    std::vector<SachsSubgraph> out;
    SachsWalker(g, &out).run();
    return out;
}

Integer det_via_sachs(const SimpleGraph& g, std::size_t bound) {
    require_at_most(g.n, bound, "Sachs determinant");
    return SachsWalker(g, nullptr).run();
}

Integer det_fraction_free(const IntegerMatrix& input) {
    if (!input.is_square()) throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
    IntegerMatrix a = input;
    const std::size_t n = a.rows();
    Integer previous = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && sgn(a(pivot, k)) == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / previous;
            }
            a(i, k) = 0;
        }
        previous = a(k, k);
    }
    return n == 0 ? Integer(1) : Integer(sign * a(n - 1, n - 1));
}

std::vector<std::vector<Rational>> exact_inverse(const IntegerMatrix& A) {
    if (!A.is_square()) throw Error(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
    const std::size_t n = A.rows();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(A(i, j));
        m[i][n + i] = 1;
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && sgn(m[pivot][k]) == 0) ++pivot;
        if (pivot == n) throw Error(ErrorCode::Singular, "matrix is singular");
        std::swap(m[k], m[pivot]);
        const Rational inv = 1 / m[k][k];
        for (auto& x : m[k]) x *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || sgn(m[i][k]) == 0) continue;
            const Rational f = m[i][k];
            for (std::size_t j = 0; j < 2 * n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    std::vector<std::vector<Rational>> inverse(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inverse[i][j] = m[i][n + j];
    return inverse;
}

Rational inverse_entry_via_paths_sachs(const SimpleGraph& g, int i, int j, std::size_t bound) {
    require_at_most(g.n, bound, "path/Sachs inverse");
    const Integer det = det_via_sachs(g, bound);
    if (det == 0) throw Error(ErrorCode::Singular, "graph adjacency matrix is singular");

    std::vector<char> drop(g.n, 0);
    if (i == j) {
        drop[i] = 1;
        Rational entry(det_via_sachs(induced_without(g, drop), bound), det);
        entry.canonicalize();
        return entry;
    }

    const auto adj = g.adjacency();
    Integer numerator = 0;
    std::vector<int> path{i};
    drop[i] = 1;
    auto walk = [&](auto&& self) -> void {
        const int v = path.back();
        if (v == j) {
            Integer term = det_via_sachs(induced_without(g, drop), bound);
            if ((path.size() - 1) % 2 == 1) term = -term;
            numerator += term;
            return;
        }
        for (int u : adj[v]) {
            if (drop[u]) continue;
            drop[u] = 1;
            path.push_back(u);
            self(self);
            path.pop_back();
            drop[u] = 0;
        }
    };
    walk(walk);
    Rational entry(numerator, det);
    entry.canonicalize();
    return entry;
}

std::vector<std::vector<int>> enumerate_alternating_path_list(const BipartiteGraph& g, const Matching& m, int i, int j,
                                                              std::size_t pair_bound) {
    require_at_most(g.vertex_count(), 2 * pair_bound, "alternating path enumeration");
    std::vector<std::vector<int>> out;
    if (i == j) return out;
    std::vector<char> used(g.vertex_count(), 0);
    std::vector<int> path{i};
    used[i] = 1;
    auto is_alternating = [&](const std::vector<int>& p) {
        if (p.size() % 2 != 0) return false;
        for (std::size_t k = 0; k + 1 < p.size(); ++k) {
            const bool matched = m.mate[p[k]] == p[k + 1];
            if (matched != (k % 2 == 0)) return false;
        }
        return true;
    };
    // Only prefixes that can still alternate are extended.
    auto walk = [&](auto&& self) -> void {
        const int v = path.back();
        if (v == j) {
            if (is_alternating(path)) out.push_back(path);
            return;
        }
        const bool need_matching = path.size() % 2 == 1;
        for (int u : g.neighbors(v)) {
            if (used[u] || (m.mate[v] == u) != need_matching) continue;
            used[u] = 1;
            path.push_back(u);
            self(self);
            path.pop_back();
            used[u] = 0;
        }
    };
    walk(walk);
    return out;
}

PathProfile enumerate_alternating_paths(const BipartiteGraph& g, const Matching& m, int i, int j,
                                        std::size_t pair_bound) {
    if (i == j) throw Error(ErrorCode::SameVertex, "alternating paths need distinct ends", {i});
    PathProfile profile{0, 0, 0};
    for (const auto& path : enumerate_alternating_path_list(g, m, i, j, pair_bound)) {
        const std::size_t non_matching = (path.size() - 1) / 2;
        ++profile.tau;
        if (non_matching % 2 == 1) {
            ++profile.tau_o;
        } else {
            ++profile.tau_e;
        }
    }
    return profile;
}

BalanceVerdict balance_exhaustive(const WeightedGraph& w, std::size_t bound) {
    require_at_most(w.vertex_count(), bound, "exhaustive switching search");
    const std::size_t n = w.vertex_count();
    std::vector<std::uint32_t> masks;
    std::vector<int> negative;
    for (const auto& e : w.edges()) {
        masks.push_back((std::uint32_t{1} << e.u) | (std::uint32_t{1} << e.v));
        negative.push_back(sgn(e.w) < 0);
    }
    BalanceVerdict verdict;
    for (std::uint64_t flips = 0; flips < (std::uint64_t{1} << n); ++flips) {
        bool ok = true;
        for (std::size_t e = 0; e < masks.size() && ok; ++e) {
            // The edge changes sign iff exactly one endpoint is flipped.
            const int parity = std::popcount(static_cast<std::uint32_t>(flips) & masks[e]) & 1;
            ok = (parity ^ negative[e]) == 0;
        }
        if (ok) {
            verdict.balanced = true;
            verdict.switching.signs.resize(n);
            for (std::size_t v = 0; v < n; ++v) verdict.switching.signs[v] = (flips >> v) & 1 ? -1 : 1;
            return verdict;
        }
    }
    return verdict;
}

Multigraph quotient_by_matching(const BipartiteGraph& g, const Matching& m) {
    Multigraph q;
    q.n = m.size();
    for (const auto& e : g.edges()) {
        if (m.contains(e.u, e.v)) continue;
        q.edges.push_back(make_edge(m.pair_index[e.u], m.pair_index[e.v]));
    }
    std::sort(q.edges.begin(), q.edges.end());
    return q;
}

IntegerMatrix kronecker_product(const IntegerMatrix& a, const IntegerMatrix& b) {
    for (const auto* f : {&a, &b}) {
        if (!f->is_unit_lower_triangular() || !f->is_zero_one()) {
            throw Error(ErrorCode::NotUnitTriangular, "Kronecker factors must be unit lower triangular 0/1");
        }
    }
    const std::size_t p = a.rows(), q = b.rows();
    IntegerMatrix k(p * q, p * q);
    for (std::size_t i1 = 0; i1 < p; ++i1)
        for (std::size_t j1 = 0; j1 <= i1; ++j1) {
            if (sgn(a(i1, j1)) == 0) continue;
            for (std::size_t i2 = 0; i2 < q; ++i2)
                for (std::size_t j2 = 0; j2 <= i2; ++j2)
                    if (sgn(b(i2, j2)) != 0) k(i1 * q + i2, j1 * q + j2) = 1;
        }
    return k;
}

BipartiteGraph kronecker_graph(const IntegerMatrix& a, const IntegerMatrix& b) {
    return graph_from_biadjacency(kronecker_product(a, b));
}

BipartiteGraph random_unique_pm_graph(std::size_t n_pairs, double p, std::uint64_t seed) {
    require_probability(p);
    std::mt19937_64 engine(seed);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n_pairs; ++i) {
        for (std::size_t j = 0; j < i; ++j)
            if (bernoulli(engine, p)) edges.push_back(make_edge(static_cast<int>(2 * i), static_cast<int>(2 * j + 1)));
        edges.push_back(make_edge(static_cast<int>(2 * i), static_cast<int>(2 * i + 1)));
    }
    BipartiteGraph g(2 * n_pairs, std::move(edges));
    unique_perfect_matching(g);
    return g;
}

BipartiteGraph random_matched_tree(std::size_t n_pairs, std::uint64_t seed) {
    if (n_pairs == 0) throw Error(ErrorCode::PreconditionViolated, "a matched tree needs at least one pair");
    std::mt19937_64 engine(seed);
    std::vector<Edge> edges{{0, 1}};
    for (std::size_t i = 1; i < n_pairs; ++i) {
        const auto anchor = static_cast<int>(engine() % (2 * i));
        const auto x = static_cast<int>(2 * i), y = static_cast<int>(2 * i + 1);
        edges.push_back(make_edge(anchor, x));
        edges.push_back(make_edge(x, y));
    }
    BipartiteGraph g(2 * n_pairs, std::move(edges));
    if (g.edge_count() + 1 != g.vertex_count()) throw Error(ErrorCode::Internal, "tree generator lost an edge");
    unique_perfect_matching(g);
    return g;
}

SimpleGraph random_simple_graph(std::size_t n, double p, std::uint64_t seed) {
    require_probability(p);
    std::mt19937_64 engine(seed);
    SimpleGraph g{n, {}};
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (bernoulli(engine, p)) g.edges.push_back({static_cast<int>(u), static_cast<int>(v)});
    return g;
}

std::vector<int> random_permutation(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 engine(seed);
    std::vector<int> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
    for (std::size_t i = n; i-- > 1;) std::swap(perm[i], perm[engine() % (i + 1)]);
    return perm;
}

BipartiteGraph regenerate(const CorpusRecord& record) {
    BipartiteGraph g;
    if (record.generator == "unique_pm") {
        g = random_unique_pm_graph(record.pairs, record.p, record.seed);
    } else if (record.generator == "matched_tree") {
        g = random_matched_tree(record.pairs, record.seed);
    } else {
        throw Error(ErrorCode::Syntax, "unknown generator '" + record.generator + "'");
    }
    if (record.relabel_seed != 0) g = relabel(g, random_permutation(g.vertex_count(), record.relabel_seed));
    return g;
}

nlohmann::json to_json(const std::vector<CorpusRecord>& manifest) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : manifest) {
        nlohmann::json parameters = {{"pairs", r.pairs}};
        if (r.generator == "unique_pm") parameters["p"] = r.p;
        if (r.relabel_seed != 0) parameters["relabel_seed"] = r.relabel_seed;
        out.push_back({{"generator", r.generator}, {"parameters", parameters}, {"seed", r.seed}});
    }
    return out;
}

std::vector<CorpusRecord> manifest_from_json(const nlohmann::json& j) {
    try {
        std::vector<CorpusRecord> manifest;
        for (const auto& item : j) {
            CorpusRecord r;
            r.generator = item.at("generator").get<std::string>();
            const auto& parameters = item.at("parameters");
            r.pairs = parameters.at("pairs").get<std::size_t>();
            r.p = parameters.value("p", 0.0);
            r.relabel_seed = parameters.value("relabel_seed", std::uint64_t{0});
            r.seed = item.at("seed").get<std::uint64_t>();
            manifest.push_back(std::move(r));
        }
        return manifest;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Syntax, std::string("corpus manifest: ") + e.what());
    }
}

}  // namespace bipinv::oracle
