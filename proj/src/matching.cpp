#include "bipinv/matching.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>

#include "bipinv/error.hpp"
#include "bipinv/json_util.hpp"

namespace bipinv {
namespace {

std::string join(const std::vector<int>& values) {
    std::string text;
    for (int v : values) text += (text.empty() ? "" : ",") + std::to_string(v);
    return text;
}

// Kuhn's augmenting paths, extending `mate`. Neighbours in increasing order.
bool augment(const BipartiteGraph& g, int r, std::vector<int>& mate, std::vector<char>& seen) {
    for (int c : g.neighbors(r)) {
        if (seen[c]) continue;
        seen[c] = 1;
        if (mate[c] == -1 || augment(g, mate[c], mate, seen)) {
            mate[c] = r;
            mate[r] = c;
            return true;
        }
    }
    return false;
}

Matching assemble(const BipartiteGraph& g, std::vector<int> mate, std::vector<EliminationStep> order) {
    Matching m;
    m.mate = std::move(mate);
    m.elimination_order = std::move(order);
    m.pair_index.assign(g.vertex_count(), -1);
    for (int r : g.R()) {
        const int index = static_cast<int>(m.pairs.size());
        m.pairs.push_back({r, m.mate[r]});
        m.pair_index[r] = index;
        m.pair_index[m.mate[r]] = index;
    }
    return m;
}

}  // namespace

Matching unique_perfect_matching(const BipartiteGraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> degree(n);
    std::vector<char> removed(n, 0);
    std::priority_queue<int, std::vector<int>, std::greater<>> pendants;
    for (std::size_t v = 0; v < n; ++v) {
        degree[v] = g.degree(static_cast<int>(v));
        if (degree[v] == 1) pendants.push(static_cast<int>(v));
    }

    std::vector<int> mate(n, -1);
    std::vector<EliminationStep> order;
    auto remove = [&](int v) {
        removed[v] = 1;
        for (int w : g.neighbors(v)) {
            if (removed[w]) continue;
            if (--degree[w] == 1) pendants.push(w);
        }
    };
    while (!pendants.empty()) {
        const int v = pendants.top();
        pendants.pop();
        if (removed[v] || degree[v] != 1) continue;
        int partner = -1;
        for (int w : g.neighbors(v))
            if (!removed[w]) partner = w;
        mate[v] = partner;
        mate[partner] = v;
        order.push_back({v, partner});
        removed[v] = 1;
        remove(partner);
    }
    if (order.size() * 2 == n) return assemble(g, std::move(mate), std::move(order));

    // Elimination stalled. Forced pairs lie in every perfect matching, so the
    // augmenting search may start from them.
    for (int r : g.R()) {
        if (mate[r] != -1) continue;
        std::vector<char> seen(n, 0);
        augment(g, r, mate, seen);
    }
    const auto matched = std::count_if(mate.begin(), mate.end(), [](int x) { return x != -1; });
    if (static_cast<std::size_t>(matched) != n) {
        throw Error(ErrorCode::NoPerfectMatching, "maximum matching covers " + std::to_string(matched) + " of " +
                                                      std::to_string(n) + " vertices");
    }

    // Every remaining vertex has at least two remaining neighbours; walking
    // non-matching then matching edges from an R vertex must revisit one.
    int start = -1;
    for (int r : g.R())
        if (!removed[r]) {
            start = r;
            break;
        }
    std::vector<int> walk;
    std::vector<int> position(n, -1);
    int r = start;
    while (position[r] == -1) {
        position[r] = static_cast<int>(walk.size());
        walk.push_back(r);
        int next = -1;
        for (int c : g.neighbors(r))
            if (!removed[c] && c != mate[r]) {
                next = c;
                break;
            }
        walk.push_back(next);
        r = mate[next];
    }
    std::vector<int> cycle(walk.begin() + position[r], walk.end());
    const std::string message = "perfect matching is not unique: alternating cycle (" + join(cycle) + ")";
    throw NotUniqueError(message, std::move(cycle), std::move(mate));
}

bool replay_elimination(const BipartiteGraph& g, const Matching& m) {
    const std::size_t n = g.vertex_count();
    if (m.elimination_order.size() * 2 != n || m.mate.size() != n) return false;
    std::vector<char> removed(n, 0);
    std::vector<std::size_t> degree(n);
    for (std::size_t v = 0; v < n; ++v) degree[v] = g.degree(static_cast<int>(v));
    auto remove = [&](int v) {
        removed[v] = 1;
        for (int w : g.neighbors(v))
            if (!removed[w]) --degree[w];
    };
    for (const auto& step : m.elimination_order) {
        const int v = step.pendant, w = step.partner;
        if (v < 0 || w < 0 || static_cast<std::size_t>(v) >= n || static_cast<std::size_t>(w) >= n) return false;
        if (removed[v] || removed[w] || degree[v] != 1 || !g.has_edge(v, w)) return false;
        if (m.mate[v] != w || m.mate[w] != v) return false;
        remove(v);
        remove(w);
    }
    return std::all_of(removed.begin(), removed.end(), [](char x) { return x != 0; });
}

Dag::Dag(std::size_t k, std::vector<std::pair<int, int>> arcs) : k_(k), out_(k), in_(k) {
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    for (const auto& [a, b] : arcs) {
        if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= k || static_cast<std::size_t>(b) >= k) {
            throw Error(ErrorCode::InvalidGraph, "arc endpoint out of range");
        }
        out_[a].push_back(b);
        in_[b].push_back(a);
    }
    arcs_ = std::move(arcs);
}

std::vector<int> Dag::topological_order() const {
    std::vector<std::size_t> indegree(k_);
    std::priority_queue<int, std::vector<int>, std::greater<>> sources;
    for (std::size_t v = 0; v < k_; ++v) {
        indegree[v] = in_[v].size();
        if (indegree[v] == 0) sources.push(static_cast<int>(v));
    }
    std::vector<int> order;
    order.reserve(k_);
    while (!sources.empty()) {
        const int v = sources.top();
        sources.pop();
        order.push_back(v);
        for (int w : out_[v])
            if (--indegree[w] == 0) sources.push(w);
    }
    if (order.size() == k_) return order;

    // Walk backwards through unfinished vertices until one repeats.
    int v = 0;
    while (indegree[v] == 0) ++v;
    std::vector<int> position(k_, -1), walk;
    while (position[v] == -1) {
        position[v] = static_cast<int>(walk.size());
        walk.push_back(v);
        for (int u : in_[v])
            if (indegree[u] != 0) {
                v = u;
                break;
            }
    }
    std::vector<int> cycle(walk.begin() + position[v], walk.end());
    std::reverse(cycle.begin(), cycle.end());
    const std::string message = "directed cycle (" + join(cycle) + ")";
    throw Error(ErrorCode::NotAcyclic, message, std::move(cycle));
}

std::vector<int> Dag::canonical_order() const {
    auto order = topological_order();
    std::reverse(order.begin(), order.end());
    return order;
}

Dag build_dag(const BipartiteGraph& g, const Matching& m) {
    std::vector<std::pair<int, int>> arcs;
    for (const auto& e : g.edges()) {
        if (m.contains(e.u, e.v)) continue;
        const int r = g.in_R(e.u) ? e.u : e.v;
        const int c = g.in_R(e.u) ? e.v : e.u;
        arcs.emplace_back(m.pair_index[r], m.pair_index[c]);
    }
    Dag dag(m.size(), std::move(arcs));
    try {
        dag.topological_order();
    } catch (const Error& e) {
        throw Error(ErrorCode::CycleFound, std::string("contracted digraph is cyclic: ") + e.what(), e.witness());
    }
    return dag;
}

AlternatingPaths::AlternatingPaths(const BipartiteGraph& g, const Matching& m)
    : graph_(&g), matching_(&m), dag_(build_dag(g, m)), topo_(dag_.topological_order()), position_(dag_.size()) {
    for (std::size_t p = 0; p < topo_.size(); ++p) position_[topo_[p]] = p;
}

PathProfile AlternatingPaths::profile(int i, int j) const {
    const auto n = static_cast<int>(graph_->vertex_count());
    if (i < 0 || j < 0 || i >= n || j >= n) throw Error(ErrorCode::PreconditionViolated, "vertex out of range");
    if (i == j) throw Error(ErrorCode::SameVertex, "alternating paths need distinct ends", {i});
    PathProfile result{0, 0, 0};
    if (graph_->side(i) == graph_->side(j)) return result;

    const int r = graph_->in_R(i) ? i : j;
    const int c = graph_->in_R(i) ? j : i;
    const auto target = static_cast<std::size_t>(matching_->pair_index[r]);
    const auto source = static_cast<std::size_t>(matching_->pair_index[c]);
    const std::size_t first = position_[source], last = position_[target];
    if (first > last) return result;

    // count[p] = paths source -> topo_[p]; signed[p] = same, weighted (-1)^length.
    std::vector<Integer> count(last - first + 1), signed_count(last - first + 1);
    count[0] = 1;
    signed_count[0] = 1;
    for (std::size_t p = first; p <= last; ++p) {
        const std::size_t off = p - first;
        if (sgn(count[off]) == 0) continue;
        for (int w : dag_.successors(topo_[p])) {
            const std::size_t q = position_[w];
            if (q > last) continue;
            count[q - first] += count[off];
            signed_count[q - first] -= signed_count[off];
        }
    }
    result.tau = count.back();
    result.tau_e = (count.back() + signed_count.back()) / 2;
    result.tau_o = (count.back() - signed_count.back()) / 2;
    return result;
}

std::vector<char> AlternatingPaths::reachable_from(int pair) const {
    std::vector<char> mark(dag_.size(), 0);
    std::vector<int> stack{pair};
    mark[pair] = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : dag_.successors(v))
            if (!mark[w]) mark[w] = 1, stack.push_back(w);
    }
    return mark;
}

std::vector<char> AlternatingPaths::reaching(int pair) const {
    std::vector<char> mark(dag_.size(), 0);
    std::vector<int> stack{pair};
    mark[pair] = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : dag_.predecessors(v))
            if (!mark[w]) mark[w] = 1, stack.push_back(w);
    }
    return mark;
}

Subgraph AlternatingPaths::span(std::span<const int> vertices) const {
    const auto n = static_cast<int>(graph_->vertex_count());
    std::vector<int> rows, cols;
    for (int v : vertices) {
        if (v < 0 || v >= n) throw Error(ErrorCode::PreconditionViolated, "vertex out of range");
        (graph_->in_R(v) ? rows : cols).push_back(v);
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());

    std::vector<std::vector<char>> forward, backward;
    for (int c : cols) forward.push_back(reachable_from(matching_->pair_index[c]));
    for (int r : rows) backward.push_back(reaching(matching_->pair_index[r]));

    std::set<Edge> edges;
    for (std::size_t ci = 0; ci < cols.size(); ++ci) {
        for (std::size_t ri = 0; ri < rows.size(); ++ri) {
            const auto& fwd = forward[ci];
            const auto& bwd = backward[ri];
            if (!fwd[matching_->pair_index[rows[ri]]]) continue;
            for (std::size_t x = 0; x < dag_.size(); ++x) {
                if (fwd[x] && bwd[x]) {
                    const auto& pair = matching_->pairs[x];
                    edges.insert(make_edge(pair.r, pair.c));
                }
            }
            for (const auto& [x, y] : dag_.arcs()) {
                if (fwd[x] && bwd[y]) edges.insert(make_edge(matching_->pairs[x].r, matching_->pairs[y].c));
            }
        }
    }
    Subgraph sub;
    sub.edges.assign(edges.begin(), edges.end());
    std::set<int> touched;
    for (const auto& e : sub.edges) touched.insert(e.u), touched.insert(e.v);
    sub.vertices.assign(touched.begin(), touched.end());
    return sub;
}

PathProfile tau_counts(const BipartiteGraph& g, const Matching& m, int i, int j) {
    return AlternatingPaths(g, m).profile(i, j);
}

Subgraph m_span(const BipartiteGraph& g, const Matching& m, std::span<const int> vertices) {
    return AlternatingPaths(g, m).span(vertices);
}

FlowerCheck flower_check(const BipartiteGraph& g, const Matching& m, std::span<const int> vertices) {
    std::vector<int> S(vertices.begin(), vertices.end());
    if (S.size() < 3) throw Error(ErrorCode::SizeTooSmall, "a flower needs at least three vertices");
    std::sort(S.begin(), S.end());
    if (std::adjacent_find(S.begin(), S.end()) != S.end()) {
        throw Error(ErrorCode::PreconditionViolated, "vertex set has repeated vertices");
    }
    if (S.front() < 0 || static_cast<std::size_t>(S.back()) >= g.vertex_count()) {
        throw Error(ErrorCode::PreconditionViolated, "vertex out of range");
    }

    const AlternatingPaths paths(g, m);
    FlowerCertificate cert;
    const std::size_t k = S.size();
    std::vector<std::vector<std::size_t>> h(k);
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            PathProfile p = paths.profile(S[a], S[b]);
            if (p.tau_o != p.tau_e) {
                h[a].push_back(b);
                h[b].push_back(a);
            }
            if (p.tau_o > p.tau_e) ++cert.negative_pairs;
            cert.profiles.emplace(std::make_pair(S[a], S[b]), std::move(p));
        }
    }

    FlowerCheck check;
    for (std::size_t a = 0; a < k; ++a) {
        if (h[a].size() != 2) {
            check.reason = "vertex " + std::to_string(S[a]) + " has " + std::to_string(h[a].size()) +
                           " partners with tau_o != tau_e (need 2)";
            return check;
        }
    }
    // h[a] is sorted, so the walk leaves S[0] toward its smaller partner.
    std::vector<char> seen(k, 0);
    std::size_t prev = k, cur = 0;
    while (!seen[cur]) {
        seen[cur] = 1;
        cert.order.push_back(S[cur]);
        const std::size_t next = h[cur][0] != prev ? h[cur][0] : h[cur][1];
        prev = cur;
        cur = next;
    }
    if (cert.order.size() != k) {
        check.reason = "pairs with tau_o != tau_e form several cycles";
        return check;
    }
    cert.span = paths.span(S);
    check.certificate = std::move(cert);
    return check;
}

nlohmann::json to_json(const FlowerCertificate& cert) {
    nlohmann::json profiles = nlohmann::json::object();
    for (const auto& [key, p] : cert.profiles) {
        profiles[std::to_string(key.first) + "-" + std::to_string(key.second)] = {
            {"tau", integer_to_json(p.tau)}, {"tau_e", integer_to_json(p.tau_e)}, {"tau_o", integer_to_json(p.tau_o)}};
    }
    nlohmann::json span = nlohmann::json::array();
    for (const auto& e : cert.span.edges) span.push_back({e.u, e.v});
    return {{"order", cert.order},
            {"profiles", profiles},
            {"negative_pairs", cert.negative_pairs},
            {"odd", cert.odd()},
            {"span", span}};
}

FlowerCertificate flower_from_json(const nlohmann::json& j) {
    try {
        FlowerCertificate cert;
        cert.order = j.at("order").get<std::vector<int>>();
        for (const auto& [key, value] : j.at("profiles").items()) {
            const auto dash = key.find('-');
            if (dash == std::string::npos) throw Error(ErrorCode::Syntax, "profile key '" + key + "' is not 'u-v'");
            const int u = std::stoi(key.substr(0, dash));
            const int v = std::stoi(key.substr(dash + 1));
            cert.profiles.emplace(std::make_pair(u, v),
                                  PathProfile{integer_from_json(value.at("tau")), integer_from_json(value.at("tau_e")),
                                              integer_from_json(value.at("tau_o"))});
        }
        cert.negative_pairs = j.at("negative_pairs").get<std::size_t>();
        if (j.contains("span")) {
            std::set<int> touched;
            for (const auto& e : j.at("span")) {
                cert.span.edges.push_back(make_edge(e.at(0).get<int>(), e.at(1).get<int>()));
                touched.insert(cert.span.edges.back().u);
                touched.insert(cert.span.edges.back().v);
            }
            cert.span.vertices.assign(touched.begin(), touched.end());
        }
        if (j.contains("odd") && j.at("odd").get<bool>() != cert.odd()) {
            throw Error(ErrorCode::Syntax, "'odd' disagrees with 'negative_pairs'");
        }
        return cert;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Syntax, std::string("flower json: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw Error(ErrorCode::Syntax, "flower json: bad profile key");
    }
}

bool validate_odd_flower(const BipartiteGraph& g, const Matching& m, const FlowerCertificate& cert) {
    if (cert.order.size() < 3 || !cert.odd()) return false;
    FlowerCheck check;
    try {
        check = flower_check(g, m, cert.order);
    } catch (const Error&) {
        return false;
    }
    if (!check) return false;
    const auto& fresh = *check.certificate;
    if (fresh.profiles != cert.profiles || fresh.negative_pairs != cert.negative_pairs) return false;
    if (!cert.span.edges.empty() && fresh.span != cert.span) return false;
    const std::size_t k = cert.order.size();
    for (std::size_t a = 0; a < k; ++a) {
        const int x = cert.order[a], y = cert.order[(a + 1) % k];
        const auto& p = fresh.profiles.at({std::min(x, y), std::max(x, y)});
        if (p.tau_o == p.tau_e) return false;
    }
    return true;
}

}  // namespace bipinv
