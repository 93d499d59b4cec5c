#include "bipinv/poset.hpp"

#include <sstream>

#include "bipinv/error.hpp"
#include "bipinv/linalg.hpp"

namespace bipinv {

Poset::Poset(std::size_t k, std::vector<char> leq) : k_(k), leq_(std::move(leq)) {
    if (leq_.size() != k * k) throw Error(ErrorCode::InvalidPoset, "relation matrix has wrong size");
    for (std::size_t a = 0; a < k; ++a) {
        if (!leq_[a * k + a]) throw Error(ErrorCode::InvalidPoset, "relation is not reflexive at " + std::to_string(a));
        for (std::size_t b = 0; b < k; ++b) {
            if (a != b && leq_[a * k + b] && leq_[b * k + a]) {
                throw Error(ErrorCode::InvalidPoset,
                            "relation is not antisymmetric on " + std::to_string(a) + "," + std::to_string(b));
            }
            if (!leq_[a * k + b]) continue;
            for (std::size_t c = 0; c < k; ++c) {
                if (leq_[b * k + c] && !leq_[a * k + c]) {
                    throw Error(ErrorCode::InvalidPoset, "relation is not transitive");
                }
            }
        }
    }
}

Poset Poset::from_relations(std::size_t k, const std::vector<std::pair<int, int>>& less) {
    std::vector<char> leq(k * k, 0);
    for (std::size_t a = 0; a < k; ++a) leq[a * k + a] = 1;
    for (const auto& [a, b] : less) {
        if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= k || static_cast<std::size_t>(b) >= k) {
            throw Error(ErrorCode::InvalidPoset, "relation element out of range");
        }
        leq[a * k + b] = 1;
    }
    for (std::size_t m = 0; m < k; ++m)
        for (std::size_t a = 0; a < k; ++a)
            if (leq[a * k + m])
                for (std::size_t b = 0; b < k; ++b)
                    if (leq[m * k + b]) leq[a * k + b] = 1;
    return Poset(k, std::move(leq));
}

Dag Poset::strict_order_dag() const {
    std::vector<std::pair<int, int>> arcs;
    for (std::size_t a = 0; a < k_; ++a)
        for (std::size_t b = 0; b < k_; ++b)
            if (a != b && leq_[a * k_ + b]) arcs.emplace_back(static_cast<int>(b), static_cast<int>(a));
    return Dag(k_, std::move(arcs));
}

std::vector<int> Poset::linear_extension() const { return strict_order_dag().canonical_order(); }

Poset chain(std::size_t k) {
    std::vector<std::pair<int, int>> less;
    for (std::size_t a = 0; a + 1 < k; ++a) less.emplace_back(static_cast<int>(a), static_cast<int>(a + 1));
    return Poset::from_relations(k, less);
}

Poset antichain(std::size_t k) { return Poset::from_relations(k, {}); }

Poset boolean_lattice(std::size_t k) {
    if (k > 8) throw Error(ErrorCode::TooLarge, "boolean lattice is limited to 8 atoms");
    const std::size_t size = std::size_t{1} << k;
    std::vector<char> leq(size * size, 0);
    for (std::size_t a = 0; a < size; ++a)
        for (std::size_t b = 0; b < size; ++b) leq[a * size + b] = (a & ~b) == 0;
    return Poset(size, std::move(leq));
}

Poset parse_poset(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& what) {
        throw Error(ErrorCode::Syntax, "line " + std::to_string(line_no) + ": " + what);
    };
    bool have_header = false;
    long long k = 0;
    std::vector<std::pair<int, int>> less;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string first, extra;
        if (!(fields >> first)) continue;
        if (!have_header) {
            std::istringstream header(line);
            if (!(header >> k) || (header >> extra) || k < 0) fail("expected header 'k'");
            have_header = true;
            continue;
        }
        if (first != "le") fail("expected 'le i j', got '" + first + "'");
        long long a = 0, b = 0;
        if (!(fields >> a >> b) || (fields >> extra)) fail("expected 'le i j'");
        if (a < 0 || b < 0 || a >= k || b >= k) fail("element out of range");
        if (a != b) less.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
    if (!have_header) fail("missing header 'k'");
    return Poset::from_relations(static_cast<std::size_t>(k), less);
}

std::string to_poset_text(const Poset& p) {
    std::ostringstream out;
    const auto k = static_cast<int>(p.size());
    out << k << '\n';
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            if (a == b || !p.leq(a, b)) continue;
            bool cover = true;
            for (int c = 0; c < k && cover; ++c)
                if (c != a && c != b && p.leq(a, c) && p.leq(c, b)) cover = false;
            if (cover) out << "le " << a << ' ' << b << '\n';
        }
    }
    return out.str();
}

Poset poset_from_dag(const Dag& dag) {
    dag.topological_order();
    const std::size_t k = dag.size();
    std::vector<char> leq(k * k, 0);
    std::vector<int> stack;
    for (std::size_t top = 0; top < k; ++top) {
        // Everything reachable from `top` lies below it.
        leq[top * k + top] = 1;
        stack.assign(1, static_cast<int>(top));
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int w : dag.successors(v)) {
                if (leq[w * k + top]) continue;
                leq[w * k + top] = 1;
                stack.push_back(w);
            }
        }
    }
    return Poset(k, std::move(leq));
}

IntegerMatrix zeta_at(const Dag& dag, long x) {
    const Poset poset = poset_from_dag(dag);
    const std::vector<int> order = dag.canonical_order();
    const std::size_t k = order.size();
    std::vector<char> arc(k * k, 0);
    for (const auto& [a, b] : dag.arcs()) arc[a * k + b] = 1;
    IntegerMatrix Z(k, k);
    for (std::size_t p = 0; p < k; ++p) {
        for (std::size_t q = 0; q < k; ++q) {
            if (p == q || arc[order[p] * k + order[q]]) {
                Z(p, q) = 1;
            } else if (poset.leq(order[q], order[p])) {
                Z(p, q) = x;
            }
        }
    }
    return Z;
}

IntegerMatrix zeta_matrix(const Poset& p) {
    const std::vector<int> order = p.linear_extension();
    const std::size_t k = order.size();
    IntegerMatrix Z(k, k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            if (p.leq(order[b], order[a])) Z(a, b) = 1;
    return Z;
}

IntegerMatrix mobius_matrix(const Poset& p) { return invert_unit_lower_triangular(zeta_matrix(p)); }

bool satisfies_mobius_recurrence(const Poset& p, const IntegerMatrix& mobius) {
    const std::vector<int> order = p.linear_extension();
    const std::size_t k = order.size();
    if (mobius.rows() != k || mobius.cols() != k) return false;
    std::vector<std::size_t> pos(k);
    for (std::size_t i = 0; i < k; ++i) pos[order[i]] = i;
    auto mu = [&](int a, int b) -> const Integer& { return mobius(pos[b], pos[a]); };

    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
            const int ia = static_cast<int>(a), ib = static_cast<int>(b);
            if (!p.leq(ia, ib)) {
                if (sgn(mu(ia, ib)) != 0) return false;
                continue;
            }
            Integer sum = 0;
            for (std::size_t c = 0; c < k; ++c) {
                const int ic = static_cast<int>(c);
                if (p.leq(ia, ic) && p.leq(ic, ib)) sum += mu(ic, ib);
            }
            if (sum != (a == b ? 1 : 0)) return false;
        }
    }
    return true;
}

BipartiteGraph poset_to_graph(const Poset& p) {
    const std::size_t k = p.size();
    std::vector<Edge> edges;
    std::vector<Side> sides(2 * k);
    for (std::size_t a = 0; a < k; ++a) {
        sides[2 * a] = Side::R;
        sides[2 * a + 1] = Side::C;
        for (std::size_t b = 0; b < k; ++b)
            if (p.leq(static_cast<int>(b), static_cast<int>(a)))
                edges.push_back(make_edge(static_cast<int>(2 * a), static_cast<int>(2 * b + 1)));
    }
    return BipartiteGraph(2 * k, std::move(edges), std::move(sides));
}

std::variant<NonnegativeForm, FlowerCertificate> mobius_balance(const Poset& p) {
    return nonnegative_inverse(poset_to_graph(p));
}

}  // namespace bipinv
