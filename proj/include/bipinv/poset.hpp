#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "bipinv/balance.hpp"
#include "bipinv/graph.hpp"
#include "bipinv/integer_matrix.hpp"
#include "bipinv/matching.hpp"

namespace bipinv {

// Finite poset on elements 0..k-1. Construction checks reflexivity,
// antisymmetry and transitivity.
class Poset {
public:
    Poset() = default;
    // leq[a * k + b] != 0 iff a <= b. Throws Error(InvalidPoset).
    Poset(std::size_t k, std::vector<char> leq);

    // Reflexive-transitive closure of the given strict relations (a, b): a < b.
    // Throws Error(InvalidPoset) if the closure is not antisymmetric.
    static Poset from_relations(std::size_t k, const std::vector<std::pair<int, int>>& less);

    std::size_t size() const noexcept { return k_; }
    bool leq(int a, int b) const { return leq_[static_cast<std::size_t>(a) * k_ + b] != 0; }

    // Arcs b -> a for every a < b.
    Dag strict_order_dag() const;

    // Smallest elements first: the reverse of the smallest-source-first Kahn
    // order of strict_order_dag().
    std::vector<int> linear_extension() const;

    friend bool operator==(const Poset&, const Poset&) = default;

private:
    std::size_t k_ = 0;
    std::vector<char> leq_;
};

Poset chain(std::size_t k);
Poset antichain(std::size_t k);
// Subsets of {1..k} encoded as bitmasks, ordered by inclusion.
Poset boolean_lattice(std::size_t k);

// Text format: "k" then lines "le i j" (i <= j); '#' starts a comment.
Poset parse_poset(const std::string& text);
std::string to_poset_text(const Poset& p);  // cover relations only

// a_i <= a_j iff D has a directed path a_j -> a_i. Throws Error(NotAcyclic).
Poset poset_from_dag(const Dag& dag);

// Rows and columns indexed by dag.canonical_order(). Entry (p, q) is 1 on
// the diagonal and for arcs order[p] -> order[q], x when order[q] < order[p]
// without an arc, 0 otherwise. Throws Error(NotAcyclic).
IntegerMatrix zeta_at(const Dag& dag, long x);

// Zeta matrix indexed by p.linear_extension(): entry (p, q) = 1 iff
// order[q] <= order[p].
IntegerMatrix zeta_matrix(const Poset& p);

// Inverse of zeta_matrix(p), same indexing: entry (p, q) = mu(order[q], order[p]).
IntegerMatrix mobius_matrix(const Poset& p);

// For every a <= b: sum over a <= c <= b of mu(c, b) is [a == b], with mu
// read from `mobius` indexed as mobius_matrix() returns it.
bool satisfies_mobius_recurrence(const Poset& p, const IntegerMatrix& mobius);

// Element a becomes the matched pair r = 2a, c = 2a + 1; r_a ~ c_b iff b <= a.
BipartiteGraph poset_to_graph(const Poset& p);

std::variant<NonnegativeForm, FlowerCertificate> mobius_balance(const Poset& p);

}  // namespace bipinv
