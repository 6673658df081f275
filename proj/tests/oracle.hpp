#pragma once

// Reference computations used by the tests. These deliberately avoid the
// library's own algorithms: sums are taken term by term, paths are found by a
// separate search, and torus-knot signatures come from lattice-point counts.

#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "splice/splice.hpp"

namespace oracle {

using splice::Integer;
using splice::Rational;
using splice::SpliceDiagram;

inline Rational sawtooth(const Rational& x) {
    const Integer fl = splice::floor_div(x.num(), x.den());
    if (Rational(fl) == x) return Rational(0);
    return x - Rational(fl) - Rational(1, 2);
}

/// s(p, q) straight from the definition.
inline Rational dedekind(const Integer& p, const Integer& q) {
    Rational total;
    for (Integer j = 0; j < q; ++j) total += oracle::sawtooth(Rational(j, q)) * oracle::sawtooth(Rational(p * j, q));
    return total;
}

struct Adjacent {
    std::string other;
    Integer near;
};

inline std::map<std::string, std::vector<Adjacent>> adjacency(const SpliceDiagram& d) {
    std::map<std::string, std::vector<Adjacent>> adj;
    for (const auto& v : d.vertices()) adj[v.id];
    for (const auto& e : d.edges()) {
        adj[e.end_a].push_back({e.end_b, e.weight_a});
        adj[e.end_b].push_back({e.end_a, e.weight_b});
    }
    return adj;
}

inline bool find_path(const std::map<std::string, std::vector<Adjacent>>& adj, const std::string& at,
                      const std::string& target, const std::string& from, std::vector<std::string>& path) {
    path.push_back(at);
    if (at == target) return true;
    for (const auto& a : adj.at(at))
        if (a.other != from && find_path(adj, a.other, target, at, path)) return true;
    path.pop_back();
    return false;
}

/// Product of the weights next to, but not on, the v--w path.
inline Integer linking(const SpliceDiagram& d, const std::string& v, const std::string& w) {
    const auto adj = adjacency(d);
    std::vector<std::string> path;
    find_path(adj, v, w, "", path);
    Integer product = 1;
    for (std::size_t k = 0; k < path.size(); ++k)
        for (const auto& a : adj.at(path[k])) {
            const bool on_path = (k > 0 && a.other == path[k - 1]) || (k + 1 < path.size() && a.other == path[k + 1]);
            if (!on_path) product *= a.near;
        }
    return product;
}

inline Integer multiplicity(const SpliceDiagram& d, const std::string& v) {
    Integer total = 0;
    for (const auto& a : d.vertices())
        if (a.kind == splice::VertexKind::arrowhead && a.id != v && a.multiplicity != 0)
            total += a.multiplicity * linking(d, a.id, v);
    return total;
}

/// Multiplicity that the arrowhead `arrow` of `side` must carry so that
/// `node` keeps multiplicity `target`.
inline Integer preserving_multiplicity(const SpliceDiagram& side, const std::string& arrow, const std::string& node,
                                       const Integer& target) {
    Integer others = 0;
    for (const auto& a : side.vertices())
        if (a.kind == splice::VertexKind::arrowhead && a.id != arrow && a.multiplicity != 0)
            others += a.multiplicity * linking(side, a.id, node);
    const Integer lk = linking(side, arrow, node);
    if ((target - others) % lk != 0) return -1;
    return (target - others) / lk;
}

/// Tristram-Levine signature of the torus knot T(p, q) at e^{2 pi i x}, by
/// counting the lattice points i/p + j/q inside and outside (x, x + 1).
inline Integer torus_signature(std::int64_t p, std::int64_t q, const Rational& x) {
    Integer inside = 0, outside = 0;
    for (std::int64_t i = 1; i < p; ++i)
        for (std::int64_t j = 1; j < q; ++j) {
            const Rational s(Integer(i * q + j * p), Integer(p * q));
            if (s > x && s < x + Rational(1))
                ++inside;
            else if (s < x || s > x + Rational(1))
                ++outside;
        }
    return outside - inside;
}

inline Rational torus_average(const Integer& p, const Integer& q) {
    return -(Rational(p) - Rational(1, p)) * (Rational(q) - Rational(1, q)) / Rational(3);
}

inline Rational iterated_torus_s(const std::vector<std::pair<Integer, Integer>>& pairs) {
    Rational total;
    for (const auto& [p, q] : pairs) total += (Rational(p) - Rational(1, p)) * (Rational(q) - Rational(1, q));
    return total;
}

/// Random list of coprime pairs with entries in [2, max].
inline std::vector<std::pair<Integer, Integer>> random_pairs(std::mt19937_64& rng, std::size_t n, std::int64_t max) {
    std::vector<std::pair<Integer, Integer>> out;
    while (out.size() < n) {
        const std::int64_t p = splice::detail::uniform(rng, 2, max);
        const std::int64_t q = splice::detail::uniform(rng, 2, max);
        if (std::gcd(p, q) == 1) out.emplace_back(p, q);
    }
    return out;
}

inline std::vector<std::pair<std::string, std::string>> node_edges(const SpliceDiagram& d) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& e : d.edges())
        if (d.vertex(e.end_a).kind == splice::VertexKind::node && d.vertex(e.end_b).kind == splice::VertexKind::node)
            out.emplace_back(e.end_a, e.end_b);
    return out;
}

}  // namespace oracle
