#pragma once

// Surgery on splice diagrams: cutting, splicing, splice components,
// completion, and constructors for named families and random diagrams.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "splice/diagram.hpp"
#include "splice/error.hpp"
#include "splice/rational.hpp"

namespace splice {

struct CutResult {
    SpliceDiagram side_a;  // contains end_a
    SpliceDiagram side_b;  // contains end_b
    VertexId arrow_a;      // new arrowhead on side_a
    VertexId arrow_b;      // new arrowhead on side_b
    Integer mult_a = 0;
    Integer mult_b = 0;
    int eta = 0;  // 1 iff mult_a * mult_b != 0
};

namespace detail {

inline VertexId fresh_id(const SpliceDiagram& d, std::string base) {
    while (d.find(base)) base += "'";
    return base;
}

inline SpliceDiagram build_side(const SpliceDiagram& d, const std::vector<std::size_t>& members, std::size_t end,
                                const Integer& end_weight, const VertexId& arrow, const Integer& mult) {
    std::vector<bool> in(d.size(), false);
    std::vector<Vertex> vs;
    for (std::size_t i : members) {
        in[i] = true;
        vs.push_back(d.vertex(i));
    }
    vs.push_back({arrow, VertexKind::arrowhead, mult});
    std::vector<Edge> es;
    for (const Edge& e : d.edges())
        if (in[d.index_of(e.end_a)] && in[d.index_of(e.end_b)]) es.push_back(e);
    es.push_back({d.vertex(end).id, arrow, end_weight, 1});
    return SpliceDiagram(std::move(vs), std::move(es));
}

// Sum over arrowheads t != a of m_t * lk(a, t).
inline Integer induced_multiplicity(const SpliceDiagram& d, std::size_t a) {
    Integer total = 0;
    for (std::size_t t : d.indices_of(VertexKind::arrowhead)) {
        if (t == a || d.vertex(t).multiplicity == 0) continue;
        total += d.vertex(t).multiplicity * linking_number(d, a, t);
    }
    return total;
}

inline const Incidence& incidence_towards(const SpliceDiagram& d, std::size_t from, std::size_t to) {
    for (const Incidence& inc : d.incident(from))
        if (inc.neighbor == to) return inc;
    throw DomainError("no edge between '" + d.vertex(from).id + "' and '" + d.vertex(to).id + "'");
}

}  // namespace detail

/// Cuts the edge between two nodes. Each side receives an arrowhead in place
/// of the edge, with the weight the edge had at the surviving node and the
/// multiplicity that keeps every node multiplicity unchanged.
/// Throws InvariantFailure if node multiplicities are not preserved.
inline CutResult cut_edge(const SpliceDiagram& d, std::string_view end_a, std::string_view end_b) {
    const std::size_t ia = d.index_of(end_a);
    const std::size_t ib = d.index_of(end_b);
    if (d.vertex(ia).kind != VertexKind::node || d.vertex(ib).kind != VertexKind::node)
        throw DomainError("cut_edge: both ends must be nodes ('" + std::string(end_a) + "', '" + std::string(end_b) + "')");
    const Incidence& inc = detail::incidence_towards(d, ia, ib);

    CutResult r;
    r.arrow_a = detail::fresh_id(d, std::string(end_a) + ">" + std::string(end_b));
    r.arrow_b = detail::fresh_id(d, std::string(end_b) + ">" + std::string(end_a));
    if (r.arrow_a == r.arrow_b) r.arrow_b += "'";
    r.mult_a = detail::cut_multiplicity(d, ia, ib);
    r.mult_b = detail::cut_multiplicity(d, ib, ia);
    r.eta = (r.mult_a != 0 && r.mult_b != 0) ? 1 : 0;
    r.side_a = detail::build_side(d, detail::side_of(d, ia, ib), ia, inc.near_weight, r.arrow_a, r.mult_a);
    r.side_b = detail::build_side(d, detail::side_of(d, ib, ia), ib, inc.far_weight, r.arrow_b, r.mult_b);

    for (const SpliceDiagram* side : {&r.side_a, &r.side_b}) {
        for (std::size_t n : side->indices_of(VertexKind::node)) {
            const Integer inside = detail::multiplicity(*side, n);
            const Integer whole = detail::multiplicity(d, d.index_of(side->vertex(n).id));
            if (inside != whole)
                throw InvariantFailure("cut_edge: multiplicity of '" + side->vertex(n).id + "' changed from " +
                                       whole.str() + " to " + inside.str());
        }
    }
    return r;
}

/// Joins arrowhead a1 of d1 and a2 of d2 into one edge between their nearest
/// nodes. Each arrowhead's multiplicity must equal the one the other diagram
/// induces on it; otherwise throws SpliceCompatibilityError.
inline SpliceDiagram splice(const SpliceDiagram& d1, std::string_view a1, const SpliceDiagram& d2,
                            std::string_view a2) {
    const std::size_t i1 = d1.index_of(a1);
    const std::size_t i2 = d2.index_of(a2);
    if (d1.vertex(i1).kind != VertexKind::arrowhead || d2.vertex(i2).kind != VertexKind::arrowhead)
        throw DomainError("splice: both splice points must be arrowheads");
    if (d1.valency(i1) != 1 || d2.valency(i2) != 1) throw DomainError("splice: arrowheads must have valency 1");

    const Integer expect1 = detail::induced_multiplicity(d2, i2);
    const Integer expect2 = detail::induced_multiplicity(d1, i1);
    const Integer& have1 = d1.vertex(i1).multiplicity;
    const Integer& have2 = d2.vertex(i2).multiplicity;
    if (have1 != expect1 || have2 != expect2)
        throw SpliceCompatibilityError("splice: expected multiplicity " + expect1.str() + " at '" + std::string(a1) +
                                       "' and " + expect2.str() + " at '" + std::string(a2) + "', found " +
                                       have1.str() + " and " + have2.str());

    const Incidence& inc1 = d1.incident(i1).front();
    const Incidence& inc2 = d2.incident(i2).front();
    std::vector<Vertex> vs;
    for (std::size_t i = 0; i < d1.size(); ++i)
        if (i != i1) vs.push_back(d1.vertex(i));
    for (std::size_t i = 0; i < d2.size(); ++i) {
        if (i == i2) continue;
        if (d1.find(d2.vertex(i).id) && d1.vertex(i1).id != d2.vertex(i).id)
            throw DomainError("splice: vertex id '" + d2.vertex(i).id + "' occurs in both diagrams");
        vs.push_back(d2.vertex(i));
    }
    std::vector<Edge> es;
    for (const Edge& e : d1.edges())
        if (e.end_a != a1 && e.end_b != a1) es.push_back(e);
    for (const Edge& e : d2.edges())
        if (e.end_a != a2 && e.end_b != a2) es.push_back(e);
    es.push_back({d1.vertex(inc1.neighbor).id, d2.vertex(inc2.neighbor).id, inc1.far_weight, inc2.far_weight});
    return SpliceDiagram(std::move(vs), std::move(es));
}

struct CutRecord {
    VertexId end_a;
    VertexId end_b;
    Integer mult_a;
    Integer mult_b;
    int eta = 0;
};

struct Decomposition {
    std::vector<SpliceDiagram> components;  // one node each, ordered by node id
    std::vector<CutRecord> cuts;            // one per node--node edge of the input
};

/// Cuts every node--node edge.
inline Decomposition decompose(const SpliceDiagram& d) {
    Decomposition out;
    std::vector<SpliceDiagram> work{d};
    while (!work.empty()) {
        SpliceDiagram cur = std::move(work.back());
        work.pop_back();
        const Edge* inner = nullptr;
        for (const Edge& e : cur.edges()) {
            if (cur.vertex(e.end_a).kind == VertexKind::node && cur.vertex(e.end_b).kind == VertexKind::node) {
                inner = &e;
                break;
            }
        }
        if (!inner) {
            out.components.push_back(std::move(cur));
            continue;
        }
        CutResult c = cut_edge(cur, inner->end_a, inner->end_b);
        out.cuts.push_back({inner->end_a, inner->end_b, c.mult_a, c.mult_b, c.eta});
        work.push_back(std::move(c.side_a));
        work.push_back(std::move(c.side_b));
    }
    auto node_of = [](const SpliceDiagram& c) { return c.ids_of(VertexKind::node).front(); };
    std::sort(out.components.begin(), out.components.end(),
              [&](const SpliceDiagram& x, const SpliceDiagram& y) { return node_of(x) < node_of(y); });
    std::sort(out.cuts.begin(), out.cuts.end(), [](const CutRecord& x, const CutRecord& y) {
        return std::tie(x.end_a, x.end_b) < std::tie(y.end_a, y.end_b);
    });
    return out;
}

inline std::vector<SpliceDiagram> components(const SpliceDiagram& d) {
    if (d.indices_of(VertexKind::node).empty()) throw DomainError("components: diagram has no node");
    return decompose(d).components;
}

/// Gamma(a, b): one node with a leaf of weight a and two unit-weight
/// arrowheads of multiplicities b ("arrow_b") and 1 ("arrow_1").
inline SpliceDiagram elementary(const Integer& a, const Integer& b) {
    if (a < 1) throw DomainError("elementary: a must be positive, got " + a.str());
    if (b < 0) throw DomainError("elementary: b must be non-negative, got " + b.str());
    return SpliceDiagram({{"node", VertexKind::node, 0},
                          {"leaf", VertexKind::leaf, 0},
                          {"arrow_b", VertexKind::arrowhead, b},
                          {"arrow_1", VertexKind::arrowhead, 1}},
                         {{"node", "leaf", a, 1}, {"node", "arrow_b", 1, 1}, {"node", "arrow_1", 1, 1}});
}

namespace detail {

// Gamma(a, b) with ids prefixed so they do not clash with `host`.
inline std::string elementary_prefix(const SpliceDiagram& host, const std::string& prefix) {
    std::string p = prefix + ".";
    auto clashes = [&](const std::string& pre) {
        for (const char* s : {"node", "leaf", "arrow_b", "arrow_1"})
            if (host.find(pre + s)) return true;
        return false;
    };
    while (clashes(p)) p += "'";
    return p;
}

inline SpliceDiagram prefixed_elementary(const SpliceDiagram& host, const std::string& prefix, const Integer& a,
                                         const Integer& b) {
    const std::string p = elementary_prefix(host, prefix);
    const SpliceDiagram g = elementary(a, b);
    std::vector<Vertex> vs;
    std::vector<Edge> es;
    for (const Vertex& v : g.vertices()) vs.push_back({p + v.id, v.kind, v.multiplicity});
    for (const Edge& e : g.edges()) es.push_back({p + e.end_a, p + e.end_b, e.weight_a, e.weight_b});
    return SpliceDiagram(std::move(vs), std::move(es));
}

}  // namespace detail

/// Splices Gamma(1, b) onto the multiplicity-1 arrowhead `a`, with the unique
/// compatible b. The result represents the same link.
inline SpliceDiagram attach_trivial_elementary(const SpliceDiagram& d, std::string_view a) {
    const std::size_t ia = d.index_of(a);
    if (d.vertex(ia).kind != VertexKind::arrowhead || d.vertex(ia).multiplicity != 1)
        throw DomainError("attach_trivial_elementary: '" + std::string(a) + "' is not a multiplicity-1 arrowhead");
    const Integer b = detail::induced_multiplicity(d, ia);
    const std::string p = detail::elementary_prefix(d, std::string(a));
    return splice(d, a, detail::prefixed_elementary(d, std::string(a), 1, b), p + "arrow_b");
}

/// Turns the one arrowhead of multiplicity != 1 into genuine link data:
/// m > 1 splices Gamma(m, b); m = 0 replaces the arrowhead by a leaf;
/// m = 1 leaves the diagram unchanged.
inline SpliceDiagram completion(const SpliceDiagram& d, std::string_view a) {
    const std::size_t ia = d.index_of(a);
    if (d.vertex(ia).kind != VertexKind::arrowhead)
        throw DomainError("completion: '" + std::string(a) + "' is not an arrowhead");
    for (std::size_t t : d.indices_of(VertexKind::arrowhead))
        if (t != ia && d.vertex(t).multiplicity != 1)
            throw DomainError("completion: arrowhead '" + d.vertex(t).id + "' has multiplicity " +
                              d.vertex(t).multiplicity.str() + " (expected 1)");
    const Integer& m = d.vertex(ia).multiplicity;
    if (m == 1) return d;
    if (m == 0) {
        std::vector<Vertex> vs = d.vertices();
        vs[ia] = {vs[ia].id, VertexKind::leaf, 0};
        return SpliceDiagram(std::move(vs), d.edges());
    }
    const Integer b = detail::induced_multiplicity(d, ia);
    const std::string p = detail::elementary_prefix(d, std::string(a));
    return splice(d, a, detail::prefixed_elementary(d, std::string(a), m, b), p + "arrow_b");
}

struct TorusParams {
    Integer p;
    Integer q;
};
struct IteratedTorusParams {
    std::vector<std::pair<Integer, Integer>> pairs;  // (p_j, q_j), innermost first
};
struct StarParams {
    Integer p;
    Integer q;
    std::vector<Integer> mults;
};
using FamilyParams = std::variant<TorusParams, IteratedTorusParams, StarParams>;

namespace detail {

inline void require_coprime(const Integer& p, const Integer& q, const char* what) {
    if (p < 1 || q < 1) throw DomainError(std::string(what) + ": parameters must be positive");
    if (gcd(p, q) != 1)
        throw DomainError(std::string(what) + ": " + p.str() + " and " + q.str() + " are not coprime");
}

// Zero-padded index so that lexicographic order follows numeric order.
inline std::string idx(std::size_t i, std::size_t count) {
    std::string s = std::to_string(i);
    const std::size_t width = std::to_string(count).size();
    return std::string(width > s.size() ? width - s.size() : 0, '0') + s;
}

inline SpliceDiagram make_family(const TorusParams& t) {
    require_coprime(t.p, t.q, "torus");
    return SpliceDiagram({{"node", VertexKind::node, 0},
                          {"leaf_p", VertexKind::leaf, 0},
                          {"leaf_q", VertexKind::leaf, 0},
                          {"knot", VertexKind::arrowhead, 1}},
                         {{"node", "leaf_p", t.p, 1}, {"node", "leaf_q", t.q, 1}, {"node", "knot", 1, 1}});
}

// Chain of nodes n1..nk; node j has a leaf of weight p_j; the edge into node j
// from the left has weight q_j at node j (a leaf for j = 1) and weight 1 at
// node j-1; the knot hangs off node k with weight 1.
inline SpliceDiagram make_family(const IteratedTorusParams& t) {
    if (t.pairs.empty()) throw DomainError("iterated_torus: needs at least one (p, q) pair");
    const std::size_t k = t.pairs.size();
    std::vector<Vertex> vs{{"start", VertexKind::leaf, 0}, {"knot", VertexKind::arrowhead, 1}};
    std::vector<Edge> es;
    for (std::size_t j = 0; j < k; ++j) {
        const auto& [p, q] = t.pairs[j];
        require_coprime(p, q, "iterated_torus");
        const std::string n = "n" + idx(j + 1, k);
        vs.push_back({n, VertexKind::node, 0});
        vs.push_back({n + ".leaf", VertexKind::leaf, 0});
        es.push_back({n, n + ".leaf", p, 1});
        if (j == 0)
            es.push_back({n, "start", q, 1});
        else
            es.push_back({"n" + idx(j, k), n, 1, q});
    }
    es.push_back({"n" + idx(k, k), "knot", 1, 1});
    return SpliceDiagram(std::move(vs), std::move(es));
}

// Central node with leaves of weight p and q, joined by unit-weight edges to
// k outer nodes; outer node j has a leaf of weight m_j and one knot.
inline SpliceDiagram make_family(const StarParams& s) {
    require_coprime(s.p, s.q, "star");
    if (s.mults.empty()) throw DomainError("star: needs at least one outer node");
    const std::size_t k = s.mults.size();
    std::vector<Vertex> vs{{"center", VertexKind::node, 0},
                           {"center.leaf_p", VertexKind::leaf, 0},
                           {"center.leaf_q", VertexKind::leaf, 0}};
    std::vector<Edge> es{{"center", "center.leaf_p", s.p, 1}, {"center", "center.leaf_q", s.q, 1}};
    for (std::size_t j = 0; j < k; ++j) {
        if (s.mults[j] < 1) throw DomainError("star: outer weights must be positive");
        const std::string o = "outer" + idx(j + 1, k);
        vs.push_back({o, VertexKind::node, 0});
        vs.push_back({o + ".leaf", VertexKind::leaf, 0});
        vs.push_back({o + ".knot", VertexKind::arrowhead, 1});
        es.push_back({"center", o, 1, 1});
        es.push_back({o, o + ".leaf", s.mults[j], 1});
        es.push_back({o, o + ".knot", 1, 1});
    }
    return SpliceDiagram(std::move(vs), std::move(es));
}

}  // namespace detail

inline SpliceDiagram build_family(const FamilyParams& params) {
    return std::visit([](const auto& p) { return detail::make_family(p); }, params);
}

inline SpliceDiagram torus(const Integer& p, const Integer& q) { return build_family(TorusParams{p, q}); }

struct GeneratorOptions {
    std::int64_t max_weight = 7;
    // Upper bound on the sum of node multiplicities; this is the number of
    // candidate jump points the step function enumerates.
    std::int64_t max_total_multiplicity = 20000;
};

namespace detail {

// Unbiased draw from [lo, hi], identical on every platform.
inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
}

inline bool pairwise_coprime(const std::vector<std::int64_t>& ws) {
    for (std::size_t i = 0; i < ws.size(); ++i)
        for (std::size_t j = i + 1; j < ws.size(); ++j)
            if (std::gcd(ws[i], ws[j]) != 1) return false;
    return true;
}

struct NodeDraft {
    std::vector<std::int64_t> leaf_weights;
    std::vector<std::int64_t> arrow_weights;
    std::int64_t parent_weight = 1;  // weight at the new node on the edge to its parent
};

// Weights at a new node. Leaves always get weight > 1, at most two weights
// exceed 1, and when the parent edge has weight 1 at this node at most one
// other weight exceeds 1 (the parent fiber must be unknotted).
inline NodeDraft draft_node(std::mt19937_64& rng, bool root, std::int64_t max_weight) {
    for (;;) {
        NodeDraft n;
        const std::int64_t leaves = uniform(rng, 0, 2);
        const std::int64_t min_arrows = root ? std::max<std::int64_t>(1, 3 - leaves) : std::max<std::int64_t>(0, 2 - leaves);
        const std::int64_t arrows = uniform(rng, min_arrows, std::max<std::int64_t>(min_arrows, 3 - leaves));
        std::int64_t big = 0;
        for (std::int64_t i = 0; i < leaves; ++i) {
            n.leaf_weights.push_back(uniform(rng, 2, max_weight));
            ++big;
        }
        auto maybe_big = [&]() -> std::int64_t {
            if (big < 2 && uniform(rng, 0, 2) == 0) {
                ++big;
                return uniform(rng, 2, max_weight);
            }
            return 1;
        };
        if (!root) n.parent_weight = maybe_big();
        for (std::int64_t i = 0; i < arrows; ++i) n.arrow_weights.push_back(maybe_big());
        if (!root && n.parent_weight == 1 && big > 1) continue;
        std::vector<std::int64_t> all = n.leaf_weights;
        all.insert(all.end(), n.arrow_weights.begin(), n.arrow_weights.end());
        if (!root) all.push_back(n.parent_weight);
        if (pairwise_coprime(all)) return n;
    }
}

}  // namespace detail

/// Deterministic random link diagram in S^3 with at most `size` nodes, grown
/// by repeatedly replacing a knot component by a new cabling node. Outputs are
/// almost minimal links and never of exceptional shape.
inline SpliceDiagram generate_random(std::uint64_t seed, std::size_t size, const GeneratorOptions& opt = {}) {
    if (size < 1) throw DomainError("generate_random: size must be at least 1");
    if (opt.max_weight < 2) throw DomainError("generate_random: max_weight must be at least 2");
    std::mt19937_64 rng(seed);
    for (;;) {
        std::vector<Vertex> vs;
        std::vector<Edge> es;
        std::size_t counter = 0;
        auto next_id = [&](const char* prefix) { return std::string(prefix) + std::to_string(++counter); };
        // Pending arrowheads: (node id, weight at node).
        std::vector<std::pair<VertexId, std::int64_t>> open;

        auto emit = [&](const detail::NodeDraft& draft) {
            const VertexId n = next_id("n");
            vs.push_back({n, VertexKind::node, 0});
            for (std::int64_t w : draft.leaf_weights) {
                const VertexId l = next_id("l");
                vs.push_back({l, VertexKind::leaf, 0});
                es.push_back({n, l, w, 1});
            }
            for (std::int64_t w : draft.arrow_weights) open.emplace_back(n, w);
            return n;
        };

        const std::size_t target = static_cast<std::size_t>(detail::uniform(rng, 1, static_cast<std::int64_t>(size)));
        emit(detail::draft_node(rng, true, opt.max_weight));
        std::size_t nodes = 1;
        while (nodes < target && !open.empty()) {
            const std::size_t pick = static_cast<std::size_t>(detail::uniform(rng, 0, static_cast<std::int64_t>(open.size()) - 1));
            const auto [parent, parent_w] = open[pick];
            open.erase(open.begin() + static_cast<std::ptrdiff_t>(pick));
            const detail::NodeDraft draft = detail::draft_node(rng, false, opt.max_weight);
            const VertexId child = emit(draft);
            es.push_back({parent, child, parent_w, draft.parent_weight});
            ++nodes;
        }
        if (open.empty()) continue;
        for (const auto& [n, w] : open) {
            const VertexId a = next_id("a");
            vs.push_back({a, VertexKind::arrowhead, 1});
            es.push_back({n, a, w, 1});
        }
        SpliceDiagram d(std::move(vs), std::move(es));

        if (is_exceptional_shape(d)) continue;
        Integer total = 0;
        for (std::size_t n : d.indices_of(VertexKind::node)) total += detail::multiplicity(d, n);
        if (total > opt.max_total_multiplicity) continue;
        return d;
    }
}

}  // namespace splice
