#pragma once

// Splice diagrams: weighted trees of nodes, leaves and arrowheads.
//
// Each edge carries two positive weights, one near each end. Arrowheads carry
// a non-negative multiplicity. A diagram is an immutable value; construction
// canonicalizes vertex and edge order so that equality is structural.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "splice/error.hpp"
#include "splice/rational.hpp"

namespace splice {

enum class VertexKind { node, leaf, arrowhead };

inline std::string_view to_string(VertexKind k) {
    switch (k) {
        case VertexKind::node: return "node";
        case VertexKind::leaf: return "leaf";
        case VertexKind::arrowhead: return "arrowhead";
    }
    return "?";
}

using VertexId = std::string;

struct Vertex {
    VertexId id;
    VertexKind kind = VertexKind::node;
    Integer multiplicity = 0;  // arrowheads only; zero otherwise

    friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct Edge {
    VertexId end_a;
    VertexId end_b;
    Integer weight_a = 1;  // near end_a
    Integer weight_b = 1;  // near end_b

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// One edge seen from one of its ends.
struct Incidence {
    std::size_t edge;
    std::size_t neighbor;
    Integer near_weight;  // weight at this end
    Integer far_weight;   // weight at the neighbor's end
};

class SpliceDiagram {
public:
    SpliceDiagram() = default;

    /// Throws DomainError on duplicate ids, edges naming unknown vertices,
    /// self-loops, or multiplicities on non-arrowheads.
    SpliceDiagram(std::vector<Vertex> vertices, std::vector<Edge> edges)
        : vertices_(std::move(vertices)), edges_(std::move(edges)) {
        std::sort(vertices_.begin(), vertices_.end(), [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (!index_.emplace(vertices_[i].id, i).second)
                throw DomainError("duplicate vertex id '" + vertices_[i].id + "'");
            if (vertices_[i].kind != VertexKind::arrowhead && vertices_[i].multiplicity != 0)
                throw DomainError("vertex '" + vertices_[i].id + "' is not an arrowhead but has a multiplicity");
            if (vertices_[i].multiplicity < 0)
                throw DomainError("arrowhead '" + vertices_[i].id + "' has negative multiplicity");
        }
        for (Edge& e : edges_) {
            if (!index_.contains(e.end_a)) throw DomainError("edge references unknown vertex '" + e.end_a + "'");
            if (!index_.contains(e.end_b)) throw DomainError("edge references unknown vertex '" + e.end_b + "'");
            if (e.end_a == e.end_b) throw DomainError("self-loop at '" + e.end_a + "'");
            if (e.end_b < e.end_a) {
                std::swap(e.end_a, e.end_b);
                std::swap(e.weight_a, e.weight_b);
            }
        }
        std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
            return std::tie(a.end_a, a.end_b, a.weight_a, a.weight_b) < std::tie(b.end_a, b.end_b, b.weight_a, b.weight_b);
        });
        incident_.resize(vertices_.size());
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            const std::size_t a = index_.at(edges_[i].end_a);
            const std::size_t b = index_.at(edges_[i].end_b);
            incident_[a].push_back({i, b, edges_[i].weight_a, edges_[i].weight_b});
            incident_[b].push_back({i, a, edges_[i].weight_b, edges_[i].weight_a});
        }
    }

    const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::size_t size() const noexcept { return vertices_.size(); }

    std::optional<std::size_t> find(std::string_view id) const {
        const auto it = index_.find(std::string(id));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t index_of(std::string_view id) const {
        const auto i = find(id);
        if (!i) throw DomainError("unknown vertex '" + std::string(id) + "'");
        return *i;
    }
    const Vertex& vertex(std::size_t i) const { return vertices_.at(i); }
    const Vertex& vertex(std::string_view id) const { return vertices_[index_of(id)]; }
    const std::vector<Incidence>& incident(std::size_t i) const { return incident_.at(i); }
    std::size_t valency(std::size_t i) const { return incident_.at(i).size(); }

    std::vector<VertexId> ids_of(VertexKind kind) const {
        std::vector<VertexId> out;
        for (const Vertex& v : vertices_)
            if (v.kind == kind) out.push_back(v.id);
        return out;
    }
    std::vector<std::size_t> indices_of(VertexKind kind) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (vertices_[i].kind == kind) out.push_back(i);
        return out;
    }

    friend bool operator==(const SpliceDiagram& a, const SpliceDiagram& b) {
        return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
    }

private:
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::map<VertexId, std::size_t> index_;
    std::vector<std::vector<Incidence>> incident_;
};

namespace detail {

// Vertices of the unique path from `from` to `to`, endpoints included.
inline std::vector<std::size_t> tree_path(const SpliceDiagram& d, std::size_t from, std::size_t to) {
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> parent(d.size(), none);
    std::vector<std::size_t> stack{from};
    parent[from] = from;
    while (!stack.empty() && parent[to] == none) {
        const std::size_t x = stack.back();
        stack.pop_back();
        for (const Incidence& inc : d.incident(x)) {
            if (parent[inc.neighbor] == none) {
                parent[inc.neighbor] = x;
                stack.push_back(inc.neighbor);
            }
        }
    }
    if (parent[to] == none)
        throw DomainError("no path between '" + d.vertex(from).id + "' and '" + d.vertex(to).id + "'");
    std::vector<std::size_t> path{to};
    while (path.back() != from) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

// Product of the weights at path vertices on edges that are not path edges.
// When `skip` names a neighbor of path.front(), the edge towards it is
// treated as part of the path as well.
inline Integer off_path_product(const SpliceDiagram& d, const std::vector<std::size_t>& path,
                                std::optional<std::size_t> skip = std::nullopt) {
    Integer product = 1;
    for (std::size_t k = 0; k < path.size(); ++k) {
        for (const Incidence& inc : d.incident(path[k])) {
            if (k > 0 && inc.neighbor == path[k - 1]) continue;
            if (k + 1 < path.size() && inc.neighbor == path[k + 1]) continue;
            if (k == 0 && skip && inc.neighbor == *skip) continue;
            product *= inc.near_weight;
        }
    }
    return product;
}

// Vertices reachable from `start` without crossing the edge to `blocked`.
inline std::vector<std::size_t> side_of(const SpliceDiagram& d, std::size_t start, std::size_t blocked) {
    std::vector<bool> seen(d.size(), false);
    std::vector<std::size_t> out{start}, stack{start};
    seen[start] = true;
    seen[blocked] = true;
    while (!stack.empty()) {
        const std::size_t x = stack.back();
        stack.pop_back();
        for (const Incidence& inc : d.incident(x)) {
            if (x == start && inc.neighbor == blocked) continue;
            if (!seen[inc.neighbor]) {
                seen[inc.neighbor] = true;
                out.push_back(inc.neighbor);
                stack.push_back(inc.neighbor);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline Integer linking_number(const SpliceDiagram& d, std::size_t v, std::size_t w) {
    return off_path_product(d, tree_path(d, v, w));
}

inline Integer node_weight(const SpliceDiagram& d, std::size_t v) {
    Integer product = 1;
    for (const Incidence& inc : d.incident(v)) product *= inc.near_weight;
    return product;
}

inline Integer multiplicity(const SpliceDiagram& d, std::size_t v) {
    if (d.vertex(v).kind == VertexKind::arrowhead) return d.vertex(v).multiplicity;
    Integer total = 0;
    for (std::size_t a : d.indices_of(VertexKind::arrowhead)) {
        const Integer& m = d.vertex(a).multiplicity;
        if (m != 0) total += m * linking_number(d, a, v);
    }
    return total;
}

// Multiplicity the arrowhead replacing edge near--far acquires on near's side:
// the sum over arrowheads t beyond `far` of m_t times the linking number,
// measured inside far's side, between t and the arrowhead left at `far`.
inline Integer cut_multiplicity(const SpliceDiagram& d, std::size_t near, std::size_t far) {
    Integer total = 0;
    for (std::size_t t : side_of(d, far, near)) {
        if (d.vertex(t).kind != VertexKind::arrowhead) continue;
        const Integer& m = d.vertex(t).multiplicity;
        if (m == 0) continue;
        total += m * off_path_product(d, tree_path(d, far, t), near);
    }
    return total;
}

}  // namespace detail

/// Linking number: product of the weights adjacent to, but not on, the v--w path.
inline Integer linking_number(const SpliceDiagram& d, std::string_view v, std::string_view w) {
    if (v == w) throw DomainError("linking_number: endpoints coincide ('" + std::string(v) + "')");
    return detail::linking_number(d, d.index_of(v), d.index_of(w));
}

/// Sum over arrowheads a of m_a * lk(a, v). For an arrowhead, its own label.
inline Integer vertex_multiplicity(const SpliceDiagram& d, std::string_view v) {
    return detail::multiplicity(d, d.index_of(v));
}

struct Nearest {
    VertexId node;
    Integer weight;  // weight of the connecting edge at the node end
};

/// Nearest node and nearest weight of a leaf or arrowhead.
inline Nearest nearest(const SpliceDiagram& d, std::string_view v) {
    const std::size_t i = d.index_of(v);
    if (d.vertex(i).kind == VertexKind::node) throw DomainError("nearest: '" + std::string(v) + "' is a node");
    if (d.valency(i) != 1)
        throw DomainError("nearest: '" + std::string(v) + "' has valency " + std::to_string(d.valency(i)));
    const Incidence& inc = d.incident(i).front();
    return {d.vertex(inc.neighbor).id, inc.far_weight};
}

/// d_v: the product of adjacent weights for a node, d_w / d_we^2 otherwise.
inline Rational vertex_weight(const SpliceDiagram& d, std::string_view v) {
    const std::size_t i = d.index_of(v);
    if (d.vertex(i).kind == VertexKind::node) return Rational(detail::node_weight(d, i));
    const Nearest n = nearest(d, v);
    return Rational(detail::node_weight(d, d.index_of(n.node)), n.weight * n.weight);
}

struct ValidationReport {
    std::vector<std::string> structural_errors;
    std::vector<VertexId> bad_leaves;
    bool is_almost_minimal = false;
    bool is_link = false;
    std::size_t arrowhead_count_nonzero = 0;

    bool valid() const noexcept { return structural_errors.empty(); }
};

namespace detail {

inline std::vector<std::string> structural_errors(const SpliceDiagram& d) {
    std::vector<std::string> errors;
    const auto& vs = d.vertices();
    if (vs.empty()) {
        errors.emplace_back("diagram has no vertices");
        return errors;
    }
    if (d.indices_of(VertexKind::node).empty()) errors.emplace_back("diagram has no node");

    std::set<std::pair<std::string, std::string>> seen_pairs;
    for (const Edge& e : d.edges()) {
        const std::string where = "edge " + e.end_a + "--" + e.end_b;
        if (e.weight_a < 1 || e.weight_b < 1) errors.push_back(where + ": weights must be positive integers");
        if (!seen_pairs.emplace(e.end_a, e.end_b).second) errors.push_back(where + ": repeated edge");
    }

    // Tree: connected with |E| = |V| - 1.
    if (d.edges().size() + 1 != vs.size())
        errors.push_back("not a tree: " + std::to_string(vs.size()) + " vertices but " +
                         std::to_string(d.edges().size()) + " edges");
    if (side_of(d, 0, 0).size() != vs.size()) errors.emplace_back("not connected");

    for (std::size_t i = 0; i < vs.size(); ++i) {
        const Vertex& v = vs[i];
        const std::size_t nu = d.valency(i);
        if (v.kind == VertexKind::node) {
            if (nu < 3)
                errors.push_back("node '" + v.id + "' has valency " + std::to_string(nu) + " (nodes need at least 3)");
            std::size_t big = 0;
            const auto& inc = d.incident(i);
            for (std::size_t x = 0; x < inc.size(); ++x) {
                if (inc[x].near_weight > 1) ++big;
                for (std::size_t y = x + 1; y < inc.size(); ++y) {
                    if (inc[x].near_weight >= 1 && inc[y].near_weight >= 1 &&
                        gcd(inc[x].near_weight, inc[y].near_weight) != 1)
                        errors.push_back("node '" + v.id + "': weights " + inc[x].near_weight.str() + " and " +
                                         inc[y].near_weight.str() + " are not coprime");
                }
            }
            if (big > 2)
                errors.push_back("node '" + v.id + "' has " + std::to_string(big) +
                                 " weights greater than 1 (at most 2 allowed in S^3)");
        } else {
            if (nu != 1) {
                errors.push_back(std::string(to_string(v.kind)) + " '" + v.id + "' has valency " + std::to_string(nu) +
                                 " (expected 1)");
                continue;
            }
            const Incidence& inc = d.incident(i).front();
            if (inc.near_weight != 1)
                errors.push_back(std::string(to_string(v.kind)) + " '" + v.id + "': weight at its end must be 1");
            if (d.vertex(inc.neighbor).kind != VertexKind::node)
                errors.push_back(std::string(to_string(v.kind)) + " '" + v.id + "' is not attached to a node");
        }
    }
    return errors;
}

// Whether the splice component around node `w` has the shape of Gamma(1, b).
inline bool component_is_trivial_elementary(const SpliceDiagram& d, std::size_t w) {
    const auto& inc = d.incident(w);
    if (inc.size() != 3) return false;
    std::size_t leaves = 0;
    std::vector<Integer> arrow_mults;
    for (const Incidence& x : inc) {
        if (x.near_weight != 1) return false;
        switch (d.vertex(x.neighbor).kind) {
            case VertexKind::leaf: ++leaves; break;
            case VertexKind::arrowhead: arrow_mults.push_back(d.vertex(x.neighbor).multiplicity); break;
            case VertexKind::node: arrow_mults.push_back(cut_multiplicity(d, w, x.neighbor)); break;
        }
    }
    return leaves == 1 && arrow_mults.size() == 2 && (arrow_mults[0] == 1 || arrow_mults[1] == 1);
}

}  // namespace detail

/// Structural checks, bad-leaf detection and link statistics.
inline ValidationReport validate(const SpliceDiagram& d) {
    ValidationReport r;
    r.structural_errors = detail::structural_errors(d);
    r.is_link = true;
    for (const Vertex& v : d.vertices()) {
        if (v.kind != VertexKind::arrowhead) continue;
        if (v.multiplicity != 1) r.is_link = false;
        if (v.multiplicity != 0) ++r.arrowhead_count_nonzero;
    }
    if (r.structural_errors.empty()) {
        for (std::size_t i : d.indices_of(VertexKind::leaf)) {
            const Incidence& inc = d.incident(i).front();
            if (inc.far_weight != 1) continue;
            if (!detail::component_is_trivial_elementary(d, inc.neighbor)) r.bad_leaves.push_back(d.vertex(i).id);
        }
    }
    r.is_almost_minimal = r.structural_errors.empty() && r.bad_leaves.empty();
    return r;
}

/// Single-node shapes that may draw the unknot or the Hopf link: all weights
/// 1, or fewer than two weights above 1 with at most two arrowheads.
inline bool is_exceptional_shape(const SpliceDiagram& d) {
    const auto nodes = d.indices_of(VertexKind::node);
    if (nodes.size() != 1) return false;
    std::size_t big = 0;
    for (const Incidence& inc : d.incident(nodes.front()))
        if (inc.near_weight > 1) ++big;
    return big == 0 || (big < 2 && d.indices_of(VertexKind::arrowhead).size() <= 2);
}

}  // namespace splice
