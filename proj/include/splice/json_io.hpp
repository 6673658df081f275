#pragma once

// Diagram <-> JSON.
//
//   { "vertices": [ {"id": str, "kind": "node"|"leaf"|"arrowhead", "multiplicity": uint} ],
//     "edges":    [ {"ends": [str, str], "weights": [uint, uint]} ] }
//
// "multiplicity" appears on arrowheads only; "weights" defaults to [1, 1].
// Integers too large for 64 bits are written as decimal strings.

#include <json.hpp>

#include <string>
#include <string_view>

#include "splice/diagram.hpp"
#include "splice/error.hpp"
#include "splice/rational.hpp"

namespace splice {

using ordered_json = nlohmann::ordered_json;

namespace detail {

inline ordered_json integer_to_json(const Integer& x) {
    if (x >= 0 && x <= std::numeric_limits<std::uint64_t>::max()) return x.convert_to<std::uint64_t>();
    return x.str();
}

inline Integer json_to_uint(const nlohmann::json& j, const std::string& where) {
    if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
    if (j.is_number_integer()) {
        const auto v = j.get<std::int64_t>();
        if (v < 0) throw ParseError("expected a non-negative integer, got " + std::to_string(v), where);
        return Integer(v);
    }
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("expected a decimal integer string, got '" + s + "'", where);
        return Integer(s);
    }
    throw ParseError("expected a non-negative integer", where);
}

inline VertexKind parse_kind(const nlohmann::json& j, const std::string& where) {
    if (!j.is_string()) throw ParseError("\"kind\" must be a string", where);
    const auto s = j.get<std::string>();
    if (s == "node") return VertexKind::node;
    if (s == "leaf") return VertexKind::leaf;
    if (s == "arrowhead") return VertexKind::arrowhead;
    throw ParseError("unknown vertex kind '" + s + "'", where);
}

}  // namespace detail

inline ordered_json to_json(const SpliceDiagram& d) {
    ordered_json vertices = ordered_json::array();
    for (const Vertex& v : d.vertices()) {
        ordered_json jv;
        jv["id"] = v.id;
        jv["kind"] = std::string(to_string(v.kind));
        if (v.kind == VertexKind::arrowhead) jv["multiplicity"] = detail::integer_to_json(v.multiplicity);
        vertices.push_back(std::move(jv));
    }
    ordered_json edges = ordered_json::array();
    for (const Edge& e : d.edges()) {
        ordered_json je;
        je["ends"] = ordered_json::array({e.end_a, e.end_b});
        je["weights"] = ordered_json::array({detail::integer_to_json(e.weight_a), detail::integer_to_json(e.weight_b)});
        edges.push_back(std::move(je));
    }
    ordered_json out;
    out["vertices"] = std::move(vertices);
    out["edges"] = std::move(edges);
    return out;
}

/// Canonical text form: sorted vertices and edges, two-space indent, trailing newline.
inline std::string serialize(const SpliceDiagram& d) { return to_json(d).dump(2) + "\n"; }

inline SpliceDiagram from_json(const nlohmann::json& root) {
    if (!root.is_object()) throw ParseError("top level must be an object", "/");
    if (!root.contains("vertices") || !root["vertices"].is_array())
        throw ParseError("missing \"vertices\" array", "/vertices");
    if (root.contains("edges") && !root["edges"].is_array()) throw ParseError("\"edges\" must be an array", "/edges");

    std::vector<Vertex> vertices;
    std::set<VertexId> ids;
    const auto& jv = root["vertices"];
    for (std::size_t i = 0; i < jv.size(); ++i) {
        const std::string where = "/vertices/" + std::to_string(i);
        const auto& v = jv[i];
        if (!v.is_object()) throw ParseError("vertex must be an object", where);
        if (!v.contains("id") || !v["id"].is_string()) throw ParseError("missing string \"id\"", where + "/id");
        if (!v.contains("kind")) throw ParseError("missing \"kind\"", where + "/kind");
        Vertex vertex;
        vertex.id = v["id"].get<std::string>();
        vertex.kind = detail::parse_kind(v["kind"], where + "/kind");
        if (!ids.insert(vertex.id).second) throw ParseError("duplicate vertex id '" + vertex.id + "'", where + "/id");
        if (vertex.kind == VertexKind::arrowhead) {
            if (!v.contains("multiplicity"))
                throw ParseError("arrowhead needs a \"multiplicity\"", where + "/multiplicity");
            vertex.multiplicity = detail::json_to_uint(v["multiplicity"], where + "/multiplicity");
        } else if (v.contains("multiplicity")) {
            throw ParseError("only arrowheads carry a multiplicity", where + "/multiplicity");
        }
        vertices.push_back(std::move(vertex));
    }

    std::vector<Edge> edges;
    if (root.contains("edges")) {
        const auto& je = root["edges"];
        for (std::size_t i = 0; i < je.size(); ++i) {
            const std::string where = "/edges/" + std::to_string(i);
            const auto& e = je[i];
            if (!e.is_object()) throw ParseError("edge must be an object", where);
            if (!e.contains("ends") || !e["ends"].is_array() || e["ends"].size() != 2 || !e["ends"][0].is_string() ||
                !e["ends"][1].is_string())
                throw ParseError("\"ends\" must be two vertex ids", where + "/ends");
            Edge edge;
            edge.end_a = e["ends"][0].get<std::string>();
            edge.end_b = e["ends"][1].get<std::string>();
            for (int k = 0; k < 2; ++k) {
                const auto& id = k == 0 ? edge.end_a : edge.end_b;
                if (!ids.contains(id))
                    throw ParseError("edge end references unknown vertex '" + id + "'", where + "/ends/" + std::to_string(k));
            }
            if (edge.end_a == edge.end_b) throw ParseError("edge joins a vertex to itself", where + "/ends");
            if (e.contains("weights")) {
                const auto& w = e["weights"];
                if (!w.is_array() || w.size() != 2) throw ParseError("\"weights\" must have two entries", where + "/weights");
                edge.weight_a = detail::json_to_uint(w[0], where + "/weights/0");
                edge.weight_b = detail::json_to_uint(w[1], where + "/weights/1");
            }
            edges.push_back(std::move(edge));
        }
    }
    return SpliceDiagram(std::move(vertices), std::move(edges));
}

/// Throws ParseError (with a location) on malformed input.
inline SpliceDiagram parse_diagram(std::string_view text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), "byte " + std::to_string(e.byte));
    }
    return from_json(root);
}

}  // namespace splice
