#pragma once

#include <functional>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"

#include "crepant/datum_io.hpp"
#include "crepant/ehrhart.hpp"
#include "crepant/fan.hpp"
#include "crepant/simplex_builder.hpp"
#include "crepant/triangulation.hpp"

namespace crepant {

using Json = nlohmann::ordered_json;

/// Integers that fit in 64 bits become JSON numbers, larger ones decimal strings.
inline Json exact_json(const Integer& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return Json(static_cast<std::int64_t>(x));
    return Json(x.str());
}

/// Rationals are always strings ("3/7", "-2", "0").
inline Json exact_json(const Rational& x) { return Json(to_string(x)); }

template <class T>
Json exact_array(const std::vector<T>& v) {
    Json a = Json::array();
    for (const auto& x : v) {
        if constexpr (std::is_same_v<T, Integer> || std::is_same_v<T, Rational>)
            a.push_back(exact_json(x));
        else
            a.push_back(x);
    }
    return a;
}

inline Json datum_json(const SpecialDatum& datum) {
    Json j;
    j["dim"] = datum.d;
    Json sets = Json::array();
    for (const auto& [s, w] : datum.entries()) sets.push_back({{"set", s}, {"weight", w}});
    j["sets"] = sets;
    return j;
}

inline Json forest_json(const WatanabeForest& f) {
    std::function<Json(int)> rec = [&](int v) {
        const auto& n = f.node(v);
        Json j;
        j["set"] = n.indices();
        j["weight"] = n.weight;
        if (!n.leaf()) {
            j["parameter"] = {{"name", parameter_name(n)}, {"value", n.parameter}};
            Json kids = Json::array();
            for (int c : n.children) kids.push_back(rec(c));
            j["children"] = kids;
        }
        return j;
    };
    Json trees = Json::array();
    for (int r : f.roots) trees.push_back(rec(r));
    return trees;
}

/// Indented rendering: each vertex shows its set and weight; each internal vertex
/// shows the free parameter on the edges to its children.
inline std::string forest_text(const WatanabeForest& f) {
    std::ostringstream os;
    std::function<void(int, const std::string&, bool, bool)> rec = [&](int v, const std::string& prefix, bool last,
                                                                        bool root) {
        const auto& n = f.node(v);
        os << prefix;
        if (!root) os << (last ? "`-- " : "|-- ");
        os << "v" << format_set(n.indices()) << "  w=" << n.weight;
        if (!n.leaf()) os << "  edges " << parameter_name(n) << "=" << n.parameter;
        os << "\n";
        const std::string next = root ? prefix : prefix + (last ? "    " : "|   ");
        for (std::size_t i = 0; i < n.children.size(); ++i) rec(n.children[i], next, i + 1 == n.children.size(), false);
    };
    for (std::size_t i = 0; i < f.roots.size(); ++i) {
        if (i) os << "\n";
        rec(f.roots[i], "", true, true);
    }
    return os.str();
}

inline Json decomposition_json(const DecompositionNode& node) {
    Json j;
    switch (node.kind) {
        case DecompositionNode::Kind::point: j["kind"] = "point"; break;
        case DecompositionNode::Kind::join: j["kind"] = "join"; break;
        case DecompositionNode::Kind::dilation: j["kind"] = "dilation"; break;
    }
    j["indices"] = {node.first, node.last};
    if (node.kind == DecompositionNode::Kind::dilation) j["lambda"] = node.lambda;
    j["simplex"] = node.simplex;
    if (!node.translations.empty()) j["translations"] = node.translations;
    if (!node.children.empty()) {
        Json kids = Json::array();
        for (const auto& c : node.children) kids.push_back(decomposition_json(c));
        j["children"] = kids;
    }
    return j;
}

inline std::string decomposition_text(const DecompositionNode& node, int indent = 0) {
    std::string pad(static_cast<std::size_t>(2 * indent), ' ');
    std::ostringstream os;
    os << pad;
    switch (node.kind) {
        case DecompositionNode::Kind::point: os << "point"; break;
        case DecompositionNode::Kind::join: os << "join"; break;
        case DecompositionNode::Kind::dilation: os << "dilation by " << node.lambda; break;
    }
    os << " [" << node.first << ".." << node.last << "] dim " << node.dim() << "\n";
    for (const auto& c : node.children) os << decomposition_text(c, indent + 1);
    return os.str();
}

inline Json certificate_json(const Certificate& c) {
    Json basic;
    basic["ok"] = c.basic.ok;
    basic["ambient_volume"] = exact_json(c.basic.ambient_volume);
    basic["volume_sum"] = exact_json(c.basic.volume_sum);
    Json hist = Json::array();
    for (const auto& [det, n] : c.basic.determinant_histogram) hist.push_back({exact_json(det), n});
    basic["determinant_histogram"] = hist;
    basic["facets_ok"] = c.basic.facets_ok;
    basic["interior_walls"] = c.basic.interior_walls;
    basic["boundary_facets"] = c.basic.boundary_facets;
    if (!c.basic.failure.empty()) basic["failure"] = c.basic.failure;

    Json coherent;
    coherent["ok"] = c.coherent.ok;
    coherent["walls"] = c.coherent.walls;
    coherent["failing_walls"] = c.coherent.failing_walls;
    coherent["min_margin"] = c.coherent.min_margin ? exact_json(*c.coherent.min_margin) : Json(nullptr);
    if (!c.coherent.failure.empty()) coherent["failure"] = c.coherent.failure;

    Json balanced;
    balanced["ok"] = c.balanced.ok;
    balanced["edges_distinct"] = c.balanced.edges_distinct;
    balanced["all_colours"] = c.balanced.all_colours;
    balanced["bad_cells"] = c.balanced.bad_cells;

    return {{"overall", c.overall}, {"basic", basic}, {"coherent", coherent}, {"balanced", balanced}};
}

inline std::string certificate_text(const Certificate& c) {
    std::ostringstream os;
    os << "certificate: " << (c.overall ? "PASS" : "FAIL") << "\n";
    os << "  basic: " << (c.basic.ok ? "pass" : "fail") << " (volume " << c.basic.volume_sum << " of "
       << c.basic.ambient_volume << ", determinants";
    for (const auto& [det, n] : c.basic.determinant_histogram) os << " " << det << "x" << n;
    os << ")\n";
    os << "  coherent: " << (c.coherent.ok ? "pass" : "fail") << " (" << c.coherent.walls << " walls";
    if (c.coherent.min_margin) os << ", min margin " << *c.coherent.min_margin;
    os << ")\n";
    os << "  balanced: " << (c.balanced.ok ? "pass" : "fail") << " (" << c.balanced.bad_cells << " bad cells)\n";
    if (!c.basic.failure.empty()) os << "  basic failure: " << c.basic.failure << "\n";
    if (!c.coherent.failure.empty()) os << "  coherent failure: " << c.coherent.failure << "\n";
    return os.str();
}

inline Json epsilon_trace_json(const std::vector<EpsilonStep>& trace) {
    Json a = Json::array();
    for (const auto& s : trace)
        a.push_back({{"dim", s.dim},
                     {"lambda", s.lambda},
                     {"halvings", s.halvings},
                     {"epsilon", exact_json(s.epsilon)},
                     {"cross_walls", s.cross_walls}});
    return a;
}

inline Json triangulation_json(const Triangulation& t) {
    Json j;
    j["ambient_dim"] = t.n;
    j["dim"] = t.dim;
    j["vertex_count"] = t.vertex_count();
    j["cell_count"] = t.cell_count();
    Json verts = Json::array();
    for (std::size_t i = 0; i < t.vertex_count(); ++i) {
        Json v;
        v["coords"] = t.vertex(i);
        v["colour"] = t.colour[i];
        if (i < t.height.size()) v["height"] = exact_json(t.height[i]);
        verts.push_back(v);
    }
    j["vertices"] = verts;
    Json cells = Json::array();
    for (std::size_t c = 0; c < t.cell_count(); ++c) cells.push_back(t.cell(c));
    j["cells"] = cells;
    if (t.certificate) j["certificate"] = certificate_json(*t.certificate);
    return j;
}

inline Json fan_json(const ResolutionFan& f) {
    Json j;
    j["dim"] = f.d;
    Json rays = Json::array();
    for (const auto& r : f.rays) rays.push_back(exact_array(r));
    j["rays"] = rays;
    Json cones = Json::array();
    for (std::size_t c = 0; c < f.cone_count(); ++c) {
        std::vector<std::uint32_t> cone(f.cones.begin() + static_cast<std::ptrdiff_t>(c * static_cast<std::size_t>(f.d)),
                                        f.cones.begin() + static_cast<std::ptrdiff_t>((c + 1) * static_cast<std::size_t>(f.d)));
        cones.push_back(cone);
    }
    j["cones"] = cones;
    return j;
}

inline Json crepancy_json(const CrepancyWitness& w) {
    Json v = Json::array();
    for (const auto& [idx, sum] : w.violations) v.push_back({{"ray", idx}, {"coordinate_sum", exact_json(sum)}});
    return {{"ok", w.ok}, {"violations", v}};
}

inline Json smoothness_json(const SmoothnessWitness& w) {
    Json hist = Json::array();
    for (const auto& [m, n] : w.multiplicities) hist.push_back({exact_json(m), n});
    return {{"ok", w.ok}, {"multiplicities", hist}, {"singular_cones", w.singular_cones}};
}

inline Json group_json(const std::vector<GroupElement>& elems) {
    Json a = Json::array();
    for (const auto& e : elems) a.push_back({{"representative", exact_array(e.representative)}, {"age", e.age}});
    return a;
}

inline std::string vector_text(const RationalVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += to_string(v[i]);
    }
    return s + ")";
}

template <class T>
std::string vector_text(const std::vector<T>& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

inline Json cohomology_json(const CohomologyReport& r) {
    Json j;
    j["dim"] = r.d;
    j["a"] = exact_array(r.a);
    Json routes = Json::object();
    routes["brute_force"] = exact_array(r.brute_force);
    if (!r.inductive.empty()) routes["inductive"] = exact_array(r.inductive);
    if (r.triangulation) routes["triangulation"] = exact_array(*r.triangulation);
    j["delta"] = routes;
    j["routes"] = r.routes;
    Json betti = Json::array();
    for (std::size_t i = 0; i < r.dims.size(); ++i) betti.push_back({{"degree", 2 * i}, {"dim", exact_json(r.dims[i])}});
    j["betti"] = betti;
    j["euler"] = exact_json(r.euler);
    return j;
}

inline std::string cohomology_text(const CohomologyReport& r) {
    std::ostringstream os;
    os << "a-vector: " << vector_text(r.a) << "\n";
    os << "delta (brute force):    " << vector_text(r.brute_force) << "\n";
    if (!r.inductive.empty()) os << "delta (induction):      " << vector_text(r.inductive) << "\n";
    if (r.triangulation) os << "delta (h-vector):       " << vector_text(*r.triangulation) << "\n";
    os << "routes compared: " << r.routes.size() << "\n";
    for (std::size_t i = 0; i < r.dims.size(); ++i) os << "  dim H^" << 2 * i << " = " << r.dims[i] << "\n";
    os << "euler characteristic: " << r.euler << "\n";
    return os.str();
}

/// OFF export of a triangulation of dimension at most 3. Points are padded to three
/// coordinates. Dimension 3 cells contribute their boundary triangles, each once.
inline void write_off(std::ostream& os, const Triangulation& t) {
    if (t.dim > 3 || t.n > 3) throw DimensionMismatch("OFF export needs dimension at most 3, got " + std::to_string(t.dim));
    std::vector<std::vector<std::uint32_t>> faces;
    if (t.dim == 3) {
        std::set<std::vector<std::uint32_t>> seen;
        for (std::size_t c = 0; c < t.cell_count(); ++c) {
            auto cell = t.cell(c);
            for (std::size_t skip = 0; skip < 4; ++skip) {
                std::vector<std::uint32_t> f;
                for (std::size_t i = 0; i < 4; ++i)
                    if (i != skip) f.push_back(cell[i]);
                if (seen.insert(f).second) faces.push_back(f);
            }
        }
    } else {
        for (std::size_t c = 0; c < t.cell_count(); ++c) faces.push_back(t.cell(c));
    }
    os << "OFF\n" << t.vertex_count() << " " << faces.size() << " 0\n";
    for (std::size_t i = 0; i < t.vertex_count(); ++i) {
        auto v = t.vertex(i);
        v.resize(3, 0);
        os << v[0] << " " << v[1] << " " << v[2] << "\n";
    }
    for (const auto& f : faces) {
        os << f.size();
        for (auto x : f) os << " " << x;
        os << "\n";
    }
}

}  // namespace crepant
