#pragma once

// JSON document formats for complexes, simplicial maps, homeomorphisms and
// pair-class records, plus the basis version hash embedded in every output
// so coordinate files from a different basis are rejected.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "ttd/moduli.hpp"

namespace ttd {

using nlohmann::json;

inline std::uint64_t fnv1a64(const std::string& s, std::uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// Hash of everything the canonical generator bases depend on: the vertex
// order and the full simplex sets, plus a format version tag.
inline std::string basis_hash(const SimplicialComplex& x) {
    std::string buf = "ttd.basis.v1|" + x.name() + "|";
    for (const auto& v : x.vertex_labels()) buf += v + ";";
    for (int k = 0; k <= x.dim(); ++k) {
        buf += "|k" + std::to_string(k) + ":";
        for (const auto& s : x.simplices(k)) {
            for (int v : s) buf += std::to_string(v) + ",";
            buf += ";";
        }
    }
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(buf)));
    return std::string(hex);
}

// ---------------------------------------------------------------------
// complexes and maps

inline SimplicialComplex complex_from_json(const json& j) {
    if (!j.is_object() || !j.contains("name") || !j.contains("vertices") ||
        !j.contains("facets"))
        throw ValidationError("complex document needs name, vertices, facets");
    return SimplicialComplex(j.at("name").get<std::string>(),
                             j.at("vertices").get<std::vector<std::string>>(),
                             j.at("facets").get<std::vector<std::vector<std::string>>>());
}

inline json complex_to_json(const SimplicialComplex& x) {
    json facets = json::array();
    for (const auto& f : x.facets()) {
        json labels = json::array();
        for (int v : f) labels.push_back(x.vertex_labels()[v]);
        facets.push_back(labels);
    }
    return json{{"name", x.name()},
                {"vertices", x.vertex_labels()},
                {"facets", facets}};
}

inline SimplicialMap map_from_json(const json& j, const SimplicialComplex& source,
                                   const SimplicialComplex& target) {
    if (!j.is_object() || !j.contains("source") || !j.contains("target") ||
        !j.contains("vertex_map"))
        throw ValidationError("map document needs source, target, vertex_map");
    if (j.at("source").get<std::string>() != source.name())
        throw ValidationError("map source '" + j.at("source").get<std::string>() +
                              "' does not match complex '" + source.name() + "'");
    if (j.at("target").get<std::string>() != target.name())
        throw ValidationError("map target '" + j.at("target").get<std::string>() +
                              "' does not match complex '" + target.name() + "'");
    return SimplicialMap(source, target,
                         j.at("vertex_map").get<std::map<std::string, std::string>>());
}

// ---------------------------------------------------------------------
// matrices and homeos

inline IntMat mat_from_json(const json& j) {
    auto rows = j.get<std::vector<std::vector<long>>>();
    return IntMat::from_rows(rows);
}

inline json mat_to_json(const IntMat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(i, c).get_str());
        rows.push_back(row);
    }
    return rows;
}

inline HomeoData homeo_from_json(const SimplicialComplex& x, const json& j) {
    if (!j.is_object() || !j.contains("name") || !j.contains("kind"))
        throw ValidationError("homeo document needs name and kind");
    std::string name = j.at("name").get<std::string>();
    std::string kind = j.at("kind").get<std::string>();
    std::optional<long> order;
    if (j.contains("order")) order = j.at("order").get<long>();
    if (kind == "simplicial") {
        if (!j.contains("vertex_map"))
            throw ValidationError("simplicial homeo document needs vertex_map");
        SimplicialMap f(x, x,
                        j.at("vertex_map").get<std::map<std::string, std::string>>());
        return homeo_from_simplicial(x, name, f, order);
    }
    if (kind == "matrices") {
        for (const char* key : {"m1", "m2", "m3"})
            if (!j.contains(key))
                throw ValidationError(std::string("matrix homeo document needs ") + key);
        std::optional<IntMat> m4;
        if (j.contains("m4")) m4 = mat_from_json(j.at("m4"));
        return homeo_from_matrices(x, name, mat_from_json(j.at("m1")),
                                   mat_from_json(j.at("m2")),
                                   mat_from_json(j.at("m3")), m4, order);
    }
    throw ValidationError("homeo kind must be 'simplicial' or 'matrices'");
}

// ---------------------------------------------------------------------
// pair-class records

inline json coords_to_json(const std::vector<Int>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.get_str());
    return a;
}

inline std::vector<Int> coords_from_json(const json& j) {
    std::vector<Int> v;
    for (const auto& e : j) {
        if (e.is_number_integer())
            v.emplace_back(static_cast<long>(e.get<long>()));
        else
            v.emplace_back(e.get<std::string>());
    }
    return v;
}

inline json group_shape_to_json(const FgAbelianGroup& g) {
    json torsion = json::array();
    for (const auto& d : g.invariant_factors()) torsion.push_back(d.get_str());
    return json{{"rank", g.free_rank()}, {"torsion", torsion}};
}

inline json pair_to_json(const PairClass& p) {
    return json{{"complex", p.base.name()},
                {"basis_hash", basis_hash(p.base)},
                {"c", coords_to_json(p.c)},
                {"d", coords_to_json(p.d)},
                {"t", coords_to_json(p.t)},
                {"t_group", group_shape_to_json(p.t_group.group())}};
}

inline PairClass pair_from_json(const json& j, const SimplicialComplex& x) {
    for (const char* key : {"complex", "basis_hash", "c", "d", "t", "t_group"})
        if (!j.contains(key))
            throw ValidationError(std::string("pair record needs field ") + key);
    if (j.at("complex").get<std::string>() != x.name())
        throw ValidationError("pair record is for complex '" +
                              j.at("complex").get<std::string>() + "', not '" +
                              x.name() + "'");
    if (j.at("basis_hash").get<std::string>() != basis_hash(x))
        throw ValidationError(
            "basis hash mismatch: the record was written against a different "
            "generator basis of '" + x.name() + "'");
    PairClass p = make_pair_class(x, coords_from_json(j.at("c")),
                                  coords_from_json(j.at("d")),
                                  coords_from_json(j.at("t")));
    json shape = group_shape_to_json(p.t_group.group());
    if (shape != j.at("t_group"))
        throw ValidationError("pair record t_group does not match T(c,d)");
    return p;
}

}  // namespace ttd
