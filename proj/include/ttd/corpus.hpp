#pragma once

// Built-in triangulations used by the tests and the bundled data files:
// spheres, tori, projective spaces, and the barycentric RP^3 model.

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ttd/simplicial.hpp"

namespace ttd::corpus {

inline SimplicialComplex circle(int n, const std::string& name = "circle") {
    std::vector<std::string> v;
    for (int i = 0; i < n; ++i) v.push_back("v" + std::to_string(i));
    std::vector<std::vector<std::string>> facets;
    for (int i = 0; i < n; ++i) facets.push_back({v[i], v[(i + 1) % n]});
    return SimplicialComplex(name, v, facets);
}

inline SimplicialComplex point() {
    return SimplicialComplex("point", {"p"}, {{"p"}});
}

// Boundary of the 3-simplex: the 4-vertex 2-sphere.
inline SimplicialComplex delta3_boundary() {
    return SimplicialComplex("S2_delta3", {"a", "b", "c", "d"},
                             {{"a", "b", "c"},
                              {"a", "b", "d"},
                              {"a", "c", "d"},
                              {"b", "c", "d"}});
}

// Octahedral 2-sphere, centrally symmetric; carries the antipodal map.
inline SimplicialComplex octahedron() {
    std::vector<std::string> v = {"px", "nx", "py", "ny", "pz", "nz"};
    std::vector<std::vector<std::string>> facets;
    for (const std::string x : {"px", "nx"})
        for (const std::string y : {"py", "ny"})
            for (const std::string z : {"pz", "nz"})
                facets.push_back({x, y, z});
    return SimplicialComplex("S2_octahedron", v, facets);
}

inline SimplicialMap octahedron_antipodal(const SimplicialComplex& oct) {
    std::map<std::string, std::string> m = {{"px", "nx"}, {"nx", "px"},
                                            {"py", "ny"}, {"ny", "py"},
                                            {"pz", "nz"}, {"nz", "pz"}};
    return SimplicialMap(oct, oct, m);
}

// The equatorial square px-py-nx-ny as its own 4-vertex circle.
inline SimplicialComplex octahedron_equator() {
    return SimplicialComplex("S1_equator", {"px", "nx", "py", "ny"},
                             {{"px", "py"}, {"py", "nx"}, {"nx", "ny"}, {"ny", "px"}});
}

inline SimplicialMap equator_inclusion(const SimplicialComplex& equator,
                                       const SimplicialComplex& oct) {
    std::map<std::string, std::string> m;
    for (const auto& l : equator.vertex_labels()) m[l] = l;
    return SimplicialMap(equator, oct, m);
}

// Csaszar 7-vertex torus.
inline SimplicialComplex torus7() {
    std::vector<std::string> v;
    for (int i = 0; i < 7; ++i) v.push_back("v" + std::to_string(i));
    std::vector<std::vector<std::string>> facets;
    for (int i = 0; i < 7; ++i) {
        facets.push_back({v[i], v[(i + 1) % 7], v[(i + 3) % 7]});
        facets.push_back({v[i], v[(i + 2) % 7], v[(i + 3) % 7]});
    }
    return SimplicialComplex("T2_csaszar", v, facets);
}

// Minimal 6-vertex real projective plane.
inline SimplicialComplex rp2_6() {
    std::vector<std::string> v;
    for (int i = 1; i <= 6; ++i) v.push_back("v" + std::to_string(i));
    auto t = [&](int a, int b, int c) {
        return std::vector<std::string>{v[a - 1], v[b - 1], v[c - 1]};
    };
    return SimplicialComplex(
        "RP2_6", v,
        {t(1, 2, 5), t(1, 2, 6), t(1, 3, 4), t(1, 3, 6), t(1, 4, 5),
         t(2, 3, 4), t(2, 3, 5), t(2, 4, 6), t(3, 5, 6), t(4, 5, 6)});
}

// Freudenthal triangulation of the 3-torus on the grid Z_3^3:
// 27 vertices, 162 tetrahedra.
inline SimplicialComplex torus3() {
    auto label = [](int x, int y, int z) {
        return "v" + std::to_string(x) + std::to_string(y) + std::to_string(z);
    };
    std::vector<std::string> v;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            for (int z = 0; z < 3; ++z) v.push_back(label(x, y, z));
    std::vector<std::vector<std::string>> facets;
    const std::array<std::array<int, 3>, 6> perms = {
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            for (int z = 0; z < 3; ++z)
                for (const auto& p : perms) {
                    int c[3] = {x, y, z};
                    std::vector<std::string> tet = {label(c[0], c[1], c[2])};
                    for (int step : p) {
                        c[step] = (c[step] + 1) % 3;
                        tet.push_back(label(c[0], c[1], c[2]));
                    }
                    facets.push_back(tet);
                }
    return SimplicialComplex("T3_freudenthal", v, facets);
}

// RP^3 = L(2,1): antipodal quotient of the barycentric subdivision of the
// 16-cell boundary sphere. 40 vertices, 192 tetrahedra.
inline SimplicialComplex rp3() {
    using Face = std::set<int>;  // signed axes: +1..+4, -1..-4
    std::vector<Face> faces;
    for (unsigned axes = 1; axes < 16; ++axes) {
        std::vector<int> used;
        for (int a = 0; a < 4; ++a)
            if (axes & (1u << a)) used.push_back(a + 1);
        for (unsigned signs = 0; signs < (1u << used.size()); ++signs) {
            Face f;
            for (std::size_t i = 0; i < used.size(); ++i)
                f.insert((signs & (1u << i)) ? -used[i] : used[i]);
            faces.push_back(f);
        }
    }
    auto negate = [](const Face& f) {
        Face n;
        for (int x : f) n.insert(-x);
        return n;
    };
    auto encode = [](const Face& f) {
        std::string s;
        for (int x : f) s += (x > 0 ? "p" : "n") + std::to_string(std::abs(x));
        return s;
    };
    // orbit label: lexicographically smaller encoding of {f, -f}
    auto orbit_label = [&](const Face& f) {
        std::string a = encode(f), b = encode(negate(f));
        return a < b ? a : b;
    };
    std::set<std::string> vertex_set;
    for (const auto& f : faces) vertex_set.insert(orbit_label(f));
    std::vector<std::string> vertices(vertex_set.begin(), vertex_set.end());

    auto subset = [](const Face& a, const Face& b) {
        return std::includes(b.begin(), b.end(), a.begin(), a.end());
    };
    std::set<std::vector<std::string>> facet_set;
    for (const auto& f1 : faces) {
        if (f1.size() != 1) continue;
        for (const auto& f2 : faces) {
            if (f2.size() != 2 || !subset(f1, f2)) continue;
            for (const auto& f3 : faces) {
                if (f3.size() != 3 || !subset(f2, f3)) continue;
                for (const auto& f4 : faces) {
                    if (f4.size() != 4 || !subset(f3, f4)) continue;
                    std::vector<std::string> tet = {orbit_label(f1), orbit_label(f2),
                                                    orbit_label(f3), orbit_label(f4)};
                    std::sort(tet.begin(), tet.end());
                    facet_set.insert(tet);
                }
            }
        }
    }
    std::vector<std::vector<std::string>> facets(facet_set.begin(), facet_set.end());
    return SimplicialComplex("RP3_L21", vertices, facets);
}

}  // namespace ttd::corpus
