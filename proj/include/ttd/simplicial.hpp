#pragma once

// Finite ordered simplicial complexes with integral cohomology,
// Alexander-Whitney cup products, simplicial maps and mapping tori.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ttd/abelian.hpp"
#include "ttd/matrix.hpp"

namespace ttd {

struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

using Simplex = std::vector<int>;  // strictly increasing vertex indices

struct CohomologyBasis {
    int degree = 0;
    FgAbelianGroup group;
    // one representative cocycle (coefficient vector over the sorted
    // k-simplices) per canonical generator
    std::vector<std::vector<Int>> representatives;
    Subquotient presentation;  // ambient = C^k
    std::vector<std::string> generator_ids;  // "Hk:gN"
};

class SimplicialComplex {
public:
    SimplicialComplex() : data_(std::make_shared<Data>()) {}

    // Vertex array order defines the global total order. Facets are
    // vertex-label lists; all faces are derived.
    SimplicialComplex(std::string name, std::vector<std::string> vertices,
                      const std::vector<std::vector<std::string>>& facets)
        : data_(std::make_shared<Data>()) {
        Data& d = *data_;
        d.name = std::move(name);
        d.vertices = std::move(vertices);
        for (std::size_t i = 0; i < d.vertices.size(); ++i) {
            if (!d.index.emplace(d.vertices[i], static_cast<int>(i)).second)
                throw ValidationError("duplicate vertex label: " + d.vertices[i]);
        }
        std::set<Simplex> closed;
        for (std::size_t fi = 0; fi < facets.size(); ++fi) {
            const auto& f = facets[fi];
            if (f.empty())
                throw ValidationError("facet " + std::to_string(fi) + " is empty");
            Simplex s;
            for (const auto& label : f) {
                auto it = d.index.find(label);
                if (it == d.index.end())
                    throw ValidationError("facet " + std::to_string(fi) +
                                          " references unknown vertex: " + label);
                s.push_back(it->second);
            }
            std::sort(s.begin(), s.end());
            if (std::adjacent_find(s.begin(), s.end()) != s.end())
                throw ValidationError("facet " + std::to_string(fi) +
                                      " repeats a vertex");
            // close under faces
            for (unsigned mask = 1; mask < (1u << s.size()); ++mask) {
                Simplex face;
                for (std::size_t b = 0; b < s.size(); ++b)
                    if (mask & (1u << b)) face.push_back(s[b]);
                closed.insert(face);
            }
            d.facets.push_back(s);
        }
        for (const auto& s : closed) {
            int k = static_cast<int>(s.size()) - 1;
            if (k >= static_cast<int>(d.simplices.size()))
                d.simplices.resize(k + 1);
            d.simplices[k].push_back(s);
        }
        for (auto& level : d.simplices) std::sort(level.begin(), level.end());
        for (int k = 0; k < static_cast<int>(d.simplices.size()); ++k)
            for (std::size_t i = 0; i < d.simplices[k].size(); ++i)
                d.simplex_index[d.simplices[k][i]] = i;
    }

    const std::string& name() const { return data_->name; }
    const std::vector<std::string>& vertex_labels() const { return data_->vertices; }
    const std::vector<Simplex>& facets() const { return data_->facets; }
    int dim() const { return static_cast<int>(data_->simplices.size()) - 1; }

    std::size_t count(int k) const {
        if (k < 0 || k > dim()) return 0;
        return data_->simplices[k].size();
    }
    const std::vector<Simplex>& simplices(int k) const {
        static const std::vector<Simplex> none;
        if (k < 0 || k > dim()) return none;
        return data_->simplices[k];
    }
    std::optional<std::size_t> simplex_index(const Simplex& s) const {
        auto it = data_->simplex_index.find(s);
        if (it == data_->simplex_index.end()) return std::nullopt;
        return it->second;
    }
    std::optional<int> vertex_index(const std::string& label) const {
        auto it = data_->index.find(label);
        if (it == data_->index.end()) return std::nullopt;
        return it->second;
    }

    long euler_characteristic() const {
        long chi = 0;
        for (int k = 0; k <= dim(); ++k)
            chi += (k % 2 ? -1 : 1) * static_cast<long>(count(k));
        return chi;
    }

    // delta^k: C^k -> C^{k+1}; rows indexed by (k+1)-simplices.
    IntMat coboundary(int k) const {
        IntMat m(count(k + 1), count(k));
        const auto& top = simplices(k + 1);
        for (std::size_t r = 0; r < top.size(); ++r) {
            const Simplex& tau = top[r];
            for (std::size_t i = 0; i < tau.size(); ++i) {
                Simplex face;
                for (std::size_t j = 0; j < tau.size(); ++j)
                    if (j != i) face.push_back(tau[j]);
                auto idx = simplex_index(face);
                m(r, *idx) += (i % 2 ? -1 : 1);
            }
        }
        return m;
    }

    const CohomologyBasis& cohomology(int k) const {
        std::lock_guard<std::mutex> lock(data_->cache_mutex);
        auto it = data_->cohomology_cache.find(k);
        if (it != data_->cohomology_cache.end()) return it->second;

        CohomologyBasis basis;
        basis.degree = k;
        if (k < 0 || k > dim()) {
            basis.presentation = Subquotient(IntMat(count(std::max(k, 0)), 0),
                                             IntMat(count(std::max(k, 0)), 0),
                                             IntMat(count(std::max(k, 0)), 0));
            basis.group = basis.presentation.group();
        } else {
            IntMat cocycles = kernel_lattice(coboundary(k));
            IntMat coboundaries =
                (k == 0) ? IntMat(count(0), 0) : coboundary(k - 1);
            basis.presentation =
                Subquotient(IntMat(count(k), 0), cocycles, coboundaries);
            basis.group = basis.presentation.group();
            for (std::size_t g = 0; g < basis.group.coord_dim(); ++g) {
                std::vector<Int> e(basis.group.coord_dim(), Int(0));
                e[g] = 1;
                basis.representatives.push_back(basis.presentation.lift(e));
            }
        }
        for (std::size_t g = 0; g < basis.group.coord_dim(); ++g)
            basis.generator_ids.push_back("H" + std::to_string(k) + ":g" +
                                          std::to_string(g));
        return data_->cohomology_cache.emplace(k, std::move(basis)).first->second;
    }

    bool is_cocycle(int k, const std::vector<Int>& coeffs) const {
        if (coeffs.size() != count(k)) return false;
        auto d = coboundary(k).mul_vec(coeffs);
        return std::all_of(d.begin(), d.end(), [](const Int& x) { return x == 0; });
    }

    // Canonical H^k coordinates of a cocycle.
    std::vector<Int> class_of(int k, const std::vector<Int>& cocycle) const {
        if (!is_cocycle(k, cocycle))
            throw ValidationError("class_of: input is not a cocycle");
        auto c = cohomology(k).presentation.coords_of(cocycle);
        if (!c) throw ValidationError("class_of: cocycle outside kernel span");
        return *c;
    }

    // Cochain representative of canonical H^k coordinates.
    std::vector<Int> representative(int k, const std::vector<Int>& coords) const {
        const auto& basis = cohomology(k);
        std::vector<Int> r(count(k), Int(0));
        for (std::size_t g = 0; g < coords.size(); ++g)
            for (std::size_t i = 0; i < r.size(); ++i)
                r[i] += coords[g] * basis.representatives[g][i];
        return r;
    }

    bool same_complex(const SimplicialComplex& o) const { return data_ == o.data_; }

    // For each canonical generator e_j of H^q, the matrix of
    // (. cup e_j): H^p -> H^{p+q}. Lets class-level cup products run as
    // plain matrix arithmetic.
    const std::vector<IntMat>& cup_tensor(int p, int q) const {
        {
            std::lock_guard<std::mutex> lock(data_->cup_mutex);
            auto it = data_->cup_cache.find({p, q});
            if (it != data_->cup_cache.end()) return it->second;
        }
        const auto& bp = cohomology(p);
        const auto& bq = cohomology(q);
        const auto& br = cohomology(p + q);
        std::vector<IntMat> mats;
        for (std::size_t j = 0; j < bq.group.coord_dim(); ++j) {
            IntMat m(br.group.coord_dim(), bp.group.coord_dim());
            for (std::size_t i = 0; i < bp.group.coord_dim(); ++i) {
                std::vector<Int> prod(count(p + q), Int(0));
                if (p + q <= dim()) {
                    const auto& top = simplices(p + q);
                    for (std::size_t t = 0; t < top.size(); ++t) {
                        Simplex front(top[t].begin(), top[t].begin() + p + 1);
                        Simplex back(top[t].begin() + p, top[t].end());
                        prod[t] = bp.representatives[i][*simplex_index(front)] *
                                  bq.representatives[j][*simplex_index(back)];
                    }
                }
                m.set_col(i, class_of(p + q, prod));
            }
            mats.push_back(std::move(m));
        }
        std::lock_guard<std::mutex> lock(data_->cup_mutex);
        return data_->cup_cache.emplace(std::make_pair(p, q), std::move(mats))
            .first->second;
    }

private:
    struct Data {
        std::string name;
        std::vector<std::string> vertices;
        std::map<std::string, int> index;
        std::vector<Simplex> facets;
        std::vector<std::vector<Simplex>> simplices;  // by dimension, sorted
        std::map<Simplex, std::size_t> simplex_index;
        mutable std::mutex cache_mutex;
        mutable std::map<int, CohomologyBasis> cohomology_cache;
        mutable std::mutex cup_mutex;
        mutable std::map<std::pair<int, int>, std::vector<IntMat>> cup_cache;
    };
    std::shared_ptr<Data> data_;
};

struct Cocycle {
    int degree = 0;
    std::vector<Int> coefficients;
};

// Alexander-Whitney front-face/back-face product on cochains.
inline Cocycle cup(const SimplicialComplex& x, const Cocycle& a, const Cocycle& b) {
    if (!x.is_cocycle(a.degree, a.coefficients) ||
        !x.is_cocycle(b.degree, b.coefficients))
        throw ValidationError("cup: inputs must be cocycles");
    int p = a.degree, q = b.degree;
    Cocycle r{p + q, std::vector<Int>(x.count(p + q), Int(0))};
    const auto& top = x.simplices(p + q);
    for (std::size_t t = 0; t < top.size(); ++t) {
        const Simplex& tau = top[t];
        Simplex front(tau.begin(), tau.begin() + p + 1);
        Simplex back(tau.begin() + p, tau.end());
        auto fi = x.simplex_index(front);
        auto bi = x.simplex_index(back);
        r.coefficients[t] = a.coefficients[*fi] * b.coefficients[*bi];
    }
    return r;
}

// Cup product on cohomology classes given by canonical coordinates.
// Bilinear in the coordinates, so it runs off the cached cup tensor.
inline std::vector<Int> cup_classes(const SimplicialComplex& x, int p,
                                    const std::vector<Int>& a, int q,
                                    const std::vector<Int>& b) {
    const auto& tensor = x.cup_tensor(p, q);
    const auto& hr = x.cohomology(p + q).group;
    if (b.size() != tensor.size()) throw ShapeError("cup_classes: coord length");
    std::vector<Int> r = hr.zero();
    for (std::size_t j = 0; j < tensor.size(); ++j) {
        if (b[j] == 0) continue;
        auto col = tensor[j].mul_vec(a);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[j] * col[i];
    }
    return hr.reduce(r);
}

class SimplicialMap {
public:
    SimplicialMap() = default;
    SimplicialMap(SimplicialComplex source, SimplicialComplex target,
                  const std::map<std::string, std::string>& vertex_map)
        : source_(std::move(source)), target_(std::move(target)) {
        vmap_.resize(source_.vertex_labels().size());
        for (std::size_t i = 0; i < vmap_.size(); ++i) {
            const std::string& label = source_.vertex_labels()[i];
            auto it = vertex_map.find(label);
            if (it == vertex_map.end())
                throw ValidationError("vertex_map misses vertex: " + label);
            auto t = target_.vertex_index(it->second);
            if (!t)
                throw ValidationError("vertex_map image unknown in target: " +
                                      it->second);
            vmap_[i] = *t;
        }
        // image of every simplex must span a simplex of the target
        for (int k = 0; k <= source_.dim(); ++k)
            for (const auto& s : source_.simplices(k)) {
                Simplex img;
                for (int v : s) img.push_back(vmap_[v]);
                std::sort(img.begin(), img.end());
                img.erase(std::unique(img.begin(), img.end()), img.end());
                if (!target_.simplex_index(img))
                    throw ValidationError(
                        "simplex image is not a simplex of the target");
            }
    }

    const SimplicialComplex& source() const { return source_; }
    const SimplicialComplex& target() const { return target_; }
    int apply_vertex(int v) const { return vmap_[v]; }

    bool is_injective_on_vertices() const {
        std::set<int> img(vmap_.begin(), vmap_.end());
        return img.size() == vmap_.size();
    }

    bool is_bijective_on_vertices() const {
        if (source_.vertex_labels().size() != target_.vertex_labels().size())
            return false;
        std::set<int> img(vmap_.begin(), vmap_.end());
        return img.size() == vmap_.size();
    }

    // Bijective vertex map whose facet image is a bijection on facets.
    bool is_homeomorphism_candidate() const {
        if (!is_bijective_on_vertices()) return false;
        std::set<Simplex> image;
        for (const auto& f : source_.facets()) {
            Simplex img;
            for (int v : f) img.push_back(vmap_[v]);
            std::sort(img.begin(), img.end());
            image.insert(img);
        }
        std::set<Simplex> target_facets(target_.facets().begin(),
                                        target_.facets().end());
        return image == target_facets;
    }

    // Cochain pullback matrix C^k(target) -> C^k(source).
    IntMat cochain_pullback(int k) const {
        IntMat m(source_.count(k), target_.count(k));
        const auto& src = source_.simplices(k);
        for (std::size_t r = 0; r < src.size(); ++r) {
            std::vector<int> img;
            for (int v : src[r]) img.push_back(vmap_[v]);
            // parity of the sort permutation; degenerate images give zero
            int sign = 1;
            bool degenerate = false;
            std::vector<int> sorted = img;
            for (std::size_t i = 0; i < sorted.size() && !degenerate; ++i)
                for (std::size_t j = i + 1; j < sorted.size(); ++j) {
                    if (sorted[i] == sorted[j]) {
                        degenerate = true;
                        break;
                    }
                    if (sorted[i] > sorted[j]) {
                        std::swap(sorted[i], sorted[j]);
                        sign = -sign;
                    }
                }
            if (degenerate) continue;
            auto idx = target_.simplex_index(sorted);
            if (idx) m(r, *idx) += sign;
        }
        return m;
    }

private:
    SimplicialComplex source_, target_;
    std::vector<int> vmap_;
};

// Matrix of f*: H^k(target) -> H^k(source) in canonical generator bases.
inline IntMat induced_map(const SimplicialMap& f, int k) {
    const auto& tgt = f.target().cohomology(k);
    const auto& src = f.source().cohomology(k);
    IntMat pull = f.cochain_pullback(k);
    IntMat m(src.group.coord_dim(), tgt.group.coord_dim());
    for (std::size_t j = 0; j < tgt.group.coord_dim(); ++j) {
        auto c = f.source().class_of(k, pull.mul_vec(tgt.representatives[j]));
        m.set_col(j, c);
    }
    return m;
}

// Mapping torus of a simplicial self-map, triangulated as three prism
// layers X x [t, t+1] with the last layer glued back through f. Three
// layers keep every prism simplex embedded for arbitrary f.
inline SimplicialComplex mapping_torus(const SimplicialComplex& x,
                                       const SimplicialMap& f) {
    if (!f.source().same_complex(x) || !f.target().same_complex(x))
        throw ValidationError("mapping_torus: map is not an endomorphism of X");
    auto layer_label = [&](int v, int t) {
        return x.vertex_labels()[v] + "@" + std::to_string(t);
    };
    std::vector<std::string> vertices;
    for (int t = 0; t < 3; ++t)
        for (std::size_t v = 0; v < x.vertex_labels().size(); ++v)
            vertices.push_back(layer_label(static_cast<int>(v), t));

    std::vector<std::vector<std::string>> facets;
    for (const auto& s : x.facets()) {
        for (int t = 0; t < 3; ++t) {
            int top = (t + 1) % 3;
            bool glued = (t == 2);
            for (std::size_t i = 0; i < s.size(); ++i) {
                std::vector<std::string> prism;
                std::set<std::string> seen;
                bool degenerate = false;
                for (std::size_t j = 0; j <= i; ++j)
                    prism.push_back(layer_label(s[j], t));
                for (std::size_t j = i; j < s.size(); ++j) {
                    int v = glued ? f.apply_vertex(s[j]) : s[j];
                    prism.push_back(layer_label(v, top));
                }
                for (const auto& l : prism)
                    if (!seen.insert(l).second) degenerate = true;
                if (!degenerate) facets.push_back(prism);
            }
        }
    }
    return SimplicialComplex(x.name() + "_mapping_torus", vertices, facets);
}

}  // namespace ttd
