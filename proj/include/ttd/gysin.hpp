#pragma once

// Cohomology of the total space of the circle bundle classified by
// c in H^2(X), kept as unresolved Gysin extension data: the cokernel
// piece im(pi^*) and the kernel piece hit by the fiber pushforward.

#include <vector>

#include "ttd/abelian.hpp"
#include "ttd/simplicial.hpp"

namespace ttd {

struct ContractError : std::logic_error {
    using std::logic_error::logic_error;
};

struct BundleData {
    SimplicialComplex base;
    std::vector<Int> c;  // H^2 canonical coordinates
};

// Matrix of cup-with-c from H^j(X) to H^{j+2}(X) in canonical bases.
inline IntMat cup_with_matrix(const SimplicialComplex& x, int j,
                              const std::vector<Int>& c) {
    const auto& src = x.cohomology(j).group;
    const auto& dst = x.cohomology(j + 2).group;
    IntMat m(dst.coord_dim(), src.coord_dim());
    for (std::size_t g = 0; g < src.coord_dim(); ++g) {
        std::vector<Int> e(src.coord_dim(), Int(0));
        e[g] = 1;
        m.set_col(g, cup_classes(x, j, e, 2, c));
    }
    return m;
}

// H^k(E) as extension data: 0 -> sub -> H^k(E) -> quot -> 0 with
// sub = coker(.cup c: H^{k-2} -> H^k) and quot = ker(.cup c: H^{k-1} -> H^{k+1}).
class GysinGroup {
public:
    GysinGroup() = default;
    GysinGroup(SimplicialComplex base, std::vector<Int> c, int degree)
        : base_(std::move(base)), c_(std::move(c)), degree_(degree) {
        const auto& h2 = base_.cohomology(2).group;
        if (c_.size() != h2.coord_dim())
            throw ContractError("gysin: c is not an H^2 coordinate vector");
        c_ = h2.reduce(c_);

        const auto& hk = base_.cohomology(degree_).group;
        IntMat below = cup_with_matrix(base_, degree_ - 2, c_);
        std::vector<std::vector<Int>> image_cols;
        for (std::size_t j = 0; j < below.cols(); ++j)
            image_cols.push_back(below.col(j));
        sub_ = quotient_by(hk, image_cols);

        const auto& hk1 = base_.cohomology(degree_ - 1).group;
        const auto& hkp1 = base_.cohomology(degree_ + 1).group;
        quot_ = kernel_of_hom(hk1, hkp1, cup_with_matrix(base_, degree_ - 1, c_));
    }

    const SimplicialComplex& base() const { return base_; }
    const std::vector<Int>& characteristic_class() const { return c_; }
    int degree() const { return degree_; }

    // coker(.cup c), presented over H^degree coordinates
    const FgAbelianGroup& sub() const { return sub_; }
    // ker(.cup c) as a subgroup of H^{degree-1}
    const Subquotient& quot() const { return quot_; }

    // pi^*: H^degree(X) coordinates -> sub coordinates
    std::vector<Int> project_sub(const std::vector<Int>& hk_coords) const {
        return sub_.coords_of(hk_coords);
    }

    // inclusion of quot coordinates back into H^{degree-1}(X)
    std::vector<Int> quot_lift(const std::vector<Int>& q) const {
        const auto& hk1 = base_.cohomology(degree_ - 1).group;
        return hk1.reduce(quot_.lift(q));
    }

    bool same_bundle(const GysinGroup& o) const {
        return base_.same_complex(o.base_) && c_ == o.c_;
    }

private:
    SimplicialComplex base_;
    std::vector<Int> c_;
    int degree_ = 0;
    FgAbelianGroup sub_;
    Subquotient quot_;
};

// An H-flux class in H^3(E): q = pi_!(H) in quot coordinates of the
// degree-3 Gysin data, s = the pi^*-part in sub coordinates.
struct FluxElement {
    GysinGroup bundle;  // degree-3 Gysin data of (X, c)
    std::vector<Int> q;
    std::vector<Int> s;
};

inline GysinGroup gysin_group(const SimplicialComplex& x,
                              const std::vector<Int>& c, int degree) {
    return GysinGroup(x, c, degree);
}

inline FluxElement make_flux(const SimplicialComplex& x, const std::vector<Int>& c,
                             std::vector<Int> q, std::vector<Int> s) {
    GysinGroup g(x, c, 3);
    if (q.size() != g.quot().group().coord_dim() || s.size() != g.sub().coord_dim())
        throw ContractError("make_flux: coordinate size mismatch");
    q = g.quot().group().reduce(std::move(q));
    s = g.sub().reduce(std::move(s));
    return FluxElement{std::move(g), std::move(q), std::move(s)};
}

// d = pi_!(H), an element of ker(.cup c) inside H^2(X).
inline GroupElement pushforward(const FluxElement& h) {
    const auto& h2 = h.bundle.base().cohomology(2).group;
    return GroupElement{&h2, h.bundle.quot_lift(h.q)};
}

// pi^* of a base class w in H^3(X): a flux with no pushforward part.
inline FluxElement pullback(const SimplicialComplex& x, const std::vector<Int>& c,
                            const std::vector<Int>& w) {
    GysinGroup g(x, c, 3);
    if (w.size() != x.cohomology(3).group.coord_dim())
        throw ContractError("pullback: w is not an H^3 coordinate vector");
    std::vector<Int> q(g.quot().group().coord_dim(), Int(0));
    return FluxElement{g, std::move(q), g.project_sub(w)};
}

// h + pi^*(w); only pi^*-images are ever added, so the unresolved
// extension never has to be split.
inline FluxElement add_pullback(const FluxElement& h, const std::vector<Int>& w) {
    FluxElement r = h;
    r.s = h.bundle.sub().add(r.s, h.bundle.project_sub(w));
    return r;
}

}  // namespace ttd
