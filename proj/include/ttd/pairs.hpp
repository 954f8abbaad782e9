#pragma once

// Classification of (circle bundle, H-flux) pairs over X up to
// Bunke-Schick isomorphism: the gauge-orbit action of H^1(X), the
// canonical (c, d, t) parametrization, the T-duality involution, and
// restriction to subcomplexes.

#include <algorithm>
#include <vector>

#include "ttd/gysin.hpp"

namespace ttd {

// T(c,d) = H^3(X) / (c cup H^1 + d cup H^1). The relation columns are
// deduplicated and sorted, so T(c,d) and T(d,c) have byte-identical
// canonical presentations.
class TQuotient {
public:
    TQuotient() = default;
    TQuotient(const SimplicialComplex& x, const std::vector<Int>& c,
              const std::vector<Int>& d)
        : base_(x) {
        const auto& h1 = x.cohomology(1).group;
        const auto& h3 = x.cohomology(3).group;
        std::vector<std::vector<Int>> cols;
        for (std::size_t i = 0; i < h1.coord_dim(); ++i) {
            std::vector<Int> e(h1.coord_dim(), Int(0));
            e[i] = 1;
            cols.push_back(h3.reduce(cup_classes(x, 2, c, 1, e)));
            cols.push_back(h3.reduce(cup_classes(x, 2, d, 1, e)));
        }
        std::sort(cols.begin(), cols.end());
        cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
        group_ = quotient_by(h3, cols);
    }

    // presented over H^3(X) canonical coordinates
    const FgAbelianGroup& group() const { return group_; }

    std::vector<Int> coords_of(const std::vector<Int>& h3_coords) const {
        return group_.coords_of(h3_coords);
    }
    std::vector<Int> lift(const std::vector<Int>& t) const {
        return base_.cohomology(3).group.reduce(group_.lift(t));
    }

    bool same_presentation(const TQuotient& o) const {
        return group_.invariant_factors() == o.group_.invariant_factors() &&
               group_.free_rank() == o.group_.free_rank() &&
               group_.to_coords_matrix() == o.group_.to_coords_matrix() &&
               group_.lift_matrix() == o.group_.lift_matrix();
    }

private:
    SimplicialComplex base_;
    FgAbelianGroup group_;
};

// Canonical representative of a Bunke-Schick isomorphism class of pairs.
struct PairClass {
    SimplicialComplex base;
    std::vector<Int> c;  // H^2 coordinates, reduced
    std::vector<Int> d;  // H^2 coordinates, reduced; [c cup d] = 0 in H^4
    TQuotient t_group;   // T(c, d)
    std::vector<Int> t;  // T(c,d) coordinates, reduced

    bool operator==(const PairClass& o) const {
        return base.same_complex(o.base) && c == o.c && d == o.d && t == o.t;
    }
    bool operator<(const PairClass& o) const {  // lexicographic (c, d, t)
        if (c != o.c) return c < o.c;
        if (d != o.d) return d < o.d;
        return t < o.t;
    }
};

inline PairClass make_pair_class(const SimplicialComplex& x, std::vector<Int> c,
                                 std::vector<Int> d, std::vector<Int> t) {
    const auto& h2 = x.cohomology(2).group;
    const auto& h4 = x.cohomology(4).group;
    c = h2.reduce(std::move(c));
    d = h2.reduce(std::move(d));
    if (!h4.is_zero(cup_classes(x, 2, c, 2, d)))
        throw ContractError("pair class requires [c cup d] = 0");
    TQuotient tq(x, c, d);
    if (t.size() != tq.group().coord_dim())
        throw ContractError("pair class: t coordinate size mismatch");
    t = tq.group().reduce(std::move(t));
    return PairClass{x, std::move(c), std::move(d), std::move(tq), std::move(t)};
}

// The H^1(X) gauge action h |-> h + pi^*(pi_!(h) cup a).
inline FluxElement gauge_act(const FluxElement& h, const std::vector<Int>& a) {
    const SimplicialComplex& x = h.bundle.base();
    const auto& h1 = x.cohomology(1).group;
    if (a.size() != h1.coord_dim())
        throw ContractError("gauge_act: a is not an H^1 coordinate vector");
    GroupElement d = pushforward(h);
    return add_pullback(h, cup_classes(x, 2, d.coords, 1, a));
}

// Canonicalize a flux over (X, c) to its class (c, d, t).
inline PairClass pair_class(const SimplicialComplex& x, const std::vector<Int>& c,
                            const FluxElement& h) {
    std::vector<Int> d = pushforward(h).coords;
    std::vector<Int> t_lift = h.bundle.sub().lift(h.s);
    TQuotient tq(x, x.cohomology(2).group.reduce(c), d);
    return make_pair_class(x, c, d, tq.coords_of(t_lift));
}

struct FiberClassification {
    Subquotient d_kernel;  // ker(.cup c: H^2 -> H^4) as a subgroup of H^2
    // one entry per sampled d: the d coordinates (in H^2) and T(c,d)
    std::vector<std::pair<std::vector<Int>, TQuotient>> fibers;
    std::vector<PairClass> window;  // explicit classes, empty when bound < 0
};

// Symbolic description of the fiber of P_0(X) over c, with an explicit
// window of representatives when bound >= 0.
inline FiberClassification classify_fiber(const SimplicialComplex& x,
                                          const std::vector<Int>& c,
                                          long bound = -1) {
    const auto& h2 = x.cohomology(2).group;
    const auto& h4 = x.cohomology(4).group;
    FiberClassification out;
    out.d_kernel = kernel_of_hom(h2, h4, cup_with_matrix(x, 2, c));
    if (bound < 0) return out;
    for (const auto& dk : enumerate_elements(out.d_kernel.group(), bound)) {
        std::vector<Int> d = h2.reduce(out.d_kernel.group().lift(dk));
        TQuotient tq(x, h2.reduce(c), d);
        for (const auto& t : enumerate_elements(tq.group(), bound))
            out.window.push_back(make_pair_class(x, c, d, t));
        out.fibers.emplace_back(d, std::move(tq));
    }
    std::sort(out.window.begin(), out.window.end());
    out.window.erase(std::unique(out.window.begin(), out.window.end()),
                     out.window.end());
    return out;
}

// The T-duality involution (c, d, t) -> (d, c, t). T(c,d) = T(d,c)
// canonically, so the t coordinates carry over unchanged.
inline PairClass t_dual(const PairClass& p) {
    return make_pair_class(p.base, p.d, p.c, p.t);
}

// Gauge transformations fixing the flux on the nose:
// {a in H^1(X) : d cup a lies in im(c cup . : H^1 -> H^3)}.
inline Subquotient gauge_stabilizer(const PairClass& p) {
    const SimplicialComplex& x = p.base;
    const auto& h1 = x.cohomology(1).group;
    const auto& h3 = x.cohomology(3).group;
    IntMat cup_d(h3.coord_dim(), h1.coord_dim());
    IntMat cup_c(h3.coord_dim(), h1.coord_dim());
    for (std::size_t i = 0; i < h1.coord_dim(); ++i) {
        std::vector<Int> e(h1.coord_dim(), Int(0));
        e[i] = 1;
        cup_d.set_col(i, cup_classes(x, 2, p.d, 1, e));
        cup_c.set_col(i, cup_classes(x, 2, p.c, 1, e));
    }
    IntMat ker = kernel_lattice(cup_d.hcat(-cup_c).hcat(h3.relation_matrix()));
    IntMat lat(h1.coord_dim(), ker.cols());
    for (std::size_t i = 0; i < h1.coord_dim(); ++i)
        for (std::size_t j = 0; j < ker.cols(); ++j) lat(i, j) = ker(i, j);
    return Subquotient(h1.relation_matrix(), lat, IntMat(h1.coord_dim(), 0));
}

// Pull a class back along an injective inclusion A -> X and
// re-canonicalize over A.
inline PairClass restrict_pair(const PairClass& p, const SimplicialMap& incl) {
    if (!incl.target().same_complex(p.base))
        throw ContractError("restrict: inclusion target is not the class base");
    if (!incl.is_injective_on_vertices())
        throw ContractError("restrict: map must be injective");
    IntMat m2 = induced_map(incl, 2);
    IntMat m3 = induced_map(incl, 3);
    const SimplicialComplex& a = incl.source();
    std::vector<Int> c = m2.mul_vec(p.c);
    std::vector<Int> d = m2.mul_vec(p.d);
    std::vector<Int> t_lift = m3.mul_vec(p.t_group.lift(p.t));
    TQuotient tq(a, a.cohomology(2).group.reduce(c),
                 a.cohomology(2).group.reduce(d));
    return make_pair_class(a, c, d, tq.coords_of(t_lift));
}

}  // namespace ttd
