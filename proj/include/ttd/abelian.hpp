#pragma once

// Finitely generated abelian groups in invariant-factor form, presented
// relative to an ambient lattice so that concrete vectors (cocycles,
// cohomology coordinates) can be mapped to canonical coordinates and back.

#include <algorithm>
#include <memory>
#include <optional>
#include <vector>

#include "ttd/matrix.hpp"

namespace ttd {

class FgAbelianGroup {
public:
    FgAbelianGroup() = default;

    // Abstract group Z^rank (+) Z/d1 (+) ... with no ambient presentation.
    static FgAbelianGroup abstract(std::vector<Int> factors, std::size_t rank) {
        FgAbelianGroup g;
        g.factors_ = std::move(factors);
        g.free_rank_ = rank;
        std::size_t n = g.coord_dim();
        g.to_coords_ = IntMat::identity(n);
        g.lifts_ = IntMat::identity(n);
        g.ambient_dim_ = n;
        return g;
    }

    const std::vector<Int>& invariant_factors() const { return factors_; }
    std::size_t free_rank() const { return free_rank_; }
    std::size_t torsion_count() const { return factors_.size(); }
    std::size_t coord_dim() const { return factors_.size() + free_rank_; }
    std::size_t ambient_dim() const { return ambient_dim_; }
    bool is_trivial() const { return coord_dim() == 0; }

    bool same_type(const FgAbelianGroup& o) const {
        return factors_ == o.factors_ && free_rank_ == o.free_rank_;
    }

    Int order() const {  // 0 when infinite
        if (free_rank_ > 0) return 0;
        Int n(1);
        for (const auto& d : factors_) n *= d;
        return n;
    }

    // Torsion coordinate i reduced into [0, d_i); free coordinates untouched.
    std::vector<Int> reduce(std::vector<Int> c) const {
        if (c.size() != coord_dim()) throw ShapeError("reduce: coord length");
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            mpz_fdiv_r(c[i].get_mpz_t(), c[i].get_mpz_t(), factors_[i].get_mpz_t());
        }
        return c;
    }

    bool is_zero(const std::vector<Int>& c) const {
        auto r = reduce(c);
        return std::all_of(r.begin(), r.end(), [](const Int& x) { return x == 0; });
    }

    std::vector<Int> add(const std::vector<Int>& a, const std::vector<Int>& b) const {
        if (a.size() != b.size() || a.size() != coord_dim())
            throw ShapeError("add: coord length");
        std::vector<Int> c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
        return reduce(c);
    }

    std::vector<Int> neg(const std::vector<Int>& a) const {
        std::vector<Int> c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
        return reduce(c);
    }

    std::vector<Int> scale(const Int& n, const std::vector<Int>& a) const {
        std::vector<Int> c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) c[i] = n * a[i];
        return reduce(c);
    }

    std::vector<Int> zero() const { return std::vector<Int>(coord_dim(), Int(0)); }

    // Canonical coordinates of an ambient lattice vector.
    std::vector<Int> coords_of(const std::vector<Int>& ambient) const {
        if (ambient.size() != ambient_dim_)
            throw ShapeError("coords_of: ambient length");
        return reduce(to_coords_.mul_vec(ambient));
    }

    // Ambient representative of canonical coordinates.
    std::vector<Int> lift(const std::vector<Int>& coords) const {
        if (coords.size() != coord_dim()) throw ShapeError("lift: coord length");
        return lifts_.mul_vec(coords);
    }

    // Columns d_i * e_i: the relation lattice of the canonical coordinates.
    IntMat relation_matrix() const {
        IntMat r(coord_dim(), factors_.size());
        for (std::size_t i = 0; i < factors_.size(); ++i) r(i, i) = factors_[i];
        return r;
    }

    const IntMat& to_coords_matrix() const { return to_coords_; }
    const IntMat& lift_matrix() const { return lifts_; }

    // Internals set by the factory functions below.
    std::vector<Int> factors_;
    std::size_t free_rank_ = 0;
    std::size_t ambient_dim_ = 0;
    IntMat to_coords_;  // coord_dim x ambient_dim
    IntMat lifts_;      // ambient_dim x coord_dim
};

struct GroupElement {
    const FgAbelianGroup* group = nullptr;
    std::vector<Int> coords;

    bool operator==(const GroupElement& o) const {
        return group->reduce(coords) == o.group->reduce(o.coords);
    }
};

inline IntMat unimodular_inverse(const IntMat& u) {
    SmithResult s = smith_normal_form(u);
    for (std::size_t i = 0; i < u.rows(); ++i)
        if (s.D(i, i) != 1) throw ShapeError("unimodular_inverse: not unimodular");
    return s.V * s.U;
}

// Z^rows / column-lattice(M), canonical invariant-factor form, with
// coordinate maps relative to the ambient Z^rows.
inline FgAbelianGroup cokernel(const IntMat& m) {
    const std::size_t n = m.rows();
    SmithResult s = smith_normal_form(m);
    IntMat uinv = unimodular_inverse(s.U);

    std::vector<Int> diag(n, Int(0));
    for (std::size_t i = 0; i < std::min(n, m.cols()); ++i) diag[i] = s.D(i, i);

    std::vector<std::size_t> torsion_idx, free_idx;
    for (std::size_t i = 0; i < n; ++i) {
        if (diag[i] == 1) continue;
        if (diag[i] == 0)
            free_idx.push_back(i);
        else
            torsion_idx.push_back(i);
    }

    FgAbelianGroup g;
    for (auto i : torsion_idx) g.factors_.push_back(diag[i]);
    g.free_rank_ = free_idx.size();
    g.ambient_dim_ = n;
    std::size_t dim = g.coord_dim();
    g.to_coords_ = IntMat(dim, n);
    g.lifts_ = IntMat(n, dim);
    std::size_t row = 0;
    auto take = [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j) {
            g.to_coords_(row, j) = s.U(i, j);
            g.lifts_(j, row) = uinv(j, i);
        }
        ++row;
    };
    for (auto i : torsion_idx) take(i);
    for (auto i : free_idx) take(i);
    return g;
}

// <sub_generators> / (<extra_relations> + <ambient_relations> ∩ <sub>),
// all matrices sharing the ambient lattice dimension. The returned group's
// coords_of expects ambient vectors lying in the generated sublattice.
class Subquotient {
public:
    Subquotient() = default;
    Subquotient(const IntMat& ambient_relations, const IntMat& sub_generators,
                const IntMat& extra_relations) {
        const std::size_t n = sub_generators.rows();
        if ((ambient_relations.cols() && ambient_relations.rows() != n) ||
            (extra_relations.cols() && extra_relations.rows() != n))
            throw ShapeError("subquotient: ambient dimension mismatch");
        const std::size_t k = sub_generators.cols();
        solve_basis_ = sub_generators.hcat(extra_relations).hcat(ambient_relations);
        smith_ = std::make_shared<SmithResult>(smith_normal_form(solve_basis_));
        sub_ = sub_generators;
        // relations on the k sub generators: x with Sx in im([T R])
        std::size_t n2 = solve_basis_.cols();
        IntMat ker(n2, n2 - smith_->rank);
        for (std::size_t j = smith_->rank; j < n2; ++j)
            for (std::size_t i = 0; i < n2; ++i)
                ker(i, j - smith_->rank) = smith_->V(i, j);
        IntMat rel(k, ker.cols());
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < ker.cols(); ++j) rel(i, j) = ker(i, j);
        inner_ = cokernel(rel);

        group_ = FgAbelianGroup();
        group_.factors_ = inner_.invariant_factors();
        group_.free_rank_ = inner_.free_rank();
        group_.ambient_dim_ = n;
        // ambient -> coords goes through a Diophantine solve, so to_coords_
        // is not stored as a matrix; coords_of below overrides it.
        group_.to_coords_ = IntMat(group_.coord_dim(), 0);
        group_.lifts_ = sub_ * inner_.lift_matrix();
    }

    const FgAbelianGroup& group() const { return group_; }

    // Canonical coordinates of an ambient vector in <S> + <T> + <R>.
    std::optional<std::vector<Int>> coords_of(const std::vector<Int>& ambient) const {
        auto z = solve_presmithed(*smith_, ambient);
        if (!z) return std::nullopt;
        std::vector<Int> x(z->begin(), z->begin() + sub_.cols());
        return inner_.coords_of(x);
    }

    std::vector<Int> lift(const std::vector<Int>& coords) const {
        return group_.lifts_.mul_vec(coords);
    }

private:
    FgAbelianGroup group_;
    FgAbelianGroup inner_;  // Z^k / relations, k = number of sub generators
    IntMat sub_;
    IntMat solve_basis_;    // [S | T | R]
    std::shared_ptr<SmithResult> smith_;
};

inline FgAbelianGroup subquotient(const IntMat& ambient_relations,
                                  const IntMat& sub_generators,
                                  const IntMat& extra_relations) {
    return Subquotient(ambient_relations, sub_generators, extra_relations).group();
}

// Quotient of G by the subgroup generated by the given coordinate vectors.
// Result is presented over G's coordinate space: coords_of maps old
// coordinates to new, lift maps new generators to old coordinates.
inline FgAbelianGroup quotient_by(const FgAbelianGroup& g,
                                  const std::vector<std::vector<Int>>& gens) {
    IntMat cols = IntMat::from_cols(g.coord_dim(), gens);
    return cokernel(g.relation_matrix().hcat(cols));
}

// Kernel of the homomorphism A -> B given by matrix F on canonical
// coordinates (F: B.coord_dim x A.coord_dim). Returned as a subquotient
// whose ambient space is A's coordinate space.
inline Subquotient kernel_of_hom(const FgAbelianGroup& a, const FgAbelianGroup& b,
                                 const IntMat& f) {
    if (f.rows() != b.coord_dim() || f.cols() != a.coord_dim())
        throw ShapeError("kernel_of_hom: matrix shape");
    IntMat ker = kernel_lattice(f.hcat(b.relation_matrix()));
    IntMat lat(a.coord_dim(), ker.cols());
    for (std::size_t i = 0; i < a.coord_dim(); ++i)
        for (std::size_t j = 0; j < ker.cols(); ++j) lat(i, j) = ker(i, j);
    return Subquotient(a.relation_matrix(), lat, IntMat(a.coord_dim(), 0));
}

// Is v in the subgroup of G generated by the columns of M (G-coordinates)?
inline bool in_image(const FgAbelianGroup& g, const IntMat& m,
                     const std::vector<Int>& v) {
    return solve(m.hcat(g.relation_matrix()), v).has_value();
}

// M defines an endomorphism of G on canonical coordinates.
inline bool is_endomorphism(const FgAbelianGroup& g, const IntMat& m) {
    if (m.rows() != g.coord_dim() || m.cols() != g.coord_dim()) return false;
    for (std::size_t i = 0; i < g.torsion_count(); ++i) {
        std::vector<Int> c = m.col(i);
        for (auto& x : c) x *= g.invariant_factors()[i];
        if (!g.is_zero(c)) return false;
    }
    return true;
}

// Surjective endomorphisms of a finitely generated group are automorphisms.
inline bool is_automorphism(const FgAbelianGroup& g, const IntMat& m) {
    if (!is_endomorphism(g, m)) return false;
    IntMat ext = m.hcat(g.relation_matrix());
    for (std::size_t i = 0; i < g.coord_dim(); ++i) {
        std::vector<Int> e(g.coord_dim(), Int(0));
        e[i] = 1;
        if (!solve(ext, e)) return false;
    }
    return true;
}

// Multiplicative order of the action of M on G, or nullopt past `limit`.
inline std::optional<unsigned> order_of_action(const FgAbelianGroup& g,
                                               const IntMat& m, unsigned limit = 512) {
    IntMat p = IntMat::identity(g.coord_dim());
    for (unsigned k = 1; k <= limit; ++k) {
        p = m * p;
        bool ident = true;
        for (std::size_t j = 0; j < g.coord_dim() && ident; ++j) {
            std::vector<Int> c = p.col(j);
            c[j] -= 1;
            if (!g.is_zero(c)) ident = false;
        }
        if (ident) return k;
    }
    return std::nullopt;
}

// Full torsion subgroup crossed with free coordinates in [-bound, bound],
// lexicographic coordinate order.
inline std::vector<std::vector<Int>> enumerate_elements(const FgAbelianGroup& g,
                                                        long bound) {
    std::vector<std::vector<Int>> out;
    std::size_t dim = g.coord_dim();
    std::vector<Int> lo(dim), hi(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (i < g.torsion_count()) {
            lo[i] = 0;
            hi[i] = g.invariant_factors()[i] - 1;
        } else {
            lo[i] = -bound;
            hi[i] = bound;
        }
    }
    std::vector<Int> cur = lo;
    if (dim == 0) return {std::vector<Int>{}};
    while (true) {
        out.push_back(cur);
        std::size_t i = dim;
        while (i > 0) {
            --i;
            if (cur[i] < hi[i]) {
                ++cur[i];
                for (std::size_t j = i + 1; j < dim; ++j) cur[j] = lo[j];
                break;
            }
            if (i == 0) return out;
        }
    }
}

}  // namespace ttd
