#pragma once

// Exact integer matrices over GMP integers, with Smith normal form,
// kernel lattices and linear Diophantine solving. Row-major, dense.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ttd {

using Int = mpz_class;

struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class IntMat {
public:
    IntMat() : rows_(0), cols_(0) {}
    IntMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}
    IntMat(std::size_t rows, std::size_t cols, std::vector<Int> entries)
        : rows_(rows), cols_(cols), e_(std::move(entries)) {
        if (e_.size() != rows_ * cols_)
            throw ShapeError("IntMat: entry count does not match shape");
    }
    static IntMat from_rows(const std::vector<std::vector<long>>& rows) {
        std::size_t r = rows.size();
        std::size_t c = r ? rows[0].size() : 0;
        IntMat m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c)
                throw ShapeError("IntMat::from_rows: ragged rows");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }
    static IntMat identity(std::size_t n) {
        IntMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static IntMat zero(std::size_t r, std::size_t c) { return IntMat(r, c); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const {
        return e_[i * cols_ + j];
    }

    bool operator==(const IntMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const IntMat& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& x : e_)
            if (x != 0) return false;
        return true;
    }

    IntMat transpose() const {
        IntMat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    IntMat operator*(const IntMat& o) const {
        if (cols_ != o.rows_) throw ShapeError("IntMat: product shape mismatch");
        IntMat p(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Int& a = (*this)(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    p(i, j) += a * o(k, j);
            }
        return p;
    }

    IntMat operator+(const IntMat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw ShapeError("IntMat: sum shape mismatch");
        IntMat s(rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) s.e_[i] = e_[i] + o.e_[i];
        return s;
    }

    IntMat operator-() const {
        IntMat s(rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) s.e_[i] = -e_[i];
        return s;
    }

    std::vector<Int> mul_vec(const std::vector<Int>& v) const {
        if (v.size() != cols_) throw ShapeError("IntMat: vector length mismatch");
        std::vector<Int> r(rows_, Int(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    std::vector<Int> col(std::size_t j) const {
        std::vector<Int> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    void set_col(std::size_t j, const std::vector<Int>& v) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

    // Columns of `o` appended on the right.
    IntMat hcat(const IntMat& o) const {
        if (rows_ != o.rows_ && cols_ != 0 && o.cols_ != 0)
            throw ShapeError("IntMat: hcat row mismatch");
        std::size_t r = cols_ ? rows_ : o.rows_;
        IntMat m(r, cols_ + o.cols_);
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
            for (std::size_t j = 0; j < o.cols_; ++j) m(i, cols_ + j) = o(i, j);
        }
        return m;
    }

    static IntMat from_cols(std::size_t rows, const std::vector<std::vector<Int>>& cols) {
        IntMat m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows) throw ShapeError("IntMat::from_cols: bad column");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Int> e_;
};

struct SmithResult {
    IntMat U;  // rows x rows, unimodular
    IntMat D;  // rows x cols, diagonal, nonnegative, D[i,i] | D[i+1,i+1]
    IntMat V;  // cols x cols, unimodular
    std::size_t rank = 0;

    std::vector<Int> diagonal() const {
        std::size_t n = std::min(D.rows(), D.cols());
        std::vector<Int> d(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = D(i, i);
        return d;
    }
};

// Smith normal form U*M*V = D. Pivot rule: smallest nonzero absolute
// value in the working submatrix, ties broken by lowest row then lowest
// column index, so generator bases are reproducible across runs.
inline SmithResult smith_normal_form(const IntMat& m) {
    const std::size_t R = m.rows(), C = m.cols();
    SmithResult res{IntMat::identity(R), m, IntMat::identity(C), 0};
    IntMat& D = res.D;
    IntMat& U = res.U;
    IntMat& V = res.V;

    auto swap_rows = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < C; ++j) std::swap(D(a, j), D(b, j));
        for (std::size_t j = 0; j < R; ++j) std::swap(U(a, j), U(b, j));
    };
    auto swap_cols = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < R; ++i) std::swap(D(i, a), D(i, b));
        for (std::size_t i = 0; i < C; ++i) std::swap(V(i, a), V(i, b));
    };
    // row[a] += q * row[b]
    auto add_row = [&](std::size_t a, std::size_t b, const Int& q) {
        for (std::size_t j = 0; j < C; ++j) D(a, j) += q * D(b, j);
        for (std::size_t j = 0; j < R; ++j) U(a, j) += q * U(b, j);
    };
    auto add_col = [&](std::size_t a, std::size_t b, const Int& q) {
        for (std::size_t i = 0; i < R; ++i) D(i, a) += q * D(i, b);
        for (std::size_t i = 0; i < C; ++i) V(i, a) += q * V(i, b);
    };
    auto negate_row = [&](std::size_t a) {
        for (std::size_t j = 0; j < C; ++j) D(a, j) = -D(a, j);
        for (std::size_t j = 0; j < R; ++j) U(a, j) = -U(a, j);
    };

    std::size_t t = 0;
    while (t < R && t < C) {
        // locate pivot
        bool found = false;
        std::size_t pi = t, pj = t;
        Int best;
        for (std::size_t i = t; i < R; ++i)
            for (std::size_t j = t; j < C; ++j) {
                if (D(i, j) == 0) continue;
                Int a = abs(D(i, j));
                if (!found || a < best) {
                    found = true;
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        swap_rows(t, pi);
        swap_cols(t, pj);

        bool clean = true;
        for (std::size_t i = t + 1; i < R; ++i) {
            if (D(i, t) == 0) continue;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
            add_row(i, t, -q);
            if (D(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < C; ++j) {
            if (D(t, j) == 0) continue;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
            add_col(j, t, -q);
            if (D(t, j) != 0) clean = false;
        }
        if (!clean) continue;  // pivot shrank, rerun selection

        // fold back any entry the pivot does not divide
        bool divides = true;
        for (std::size_t i = t + 1; i < R && divides; ++i)
            for (std::size_t j = t + 1; j < C && divides; ++j)
                if (D(i, j) % D(t, t) != 0) {
                    add_row(t, i, Int(1));
                    divides = false;
                }
        if (!divides) continue;

        if (D(t, t) < 0) negate_row(t);
        ++t;
    }
    res.rank = t;
    return res;
}

// Basis of {x in Z^cols : Mx = 0}, one column per basis vector.
inline IntMat kernel_lattice(const IntMat& m) {
    SmithResult s = smith_normal_form(m);
    std::size_t n = m.cols();
    IntMat k(n, n - s.rank);
    for (std::size_t j = s.rank; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) k(i, j - s.rank) = s.V(i, j);
    return k;
}

// One integer solution of Mx = b given a precomputed decomposition of M.
inline std::optional<std::vector<Int>> solve_presmithed(const SmithResult& s,
                                                        const std::vector<Int>& b) {
    std::size_t rows = s.D.rows(), cols = s.D.cols();
    if (b.size() != rows) throw ShapeError("solve: rhs length mismatch");
    std::vector<Int> c = s.U.mul_vec(b);
    std::vector<Int> y(cols, Int(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
        Int d = (i < std::min(rows, cols)) ? s.D(i, i) : Int(0);
        if (d == 0) {
            if (c[i] != 0) return std::nullopt;
        } else {
            if (c[i] % d != 0) return std::nullopt;
            y[i] = c[i] / d;
        }
    }
    return s.V.mul_vec(y);
}

// One integer solution of Mx = b, if any.
inline std::optional<std::vector<Int>> solve(const IntMat& m,
                                             const std::vector<Int>& b) {
    if (b.size() != m.rows()) throw ShapeError("solve: rhs length mismatch");
    SmithResult s = smith_normal_form(m);
    std::vector<Int> c = s.U.mul_vec(b);
    std::vector<Int> y(m.cols(), Int(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
        Int d = (i < std::min(m.rows(), m.cols())) ? s.D(i, i) : Int(0);
        if (d == 0) {
            if (c[i] != 0) return std::nullopt;
        } else {
            if (c[i] % d != 0) return std::nullopt;
            y[i] = c[i] / d;
        }
    }
    return s.V.mul_vec(y);
}

// |det| for square M, read off the Smith diagonal.
inline Int abs_det(const IntMat& m) {
    if (m.rows() != m.cols()) throw ShapeError("abs_det: matrix not square");
    SmithResult s = smith_normal_form(m);
    Int d(1);
    for (std::size_t i = 0; i < m.rows(); ++i) d *= s.D(i, i);
    return d;
}

// Membership of b in the column lattice of M.
inline bool in_column_lattice(const IntMat& m, const std::vector<Int>& b) {
    return solve(m, b).has_value();
}

}  // namespace ttd
