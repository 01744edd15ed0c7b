#pragma once

#include "alpharep/field.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace alpharep {

/// Dense matrix over a shared FieldCtx, row major.  Values are immutable
/// inputs/outputs of the free functions below; nothing here mutates a
/// matrix it did not create.
class FqMatrix {
public:
    FqMatrix(const FieldCtx& f, std::size_t rows, std::size_t cols)
        : f_(f), rows_(rows), cols_(cols), a_(rows * cols, f.zero()) {}

    static FqMatrix identity(const FieldCtx& f, std::size_t n) {
        FqMatrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
        return m;
    }

    const FieldCtx& field() const { return f_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    FqElem& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    FqElem at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    friend bool operator==(const FqMatrix& x, const FqMatrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    FqMatrix transposed() const {
        FqMatrix t(f_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    FqMatrix mul(const FqMatrix& o) const {
        if (cols_ != o.rows_) throw input_error("matrix product dimension mismatch");
        FqMatrix r(f_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                FqElem x = at(i, k);
                if (f_.is_zero(x)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r.at(i, j) = f_.add(r.at(i, j), f_.mul(x, o.at(k, j)));
            }
        return r;
    }

    /// Submatrix keeping the given columns, in the given order.
    FqMatrix select_columns(const std::vector<std::size_t>& cols) const {
        FqMatrix r(f_, rows_, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j] >= cols_) throw input_error("column index out of range");
            for (std::size_t i = 0; i < rows_; ++i) r.at(i, j) = at(i, cols[j]);
        }
        return r;
    }

    FqMatrix select_rows(const std::vector<std::size_t>& rows) const {
        FqMatrix r(f_, rows.size(), cols_);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i] >= rows_) throw input_error("row index out of range");
            for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(rows[i], j);
        }
        return r;
    }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if (at(i, j) != at(j, i)) return false;
        return true;
    }

    std::size_t rank() const {
        FqMatrix w = *this;
        return w.eliminate();
    }

    FqElem det() const {
        if (rows_ != cols_) throw input_error("determinant of a non-square matrix");
        FqMatrix w = *this;
        const FieldCtx& f = f_;
        FqElem d = f.one();
        for (std::size_t k = 0; k < rows_; ++k) {
            std::size_t piv = k;
            while (piv < rows_ && f.is_zero(w.at(piv, k))) ++piv;
            if (piv == rows_) return f.zero();
            if (piv != k) {
                for (std::size_t j = 0; j < cols_; ++j)
                    std::swap(w.at(piv, j), w.at(k, j));
                d = f.neg(d);
            }
            d = f.mul(d, w.at(k, k));
            FqElem pinv = f.inv(w.at(k, k));
            for (std::size_t i = k + 1; i < rows_; ++i) {
                if (f.is_zero(w.at(i, k))) continue;
                FqElem factor = f.mul(w.at(i, k), pinv);
                for (std::size_t j = k; j < cols_; ++j)
                    w.at(i, j) = f.sub(w.at(i, j), f.mul(factor, w.at(k, j)));
            }
        }
        return d;
    }

private:
    // in-place forward elimination; returns the rank
    std::size_t eliminate() {
        const FieldCtx& f = f_;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t piv = r;
            while (piv < rows_ && f.is_zero(at(piv, c))) ++piv;
            if (piv == rows_) continue;
            if (piv != r)
                for (std::size_t j = 0; j < cols_; ++j) std::swap(at(piv, j), at(r, j));
            FqElem pinv = f.inv(at(r, c));
            for (std::size_t i = r + 1; i < rows_; ++i) {
                if (f.is_zero(at(i, c))) continue;
                FqElem factor = f.mul(at(i, c), pinv);
                for (std::size_t j = c; j < cols_; ++j)
                    at(i, j) = f.sub(at(i, j), f.mul(factor, at(r, j)));
            }
            ++r;
        }
        return r;
    }

    FieldCtx f_;
    std::size_t rows_, cols_;
    std::vector<FqElem> a_;
};

/// Result of the congruent diagonalization P C P^T = diag(d_1..d_r, 0..).
struct SymDiagResult {
    std::size_t rank = 0;
    std::vector<FqElem> diag; // the r nonzero diagonal values
    FqMatrix transform;       // invertible P

    explicit SymDiagResult(const FieldCtx& f, std::size_t n)
        : transform(FqMatrix::identity(f, n)) {}
};

/// Congruent diagonalization of a symmetric matrix over odd
/// characteristic.  Pivots on the first nonzero diagonal entry of the
/// remaining block; when the whole remaining diagonal is zero, the first
/// nonzero off-diagonal pair (i, j) gets row j and column j added to row
/// i and column i, which creates the pivot 2*C[i][j].  The scan order is
/// fixed, so the result is reproducible.
inline SymDiagResult sym_diagonalize(const FqMatrix& c0) {
    if (!c0.is_symmetric()) throw input_error("sym_diagonalize requires a symmetric matrix");
    const FieldCtx& f = c0.field();
    const std::size_t n = c0.rows();
    FqMatrix c = c0;
    SymDiagResult res(f, n);

    auto add_row_col = [&](std::size_t dst, std::size_t src, FqElem factor) {
        for (std::size_t j = 0; j < n; ++j)
            c.at(dst, j) = f.add(c.at(dst, j), f.mul(factor, c.at(src, j)));
        for (std::size_t i = 0; i < n; ++i)
            c.at(i, dst) = f.add(c.at(i, dst), f.mul(factor, c.at(i, src)));
        for (std::size_t j = 0; j < n; ++j)
            res.transform.at(dst, j) =
                f.add(res.transform.at(dst, j), f.mul(factor, res.transform.at(src, j)));
    };
    auto swap_row_col = [&](std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < n; ++j) std::swap(c.at(a, j), c.at(b, j));
        for (std::size_t i = 0; i < n; ++i) std::swap(c.at(i, a), c.at(i, b));
        for (std::size_t j = 0; j < n; ++j)
            std::swap(res.transform.at(a, j), res.transform.at(b, j));
    };

    std::size_t k = 0;
    while (k < n) {
        std::size_t piv = n;
        for (std::size_t j = k; j < n; ++j)
            if (!f.is_zero(c.at(j, j))) { piv = j; break; }
        if (piv == n) {
            std::size_t oi = n, oj = n;
            for (std::size_t i = k; i < n && oi == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (!f.is_zero(c.at(i, j))) { oi = i; oj = j; break; }
            if (oi == n) break; // remaining block is zero
            add_row_col(oi, oj, f.one());
            piv = oi;
        }
        if (piv != k) swap_row_col(piv, k);
        FqElem pinv = f.inv(c.at(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (f.is_zero(c.at(i, k))) continue;
            add_row_col(i, k, f.neg(f.mul(c.at(i, k), pinv)));
        }
        res.diag.push_back(c.at(k, k));
        ++k;
    }
    res.rank = res.diag.size();
    return res;
}

/// Rank and quadratic character of a symmetric matrix: the sign is
/// eta(d_1 * ... * d_r) of any congruent diagonal form, which equals
/// eta(det C_r) for every nonzero principal r x r minor.  The zero
/// matrix gets sign +1.
inline std::pair<std::size_t, int> eta_rank_signature(const FqMatrix& c) {
    SymDiagResult d = sym_diagonalize(c);
    if (d.rank == 0) return {0, 1};
    const FieldCtx& f = c.field();
    FqElem prod = f.one();
    for (FqElem x : d.diag) prod = f.mul(prod, x);
    return {d.rank, f.quad_char(prod)};
}

struct MinorSignResult {
    std::size_t rank = 0;
    int sign = 1;
    std::vector<std::size_t> subset; // chosen principal index set
};

/// Independent oracle for eta_rank_signature: finds the lexicographically
/// first index subset of size rank(C) whose principal minor is nonzero
/// and returns the quadratic character of that minor.
inline MinorSignResult principal_minor_sign_oracle(const FqMatrix& c) {
    if (!c.is_symmetric()) throw input_error("principal minors need a symmetric matrix");
    MinorSignResult res;
    res.rank = c.rank();
    if (res.rank == 0) return res;
    const std::size_t n = c.rows(), r = res.rank;
    std::vector<std::size_t> idx(r);
    for (std::size_t i = 0; i < r; ++i) idx[i] = i;
    while (true) {
        FqElem d = c.select_rows(idx).select_columns(idx).det();
        if (!c.field().is_zero(d)) {
            res.sign = c.field().quad_char(d);
            res.subset = idx;
            return res;
        }
        // next combination in lexicographic order
        std::size_t i = r;
        while (i-- > 0) {
            if (idx[i] + (r - i) < n) {
                ++idx[i];
                for (std::size_t j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) throw input_error("no nonzero principal minor at full rank");
        }
    }
}

/// Generalized Laplace-Kirchhoff matrix M * diag(alpha) * M^T.  Every
/// weight must be nonzero and there must be one per column.
inline FqMatrix laplacian(const FqMatrix& m, std::span<const FqElem> alpha) {
    const FieldCtx& f = m.field();
    if (alpha.size() != m.cols())
        throw input_error("weight vector length does not match the column count");
    for (FqElem a : alpha)
        if (f.is_zero(a)) throw input_error("weights must be nonzero");
    FqMatrix l(f, m.rows(), m.rows());
    for (std::size_t e = 0; e < m.cols(); ++e)
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (f.is_zero(m.at(i, e))) continue;
            FqElem x = f.mul(m.at(i, e), alpha[e]);
            for (std::size_t j = i; j < m.rows(); ++j)
                l.at(i, j) = f.add(l.at(i, j), f.mul(x, m.at(j, e)));
        }
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < i; ++j) l.at(i, j) = l.at(j, i);
    return l;
}

/// Brute-force multidimensional Gaussian sum over all q^n vectors.
inline CyclotomicInt gauss_sum_direct(const FqMatrix& c,
                                      unsigned long long budget = 10'000'000ULL) {
    if (!c.is_symmetric()) throw input_error("Gaussian sum needs a symmetric matrix");
    const FieldCtx& f = c.field();
    const std::size_t n = c.rows();
    unsigned long long total = saturating_pow(f.q(), static_cast<unsigned>(n));
    if (total > budget)
        throw budget_error("Gaussian sum needs " + std::to_string(total) +
                               " terms, budget is " + std::to_string(budget),
                           total);
    std::vector<long long> trace_counts(f.p(), 0);
    std::vector<FqElem> x(n, f.zero());
    for (unsigned long long it = 0;; ++it) {
        // quadratic form x C x^T
        FqElem form = f.zero();
        for (std::size_t i = 0; i < n; ++i) {
            if (f.is_zero(x[i])) continue;
            FqElem row = f.zero();
            for (std::size_t j = 0; j < n; ++j)
                row = f.add(row, f.mul(c.at(i, j), x[j]));
            form = f.add(form, f.mul(x[i], row));
        }
        ++trace_counts[f.trace(form)];
        // odometer, last coordinate fastest
        std::size_t pos = n;
        while (pos-- > 0) {
            x[pos] = f.element((x[pos].v + 1) % f.q());
            if (x[pos].v != 0) break;
            if (pos == 0) {
                CyclotomicInt acc(f.p());
                for (std::uint32_t t = 0; t < f.p(); ++t)
                    acc += CyclotomicInt::root_power(f.p(), t) * trace_counts[t];
                return acc;
            }
        }
        if (n == 0) {
            CyclotomicInt acc(f.p());
            acc += CyclotomicInt::integer(f.p(), 1);
            return acc;
        }
    }
}

/// Closed-form Gaussian sum: q^{n-r} * eta(det C_r) * g1(q)^r, with the
/// rank and sign coming from the diagonalization path.  The cyclotomic
/// value is exact for both parities of the rank.
struct GaussSumClosed {
    std::size_t rank = 0;
    int sign = 1;
    CyclotomicInt value;
};

inline GaussSumClosed gauss_sum_closed(const FqMatrix& c) {
    const FieldCtx& f = c.field();
    auto [r, sign] = eta_rank_signature(c);
    long long scale = 1;
    for (std::size_t i = r; i < c.rows(); ++i) {
        if (scale > (1LL << 62) / f.q())
            throw input_error("closed-form Gaussian sum overflows");
        scale *= f.q();
    }
    GaussSumClosed res{r, sign, CyclotomicInt(f.p())};
    res.value = g1_cyclotomic(f).pow(static_cast<unsigned>(r)) * (sign * scale);
    return res;
}

} // namespace alpharep
