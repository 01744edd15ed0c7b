#pragma once

#include "alpharep/graph.hpp"
#include "alpharep/matrix.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace alpharep {

/// One nonzero field weight per ground element.
class AlphaVector {
public:
    AlphaVector(const FieldCtx& f, std::vector<FqElem> values)
        : f_(f), v_(std::move(values)) {
        for (FqElem a : v_)
            if (f.is_zero(a)) throw input_error("alpha weights must be nonzero");
    }

    static AlphaVector all_ones(const FieldCtx& f, std::size_t n) {
        return AlphaVector(f, std::vector<FqElem>(n, f.one()));
    }

    std::size_t size() const { return v_.size(); }
    FqElem operator[](std::size_t i) const { return v_[i]; }
    const std::vector<FqElem>& values() const { return v_; }
    operator std::span<const FqElem>() const { return v_; }

    /// Entrywise multiplicative inverse.
    AlphaVector inverted() const {
        std::vector<FqElem> inv(v_.size());
        for (std::size_t i = 0; i < v_.size(); ++i) inv[i] = f_.inv(v_[i]);
        return AlphaVector(f_, std::move(inv));
    }

    FqElem product() const {
        FqElem p = f_.one();
        for (FqElem a : v_) p = f_.mul(p, a);
        return p;
    }

    FqElem product_over(std::uint32_t mask) const {
        FqElem p = f_.one();
        for (std::size_t i = 0; i < v_.size(); ++i)
            if (mask >> i & 1) p = f_.mul(p, v_[i]);
        return p;
    }

private:
    FieldCtx f_;
    std::vector<FqElem> v_;
};

/// An F_q-representable matroid given by a representation matrix whose
/// row count equals its rank (dependent rows are dropped at
/// construction, keeping the earliest maximal independent set).  Ground
/// elements are the columns; subsets are bitmasks over column indices.
class RepresentedMatroid {
public:
    static RepresentedMatroid from_matrix(const FqMatrix& raw,
                                          std::vector<std::string> labels = {}) {
        if (!labels.empty() && labels.size() != raw.cols())
            throw input_error("label count does not match the column count");
        if (labels.empty())
            for (std::size_t j = 0; j < raw.cols(); ++j)
                labels.push_back(std::to_string(j + 1));
        if (raw.cols() > 31) throw input_error("ground sets above 31 elements are unsupported");

        // earliest maximal independent row set
        const FieldCtx& f = raw.field();
        std::vector<std::size_t> keep;
        std::vector<std::vector<FqElem>> basis; // reduced rows
        std::vector<std::size_t> pivots;
        for (std::size_t i = 0; i < raw.rows(); ++i) {
            std::vector<FqElem> row(raw.cols());
            for (std::size_t j = 0; j < raw.cols(); ++j) row[j] = raw.at(i, j);
            for (std::size_t b = 0; b < basis.size(); ++b) {
                FqElem c = row[pivots[b]];
                if (f.is_zero(c)) continue;
                for (std::size_t j = 0; j < row.size(); ++j)
                    row[j] = f.sub(row[j], f.mul(c, basis[b][j]));
            }
            std::size_t piv = row.size();
            for (std::size_t j = 0; j < row.size(); ++j)
                if (!f.is_zero(row[j])) { piv = j; break; }
            if (piv == row.size()) continue;
            FqElem pinv = f.inv(row[piv]);
            for (auto& x : row) x = f.mul(x, pinv);
            basis.push_back(std::move(row));
            pivots.push_back(piv);
            keep.push_back(i);
        }
        FqMatrix m(f, keep.size(), raw.cols());
        for (std::size_t i = 0; i < keep.size(); ++i)
            for (std::size_t j = 0; j < raw.cols(); ++j) m.at(i, j) = raw.at(keep[i], j);
        return RepresentedMatroid(std::move(m), std::move(labels));
    }

    /// Cycle matroid of a graph via the signed incidence matrix: +1 at
    /// the lower-numbered endpoint of each edge, -1 at the higher.
    /// Self-loops become zero columns, i.e. matroid loops.
    static RepresentedMatroid from_graph(const Graph& g, const FieldCtx& f) {
        g.check_endpoints();
        FqMatrix inc(f, g.vertices, g.edges.size());
        std::vector<std::string> labels;
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            auto [u, v] = g.edges[e];
            labels.push_back(std::to_string(u) + "-" + std::to_string(v));
            if (u == v) continue;
            int lo = std::min(u, v), hi = std::max(u, v);
            inc.at(lo - 1, e) = f.one();
            inc.at(hi - 1, e) = f.neg(f.one());
        }
        RepresentedMatroid m = from_matrix(inc, std::move(labels));
        // signed incidence matrices are totally unimodular
        m.unimodular_ = true;
        return m;
    }

    const FqMatrix& matrix() const { return m_; }
    const FieldCtx& field() const { return m_.field(); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t size() const { return m_.cols(); }
    std::size_t rank() const { return m_.rows(); }
    std::uint32_t full_mask() const { return size() == 0 ? 0 : (1u << size()) - 1; }

    /// True when every rank-sized column-subset determinant lies in
    /// {0, 1, -1}.  Performance hint for the Laplacian-determinant
    /// evaluation path; set when provable or verified.
    bool unimodular_hint() const { return unimodular_; }

    std::size_t rank_subset(std::uint32_t mask) const {
        return m_.select_columns(mask_to_indices(mask)).rank();
    }

    std::uint32_t loops() const {
        std::uint32_t mask = 0;
        for (std::size_t j = 0; j < size(); ++j) {
            bool zero = true;
            for (std::size_t i = 0; i < rank() && zero; ++i)
                if (!field().is_zero(m_.at(i, j))) zero = false;
            if (zero) mask |= 1u << j;
        }
        return mask;
    }

    std::uint32_t coloops() const {
        std::uint32_t mask = 0;
        for (std::size_t j = 0; j < size(); ++j)
            if (rank_subset(full_mask() & ~(1u << j)) < rank()) mask |= 1u << j;
        return mask;
    }

    /// Representation of the dual matroid: a basis of the null space of
    /// the representation matrix, one kernel vector per row, same ground
    /// labels.
    RepresentedMatroid dual() const {
        const FieldCtx& f = field();
        const std::size_t r = rank(), n = size();
        // reduced row echelon form
        FqMatrix w = m_;
        std::vector<std::size_t> pivot_col(r);
        std::size_t pr = 0;
        for (std::size_t c = 0; c < n && pr < r; ++c) {
            std::size_t piv = pr;
            while (piv < r && f.is_zero(w.at(piv, c))) ++piv;
            if (piv == r) continue;
            if (piv != pr)
                for (std::size_t j = 0; j < n; ++j) std::swap(w.at(piv, j), w.at(pr, j));
            FqElem pinv = f.inv(w.at(pr, c));
            for (std::size_t j = 0; j < n; ++j) w.at(pr, j) = f.mul(w.at(pr, j), pinv);
            for (std::size_t i = 0; i < r; ++i) {
                if (i == pr || f.is_zero(w.at(i, c))) continue;
                FqElem factor = w.at(i, c);
                for (std::size_t j = 0; j < n; ++j)
                    w.at(i, j) = f.sub(w.at(i, j), f.mul(factor, w.at(pr, j)));
            }
            pivot_col[pr] = c;
            ++pr;
        }
        std::vector<char> is_pivot(n, 0);
        for (std::size_t i = 0; i < r; ++i) is_pivot[pivot_col[i]] = 1;
        FqMatrix k(f, n - r, n);
        std::size_t ki = 0;
        for (std::size_t c = 0; c < n; ++c) {
            if (is_pivot[c]) continue;
            k.at(ki, c) = f.one();
            for (std::size_t i = 0; i < r; ++i)
                k.at(ki, pivot_col[i]) = f.neg(w.at(i, c));
            ++ki;
        }
        RepresentedMatroid res = from_matrix(k, labels_);
        res.maybe_verify_unimodular();
        return res;
    }

    /// Restriction M|A: keep the columns of A.
    RepresentedMatroid restrict_to(std::uint32_t mask) const {
        check_mask(mask);
        auto idx = mask_to_indices(mask);
        std::vector<std::string> labels;
        for (std::size_t j : idx) labels.push_back(labels_[j]);
        return from_matrix(m_.select_columns(idx), std::move(labels));
    }

    /// Contraction onto A, i.e. M.A = M/(E-A): pivot on a basis of the
    /// deleted column set and drop the pivot rows together with all
    /// deleted columns.
    RepresentedMatroid contract_to(std::uint32_t mask) const {
        check_mask(mask);
        const FieldCtx& f = field();
        const std::uint32_t deleted = full_mask() & ~mask;
        FqMatrix w = m_;
        std::vector<char> row_used(rank(), 0);
        for (std::size_t c = 0; c < size(); ++c) {
            if (!(deleted >> c & 1)) continue;
            std::size_t piv = rank();
            for (std::size_t i = 0; i < rank(); ++i)
                if (!row_used[i] && !f.is_zero(w.at(i, c))) { piv = i; break; }
            if (piv == rank()) continue; // dependent on earlier deleted columns
            row_used[piv] = 1;
            FqElem pinv = f.inv(w.at(piv, c));
            for (std::size_t i = 0; i < rank(); ++i) {
                if (i == piv || f.is_zero(w.at(i, c))) continue;
                FqElem factor = f.mul(w.at(i, c), pinv);
                for (std::size_t j = 0; j < size(); ++j)
                    w.at(i, j) = f.sub(w.at(i, j), f.mul(factor, w.at(piv, j)));
            }
        }
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < rank(); ++i)
            if (!row_used[i]) rows.push_back(i);
        auto idx = mask_to_indices(mask);
        std::vector<std::string> labels;
        for (std::size_t j : idx) labels.push_back(labels_[j]);
        return from_matrix(w.select_rows(rows).select_columns(idx), std::move(labels));
    }

    /// All bases as column masks, lexicographic in the sorted index
    /// tuples.  Cached after the first call; the cache is shared across
    /// copies and safe under concurrent use.
    const std::vector<std::uint32_t>& bases() const {
        ensure_bases();
        return cache_->bases;
    }

    /// det(M|_B) for each base, aligned with bases().
    const std::vector<FqElem>& basis_dets() const {
        ensure_bases();
        return cache_->dets;
    }

    bool verify_unimodular() const {
        const FieldCtx& f = field();
        FqElem minus_one = f.neg(f.one());
        std::vector<std::size_t> idx;
        bool ok = true;
        enumerate_subsets(rank(), [&](const std::vector<std::size_t>& cols) {
            FqElem d = m_.select_columns(cols).det();
            if (!f.is_zero(d) && d != f.one() && d != minus_one) ok = false;
        });
        return ok;
    }

    // --- basis generating functions -------------------------------------

    /// s(M; alpha) = sum over bases of prod_{e in B} alpha_e.
    FqElem s_value(const AlphaVector& alpha) const {
        check_alpha(alpha);
        const FieldCtx& f = field();
        FqElem acc = f.zero();
        for (std::uint32_t b : bases()) acc = f.add(acc, alpha.product_over(b));
        return acc;
    }

    /// s-bar(M; alpha) = sum over bases of prod_{e not in B} alpha_e.
    FqElem s_bar_value(const AlphaVector& alpha) const {
        check_alpha(alpha);
        const FieldCtx& f = field();
        FqElem acc = f.zero();
        for (std::uint32_t b : bases())
            acc = f.add(acc, alpha.product_over(full_mask() & ~b));
        return acc;
    }

    /// s'(M; alpha) = sum over bases of det^2(M|_B) prod_{e in B} alpha_e.
    FqElem s_prime_value(const AlphaVector& alpha) const {
        check_alpha(alpha);
        const FieldCtx& f = field();
        ensure_bases();
        FqElem acc = f.zero();
        for (std::size_t i = 0; i < cache_->bases.size(); ++i) {
            FqElem d = cache_->dets[i];
            acc = f.add(acc, f.mul(f.mul(d, d), alpha.product_over(cache_->bases[i])));
        }
        return acc;
    }

    // --- brute-force oracles ---------------------------------------------

    /// Whitney rank sum: sum over all subsets A of (-1)^|A| x^{r(E)-r(A)}.
    /// Identically zero as soon as a loop exists.
    long long chi_whitney(long long x) const {
        if (size() > 20)
            throw budget_error("Whitney sum over 2^" + std::to_string(size()) +
                                   " subsets exceeds the brute-force budget",
                               saturating_pow(2, static_cast<unsigned>(size())));
        // incremental elimination state per recursion level
        __int128 acc = 0;
        std::vector<std::vector<FqElem>> cols(size());
        const FieldCtx& f = field();
        for (std::size_t j = 0; j < size(); ++j) {
            cols[j].resize(rank());
            for (std::size_t i = 0; i < rank(); ++i) cols[j][i] = m_.at(i, j);
        }
        std::vector<__int128> xpow(rank() + 1);
        xpow[0] = 1;
        for (std::size_t i = 1; i <= rank(); ++i) {
            xpow[i] = xpow[i - 1] * x;
            if (xpow[i] > (__int128(1) << 100))
                throw input_error("chi_whitney value overflow");
        }
        struct Frame {
            std::vector<std::vector<FqElem>> basis;
            std::vector<std::size_t> pivots;
        };
        auto rec = [&](auto&& self, std::size_t next, int parity, Frame& fr) -> void {
            if (next == size()) {
                acc += (parity % 2 == 0 ? 1 : -1) * xpow[rank() - fr.basis.size()];
                return;
            }
            self(self, next + 1, parity, fr); // element excluded
            // element included: reduce its column against the frame
            std::vector<FqElem> col = cols[next];
            for (std::size_t b = 0; b < fr.basis.size(); ++b) {
                FqElem c = col[fr.pivots[b]];
                if (f.is_zero(c)) continue;
                for (std::size_t i = 0; i < col.size(); ++i)
                    col[i] = f.sub(col[i], f.mul(c, fr.basis[b][i]));
            }
            std::size_t piv = col.size();
            for (std::size_t i = 0; i < col.size(); ++i)
                if (!f.is_zero(col[i])) { piv = i; break; }
            if (piv == col.size()) {
                self(self, next + 1, parity + 1, fr);
            } else {
                FqElem pinv = f.inv(col[piv]);
                for (auto& v : col) v = f.mul(v, pinv);
                fr.basis.push_back(std::move(col));
                fr.pivots.push_back(piv);
                self(self, next + 1, parity + 1, fr);
                fr.basis.pop_back();
                fr.pivots.pop_back();
            }
        };
        Frame fr;
        rec(rec, 0, 0, fr);
        if (acc > (__int128)0x7fffffffffffffffLL || acc < -(__int128)0x7fffffffffffffffLL)
            throw input_error("chi_whitney value overflow");
        return static_cast<long long>(acc);
    }

    /// Number of everywhere-nonzero flows: vectors in (F_q^*)^E with
    /// M f^T = 0, counted through the null-space parametrization.
    long long flow_count(unsigned long long budget = 100'000'000ULL) const {
        const FieldCtx& f = field();
        RepresentedMatroid ker = dual();
        const std::size_t nullity = ker.rank();
        unsigned long long total = saturating_pow(f.q(), static_cast<unsigned>(nullity));
        if (total > budget)
            throw budget_error("flow enumeration needs " + std::to_string(total) +
                                   " kernel vectors, budget is " + std::to_string(budget),
                               total);
        if (nullity == 0) return size() == 0 ? 1 : 0;
        long long count = 0;
        std::vector<FqElem> coeff(nullity, f.zero());
        std::vector<FqElem> flow(size());
        for (unsigned long long it = 0; it < total; ++it) {
            for (std::size_t j = 0; j < size(); ++j) flow[j] = f.zero();
            for (std::size_t i = 0; i < nullity; ++i) {
                if (f.is_zero(coeff[i])) continue;
                for (std::size_t j = 0; j < size(); ++j)
                    flow[j] = f.add(flow[j], f.mul(coeff[i], ker.matrix().at(i, j)));
            }
            bool nowhere_zero = true;
            for (std::size_t j = 0; j < size() && nowhere_zero; ++j)
                if (f.is_zero(flow[j])) nowhere_zero = false;
            if (nowhere_zero) ++count;
            std::size_t pos = nullity;
            while (pos-- > 0) {
                coeff[pos] = f.element((coeff[pos].v + 1) % f.q());
                if (coeff[pos].v != 0) break;
            }
        }
        return count;
    }

    static std::vector<std::size_t> mask_to_indices(std::uint32_t mask) {
        std::vector<std::size_t> idx;
        for (std::size_t j = 0; mask >> j; ++j)
            if (mask >> j & 1) idx.push_back(j);
        return idx;
    }

private:
    RepresentedMatroid(FqMatrix m, std::vector<std::string> labels)
        : m_(std::move(m)), labels_(std::move(labels)),
          cache_(std::make_shared<BasisCache>()) {}

    void check_mask(std::uint32_t mask) const {
        if (mask & ~full_mask()) throw input_error("subset mask out of range");
    }

    void check_alpha(const AlphaVector& alpha) const {
        if (alpha.size() != size())
            throw input_error("alpha length does not match the ground set");
    }

    void maybe_verify_unimodular() {
        if (size() <= 16) unimodular_ = verify_unimodular();
    }

    template <class Fn>
    void enumerate_subsets(std::size_t k, Fn&& fn) const {
        std::vector<std::size_t> idx(k);
        auto rec = [&](auto&& self, std::size_t depth, std::size_t start) -> void {
            if (depth == k) {
                fn(idx);
                return;
            }
            for (std::size_t j = start; j + (k - depth) <= size(); ++j) {
                idx[depth] = j;
                self(self, depth + 1, j + 1);
            }
        };
        rec(rec, 0, 0);
    }

    struct BasisCache {
        std::once_flag once;
        std::vector<std::uint32_t> bases;
        std::vector<FqElem> dets;
    };

    void ensure_bases() const {
        std::call_once(cache_->once, [this] {
            const FieldCtx& f = field();
            // subset recursion with partial elimination for early pruning
            std::vector<std::vector<FqElem>> basis;
            std::vector<std::size_t> pivots;
            std::uint32_t mask = 0;
            auto rec = [&](auto&& self, std::size_t start) -> void {
                if (basis.size() == rank()) {
                    cache_->bases.push_back(mask);
                    cache_->dets.push_back(
                        m_.select_columns(mask_to_indices(mask)).det());
                    return;
                }
                for (std::size_t j = start;
                     j < size() && size() - j >= rank() - basis.size(); ++j) {
                    std::vector<FqElem> col(rank());
                    for (std::size_t i = 0; i < rank(); ++i) col[i] = m_.at(i, j);
                    for (std::size_t b = 0; b < basis.size(); ++b) {
                        FqElem c = col[pivots[b]];
                        if (f.is_zero(c)) continue;
                        for (std::size_t i = 0; i < col.size(); ++i)
                            col[i] = f.sub(col[i], f.mul(c, basis[b][i]));
                    }
                    std::size_t piv = col.size();
                    for (std::size_t i = 0; i < col.size(); ++i)
                        if (!f.is_zero(col[i])) { piv = i; break; }
                    if (piv == col.size()) continue;
                    FqElem pinv = f.inv(col[piv]);
                    for (auto& v : col) v = f.mul(v, pinv);
                    basis.push_back(std::move(col));
                    pivots.push_back(piv);
                    mask |= 1u << j;
                    self(self, j + 1);
                    mask &= ~(1u << j);
                    basis.pop_back();
                    pivots.pop_back();
                }
            };
            rec(rec, 0);
        });
    }

    FqMatrix m_;
    std::vector<std::string> labels_;
    bool unimodular_ = false;
    std::shared_ptr<BasisCache> cache_;
};

} // namespace alpharep
