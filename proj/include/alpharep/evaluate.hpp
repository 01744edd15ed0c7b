#pragma once

#include "alpharep/matroid.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <map>
#include <thread>
#include <utility>
#include <vector>

namespace alpharep {

/// One term of the character sum: the corank parameter r* and the
/// quadratic-character sign of the witnessing generating-function value.
struct AlphaTerm {
    std::size_t r_star = 0;
    int sign = 1;

    friend bool operator==(const AlphaTerm& a, const AlphaTerm& b) {
        return a.r_star == b.r_star && a.sign == b.sign;
    }
};

/// Exact accumulator for enumeration runs: integer counts keyed by
/// (rank, sign) for even ranks, plus a diagnostic count of odd-rank
/// terms (their coefficient g(q, r) vanishes, so they are not tallied).
struct TermTally {
    std::map<std::pair<std::size_t, int>, unsigned long long> counts;
    unsigned long long skipped_odd = 0;

    void record(const AlphaTerm& t) {
        if (t.r_star % 2 == 1)
            ++skipped_odd;
        else
            ++counts[{t.r_star, t.sign}];
    }

    void merge(const TermTally& o) {
        for (const auto& [key, n] : o.counts) counts[key] += n;
        skipped_odd += o.skipped_odd;
    }

    unsigned long long total() const {
        unsigned long long t = skipped_odd;
        for (const auto& [key, n] : counts) t += n;
        return t;
    }

    /// sum of count * sign * g(q, r) over the tallied even ranks.
    Rational evaluate(std::uint32_t q) const {
        Rational acc(0);
        for (const auto& [key, n] : counts)
            acc += Rational(key.second * static_cast<long long>(n)) *
                   g_const(q, static_cast<std::uint32_t>(key.first));
        return acc;
    }

    friend bool operator==(const TermTally& a, const TermTally& b) {
        return a.counts == b.counts && a.skipped_odd == b.skipped_odd;
    }
};

struct EvalResult {
    Rational value;
    TermTally tally;
};

/// How term_main1 evaluates s(M|A; alpha) != 0 during the subset search.
/// BasisEnum is the defining sum over bases; LaplacianDet computes the
/// determinant of M|A * diag(alpha) * (M|A)^T, which equals the same
/// value at every cardinality the search can stop at whenever all
/// rank-sized minors of the representation are 0/+1/-1.  Auto picks the
/// determinant route when the representation is known to satisfy that.
enum class SEvalMode { Auto, BasisEnum, LaplacianDet };

struct EvalOptions {
    unsigned workers = 1;
    unsigned long long budget = 100'000'000ULL;
    SEvalMode s_mode = SEvalMode::Auto;
    /// scan every maximum-cardinality witness and require one (r*, sign)
    bool check_alternate_maximizers = false;
    /// route term_main3 through the row-subset definition of W*
    bool main3_subset_oracle = false;
};

namespace detail {

/// Runs fn(index, local_tally) over [0, total), split into contiguous
/// shards, one worker thread per shard.  Tallies merge in shard order;
/// merging is commutative addition, so any worker count produces the
/// identical result.
template <class Fn>
TermTally sharded_tally(unsigned long long total, unsigned workers, Fn&& fn) {
    if (workers <= 1 || total < 2) {
        TermTally t;
        for (unsigned long long i = 0; i < total; ++i) fn(i, t);
        return t;
    }
    if (workers > total) workers = static_cast<unsigned>(total);
    std::vector<TermTally> parts(workers);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    unsigned long long chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        unsigned long long lo = w * chunk;
        unsigned long long hi = std::min(total, lo + chunk);
        threads.emplace_back([&, w, lo, hi] {
            try {
                for (unsigned long long i = lo; i < hi; ++i) fn(i, parts[w]);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    TermTally merged;
    for (const auto& p : parts) merged.merge(p);
    return merged;
}

inline void subsets_of_size(std::size_t n, std::size_t k,
                            const std::function<bool(std::uint32_t)>& visit) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        std::uint32_t mask = 0;
        for (std::size_t i : idx) mask |= 1u << i;
        if (!visit(mask)) return;
        std::size_t i = k;
        bool advanced = false;
        while (i-- > 0) {
            if (idx[i] + (k - i) < n) {
                ++idx[i];
                for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced) return;
    }
}

} // namespace detail

/// Weight vector for a linear enumeration index: digits base (q-1) over
/// the canonical nonzero elements 1..q-1, last ground element fastest.
inline AlphaVector alpha_from_index(const FieldCtx& f, std::size_t n,
                                    unsigned long long idx) {
    std::vector<FqElem> v(n, f.one());
    const unsigned long long base = f.q() - 1;
    for (std::size_t j = n; j-- > 0;) {
        v[j] = f.element(1 + static_cast<std::uint32_t>(idx % base));
        idx /= base;
    }
    return AlphaVector(f, std::move(v));
}

namespace detail {

/// Evaluates the descent condition s-bar(M|A; alpha) != 0 and the sign
/// of the winner, by the chosen route.
///
/// The search is over s-bar, matching the quantity whose quadratic
/// character enters the sum.  (For q = 3 this coincides with s != 0,
/// but for larger fields s and s-bar of a restriction can vanish
/// independently; only the s-bar form is consistent with the dual
/// contraction search, where it turns into s(M.A) != 0.)
class SubsetSEvaluator {
public:
    SubsetSEvaluator(const RepresentedMatroid& m, const AlphaVector& alpha,
                     SEvalMode mode)
        : m_(m), alpha_(alpha), inv_(alpha.inverted()) {
        laplacian_route_ = mode == SEvalMode::LaplacianDet ||
                           (mode == SEvalMode::Auto && m.unimodular_hint());
    }

    bool nonzero(std::uint32_t mask) const {
        const FieldCtx& f = m_.field();
        // s-bar(M|A; alpha) = s(M|A; alpha^{-1}) * prod_{e in A} alpha_e
        if (laplacian_route_) return !f.is_zero(laplacian_det(mask, inv_));
        return !f.is_zero(restricted_sbar(mask));
    }

    /// eta(s-bar(M|A; alpha)) for the winning subset.
    int sbar_sign(std::uint32_t mask) const {
        const FieldCtx& f = m_.field();
        if (!laplacian_route_) return f.quad_char(restricted_sbar(mask));
        FqElem s_inv = laplacian_det(mask, inv_);
        return f.quad_char(f.mul(s_inv, alpha_.product_over(mask)));
    }

private:
    FqElem restricted_sbar(std::uint32_t mask) const {
        auto idx = RepresentedMatroid::mask_to_indices(mask);
        std::vector<FqElem> sub;
        for (std::size_t j : idx) sub.push_back(alpha_[j]);
        return m_.restrict_to(mask).s_bar_value(AlphaVector(m_.field(), std::move(sub)));
    }

    FqElem laplacian_det(std::uint32_t mask, const AlphaVector& a) const {
        const FieldCtx& f = m_.field();
        const FqMatrix& m = m_.matrix();
        const std::size_t r = m_.rank();
        FqMatrix l(f, r, r);
        for (std::size_t e = 0; e < m_.size(); ++e) {
            if (!(mask >> e & 1)) continue;
            for (std::size_t i = 0; i < r; ++i) {
                if (f.is_zero(m.at(i, e))) continue;
                FqElem x = f.mul(m.at(i, e), a[e]);
                for (std::size_t j = i; j < r; ++j)
                    l.at(i, j) = f.add(l.at(i, j), f.mul(x, m.at(j, e)));
            }
        }
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < i; ++j) l.at(i, j) = l.at(j, i);
        return l.det();
    }

    const RepresentedMatroid& m_;
    const AlphaVector& alpha_;
    AlphaVector inv_;
    bool laplacian_route_ = false;
};

} // namespace detail

/// The per-alpha term of the characteristic-polynomial sum: finds a
/// maximum-cardinality subset A* with s-bar(M|A*; alpha) != 0 by
/// descending cardinality (lexicographically first witness), checks
/// r(A*) = r(M), and returns r* = |A*| - r(M) with sign
/// eta(s-bar(M|A*; alpha)).
inline AlphaTerm term_main1(const RepresentedMatroid& m, const AlphaVector& alpha,
                            const EvalOptions& opts = {}) {
    if (m.loops())
        throw inapplicable_error("the characteristic-polynomial sum requires a loop-free matroid");
    if (alpha.size() != m.size()) throw input_error("alpha length mismatch");
    detail::SubsetSEvaluator eval(m, alpha, opts.s_mode);
    const std::size_t n = m.size();
    for (std::size_t k = n + 1; k-- > 0;) {
        std::uint32_t winner = 0;
        bool found = false;
        detail::subsets_of_size(n, k, [&](std::uint32_t mask) {
            if (eval.nonzero(mask)) {
                winner = mask;
                found = true;
                return false;
            }
            return true;
        });
        if (!found) continue;
        if (m.rank_subset(winner) != m.rank())
            throw std::logic_error("A* search found a witness below full rank");
        AlphaTerm term{k - m.rank(), eval.sbar_sign(winner)};
        if (opts.check_alternate_maximizers) {
            detail::subsets_of_size(n, k, [&](std::uint32_t mask) {
                if (!eval.nonzero(mask)) return true;
                AlphaTerm other{k - m.rank(), eval.sbar_sign(mask)};
                if (!(other == term))
                    throw std::logic_error("maximizers disagree on (r*, sign)");
                return true;
            });
        }
        return term;
    }
    throw std::logic_error("unreachable: s(M|empty) = 1");
}

/// Same search restricted to supersets of a fixed base B'; the result
/// must match term_main1.
inline AlphaTerm term_main1_restricted(const RepresentedMatroid& m,
                                       const AlphaVector& alpha,
                                       std::uint32_t base_mask,
                                       const EvalOptions& opts = {}) {
    if (m.loops())
        throw inapplicable_error("the characteristic-polynomial sum requires a loop-free matroid");
    auto idx = RepresentedMatroid::mask_to_indices(base_mask);
    if (idx.size() != m.rank() || m.rank_subset(base_mask) != m.rank())
        throw input_error("the restriction set must be a base");
    detail::SubsetSEvaluator eval(m, alpha, opts.s_mode);
    const std::size_t n = m.size();
    std::vector<std::size_t> free_elems;
    for (std::size_t j = 0; j < n; ++j)
        if (!(base_mask >> j & 1)) free_elems.push_back(j);
    for (std::size_t k = free_elems.size() + 1; k-- > 0;) {
        std::uint32_t winner = 0;
        bool found = false;
        detail::subsets_of_size(free_elems.size(), k, [&](std::uint32_t sub) {
            std::uint32_t mask = base_mask;
            for (std::size_t i = 0; i < free_elems.size(); ++i)
                if (sub >> i & 1) mask |= 1u << free_elems[i];
            if (eval.nonzero(mask)) {
                winner = mask;
                found = true;
                return false;
            }
            return true;
        });
        if (!found) continue;
        return AlphaTerm{k, eval.sbar_sign(winner)}; // |A*| - r = k extra elements
    }
    throw std::logic_error("unreachable: s(M|B') != 0 for a base B'");
}

/// The per-alpha term of the dual-polynomial sum through the
/// Laplace-Kirchhoff matrix: r* and sign are the rank and quadratic
/// signature of M diag(alpha) M^T.
inline AlphaTerm term_main3(const RepresentedMatroid& m, const AlphaVector& alpha) {
    FqMatrix l = laplacian(m.matrix(), alpha);
    auto [r, sign] = eta_rank_signature(l);
    return {r, sign};
}

/// s'(M/W; alpha) for a deleted row set W, straight from the definition:
/// the sum over square column subsets of det^2 times the weight product.
inline FqElem s_prime_deleted_rows(const RepresentedMatroid& m, const AlphaVector& alpha,
                                   std::uint32_t row_mask) {
    const FieldCtx& f = m.field();
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < m.rank(); ++i)
        if (!(row_mask >> i & 1)) rows.push_back(i);
    FqMatrix sub = m.matrix().select_rows(rows);
    FqElem acc = f.zero();
    detail::subsets_of_size(m.size(), rows.size(), [&](std::uint32_t cols) {
        FqElem d = sub.select_columns(RepresentedMatroid::mask_to_indices(cols)).det();
        if (!f.is_zero(d))
            acc = f.add(acc, f.mul(f.mul(d, d), alpha.product_over(cols)));
        return true;
    });
    return acc;
}

/// Subset-definition cross-check for term_main3: the minimum row set W*
/// with s'(M/W*; alpha) != 0, scanned by ascending cardinality.
inline AlphaTerm term_main3_subset_oracle(const RepresentedMatroid& m,
                                          const AlphaVector& alpha) {
    const std::size_t v = m.rank();
    for (std::size_t k = 0; k <= v; ++k) {
        AlphaTerm term;
        bool found = false;
        detail::subsets_of_size(v, k, [&](std::uint32_t w) {
            FqElem s = s_prime_deleted_rows(m, alpha, w);
            if (m.field().is_zero(s)) return true;
            term = AlphaTerm{v - k, m.field().quad_char(s)};
            found = true;
            return false;
        });
        if (found) return term;
    }
    return AlphaTerm{0, 1}; // W = V: s' = empty product = 1
}

/// The per-alpha term of the dual sum in contraction form: a maximum
/// subset A* with s(M.A*; alpha) != 0, value eta(s(M.A*; alpha)) at rank
/// r(M.A*).
inline AlphaTerm term_main2_contraction(const RepresentedMatroid& m,
                                        const AlphaVector& alpha) {
    const FieldCtx& f = m.field();
    const std::size_t n = m.size();
    for (std::size_t k = n + 1; k-- > 0;) {
        AlphaTerm term;
        bool found = false;
        detail::subsets_of_size(n, k, [&](std::uint32_t mask) {
            RepresentedMatroid contracted = m.contract_to(mask);
            std::vector<FqElem> sub;
            for (std::size_t j : RepresentedMatroid::mask_to_indices(mask))
                sub.push_back(alpha[j]);
            FqElem s = contracted.s_value(AlphaVector(f, std::move(sub)));
            if (f.is_zero(s)) return true;
            term = AlphaTerm{contracted.rank(), f.quad_char(s)};
            found = true;
            return false;
        });
        if (found) return term;
    }
    throw std::logic_error("unreachable: s(M.empty) = 1");
}

namespace detail {

inline unsigned long long enumeration_size(const RepresentedMatroid& m,
                                           unsigned long long budget) {
    unsigned long long total =
        saturating_pow(m.field().q() - 1, static_cast<unsigned>(m.size()));
    if (total > budget)
        throw budget_error("enumeration needs " + std::to_string(total) +
                               " terms, budget is " + std::to_string(budget),
                           total);
    return total;
}

} // namespace detail

/// chi_M(q) over all alpha in (F_q^*)^E by the A* search.  The matroid
/// must be loop-free; the caller asserts regularity.
inline EvalResult eval_main1(const RepresentedMatroid& m, const EvalOptions& opts = {}) {
    if (m.loops())
        throw inapplicable_error("the characteristic-polynomial sum requires a loop-free matroid");
    unsigned long long total = detail::enumeration_size(m, opts.budget);
    TermTally tally = detail::sharded_tally(
        total, opts.workers, [&](unsigned long long i, TermTally& t) {
            t.record(term_main1(m, alpha_from_index(m.field(), m.size(), i), opts));
        });
    return {tally.evaluate(m.field().q()), tally};
}

/// chi_{M-dual}(q) for a coloop-free matroid, evaluated as eval_main1 on
/// the dual representation.
inline EvalResult eval_main2(const RepresentedMatroid& m, const EvalOptions& opts = {}) {
    if (m.coloops())
        throw inapplicable_error("the dual sum requires a coloop-free matroid");
    return eval_main1(m.dual(), opts);
}

/// The same value by the contraction-form search on M itself; slow,
/// kept as an independent route for the equivalence tests.
inline EvalResult eval_main2_contraction(const RepresentedMatroid& m,
                                         const EvalOptions& opts = {}) {
    if (m.coloops())
        throw inapplicable_error("the dual sum requires a coloop-free matroid");
    unsigned long long total = detail::enumeration_size(m, opts.budget);
    TermTally tally = detail::sharded_tally(
        total, opts.workers, [&](unsigned long long i, TermTally& t) {
            t.record(term_main2_contraction(m, alpha_from_index(m.field(), m.size(), i)));
        });
    return {tally.evaluate(m.field().q()), tally};
}

/// chi_{M-dual}(q) for any representable matroid, through the rank and
/// signature of the Laplace-Kirchhoff matrix per alpha.
inline EvalResult eval_main3(const RepresentedMatroid& m, const EvalOptions& opts = {}) {
    unsigned long long total = detail::enumeration_size(m, opts.budget);
    TermTally tally = detail::sharded_tally(
        total, opts.workers, [&](unsigned long long i, TermTally& t) {
            AlphaVector a = alpha_from_index(m.field(), m.size(), i);
            t.record(opts.main3_subset_oracle ? term_main3_subset_oracle(m, a)
                                              : term_main3(m, a));
        });
    return {tally.evaluate(m.field().q()), tally};
}

/// Sum of the direct Gaussian sums over the alpha whose Laplace matrix
/// has odd rank; exactly zero by the non-residue rescaling argument.
inline CyclotomicInt cancellation_check(const RepresentedMatroid& m,
                                        unsigned long long budget = 100'000'000ULL) {
    const FieldCtx& f = m.field();
    unsigned long long alphas = saturating_pow(f.q() - 1, static_cast<unsigned>(m.size()));
    unsigned long long per_term = saturating_pow(f.q(), static_cast<unsigned>(m.rank()));
    if (alphas > budget || per_term > budget / std::max(1ULL, alphas))
        throw budget_error("cancellation check needs " +
                               std::to_string(alphas) + " x " + std::to_string(per_term) +
                               " character evaluations, budget is " + std::to_string(budget),
                           saturating_pow(f.q(), static_cast<unsigned>(m.rank() + m.size())));
    CyclotomicInt acc(f.p());
    for (unsigned long long i = 0; i < alphas; ++i) {
        FqMatrix l = laplacian(m.matrix(), alpha_from_index(f, m.size(), i));
        if (l.rank() % 2 == 1) acc += gauss_sum_direct(l, budget);
    }
    return acc;
}

} // namespace alpharep
