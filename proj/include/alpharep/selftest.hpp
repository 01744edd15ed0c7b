#pragma once

#include "alpharep/evaluate.hpp"
#include "alpharep/tait.hpp"

#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace alpharep {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

namespace selftest_detail {

inline FqMatrix random_symmetric(const FieldCtx& f, std::size_t n, std::mt19937& rng) {
    FqMatrix m(f, n, n);
    std::uniform_int_distribution<std::uint32_t> dist(0, f.q() - 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            m.at(i, j) = f.element(dist(rng));
            m.at(j, i) = m.at(i, j);
        }
    return m;
}

inline FqMatrix random_matrix(const FieldCtx& f, std::size_t rows, std::size_t cols,
                              std::mt19937& rng) {
    FqMatrix m(f, rows, cols);
    std::uniform_int_distribution<std::uint32_t> dist(0, f.q() - 1);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = f.element(dist(rng));
    return m;
}

inline FqMatrix random_invertible(const FieldCtx& f, std::size_t n, std::mt19937& rng) {
    while (true) {
        FqMatrix m = random_matrix(f, n, n, rng);
        if (!f.is_zero(m.det())) return m;
    }
}

inline Graph prism_graph() {
    return Graph{6, {{1, 2}, {1, 3}, {1, 6}, {2, 3}, {2, 4}, {3, 5}, {4, 5}, {4, 6}, {5, 6}}};
}

inline CubicPlanarGraph prism_embedded() {
    return CubicPlanarGraph::from_rotation(
        prism_graph(), {{2, 1, 0}, {4, 0, 3}, {5, 3, 1}, {4, 6, 7}, {6, 5, 8}, {7, 8, 2}});
}

inline void run_check(std::vector<CheckResult>& out, const std::string& name,
                      const std::function<void(std::ostringstream&)>& body) {
    CheckResult r;
    r.name = name;
    std::ostringstream fail;
    try {
        body(fail);
        r.passed = fail.str().empty();
        r.detail = fail.str();
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = e.what();
    }
    out.push_back(std::move(r));
}

inline unsigned long long tally_count(const TermTally& t, std::size_t r, int sign) {
    auto it = t.counts.find({r, sign});
    return it == t.counts.end() ? 0 : it->second;
}

} // namespace selftest_detail

/// Built-in verification suites behind `selftest`.  quick keeps every
/// suite under a few seconds; full adds the golden enumerations of the
/// bundled instances and the worker-count determinism run.
inline std::vector<CheckResult> run_selftest(bool full) {
    using namespace selftest_detail;
    std::vector<CheckResult> out;

    run_check(out, "fourier-identities", [](std::ostringstream& fail) {
        for (auto [p, d] : std::vector<std::pair<int, int>>{{3, 1}, {5, 1}, {3, 2}}) {
            FieldCtx f(p, d);
            for (std::uint32_t k = 0; k < f.q(); ++k) {
                FqElem ke = f.element(k);
                CyclotomicInt total(f.p()), lhs(f.p()), rhs(f.p());
                FqElem k2 = f.mul(ke, ke);
                for (std::uint32_t i = 0; i < f.q(); ++i)
                    total += f.additive_char(f.mul(ke, f.element(i)));
                for (std::uint32_t i = 1; i < f.q(); ++i) {
                    lhs += f.additive_char(f.mul(ke, f.element(i)));
                    rhs += f.additive_char(f.mul(k2, f.element(i)));
                }
                if (total != CyclotomicInt::integer(f.p(), k == 0 ? f.q() : 0))
                    fail << "delta identity fails at q=" << f.q() << " k=" << k;
                if (lhs != rhs)
                    fail << "square substitution fails at q=" << f.q() << " k=" << k;
            }
        }
    });

    run_check(out, "gauss-closed-vs-direct", [](std::ostringstream& fail) {
        for (std::uint32_t q : {3u, 5u}) {
            FieldCtx f(q, 1);
            for (std::uint32_t a = 0; a < q; ++a)
                for (std::uint32_t b = 0; b < q; ++b)
                    for (std::uint32_t c = 0; c < q; ++c) {
                        FqMatrix m(f, 2, 2);
                        m.at(0, 0) = f.element(a);
                        m.at(0, 1) = m.at(1, 0) = f.element(b);
                        m.at(1, 1) = f.element(c);
                        if (gauss_sum_closed(m).value != gauss_sum_direct(m)) {
                            fail << "2x2 mismatch over F_" << q;
                            return;
                        }
                    }
        }
        std::mt19937 rng(2024);
        for (auto [p, d] : std::vector<std::pair<int, int>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
            FieldCtx f(p, d);
            for (int rep = 0; rep < 30; ++rep) {
                FqMatrix c = random_symmetric(f, 3, rng);
                if (gauss_sum_closed(c).value != gauss_sum_direct(c)) {
                    fail << "3x3 mismatch over q=" << f.q();
                    return;
                }
            }
        }
    });

    run_check(out, "principal-minor-oracle", [](std::ostringstream& fail) {
        std::mt19937 rng(2025);
        for (auto [p, d] : std::vector<std::pair<int, int>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
            FieldCtx f(p, d);
            for (int rep = 0; rep < 30; ++rep) {
                FqMatrix c = random_symmetric(f, 4, rng);
                auto [r, s] = eta_rank_signature(c);
                MinorSignResult m = principal_minor_sign_oracle(c);
                if (r != m.rank || s != m.sign) {
                    fail << "oracle disagreement over q=" << f.q();
                    return;
                }
            }
        }
    });

    run_check(out, "congruence-invariance", [](std::ostringstream& fail) {
        std::mt19937 rng(2026);
        FieldCtx f(5, 1);
        for (int rep = 0; rep < 20; ++rep) {
            FqMatrix c = random_symmetric(f, 3, rng);
            FqMatrix p = random_invertible(f, 3, rng);
            FqMatrix c2 = p.mul(c).mul(p.transposed());
            if (eta_rank_signature(c2) != eta_rank_signature(c)) {
                fail << "signature changed under congruence";
                return;
            }
        }
    });

    run_check(out, "cancellation-u24-f3", [](std::ostringstream& fail) {
        FieldCtx f3(3, 1);
        FqMatrix m(f3, 2, 4);
        m.at(0, 0) = f3.from_int(1);
        m.at(0, 2) = f3.from_int(1);
        m.at(0, 3) = f3.from_int(1);
        m.at(1, 1) = f3.from_int(1);
        m.at(1, 2) = f3.from_int(1);
        m.at(1, 3) = f3.from_int(-1);
        if (!cancellation_check(RepresentedMatroid::from_matrix(m)).is_zero())
            fail << "odd-rank Gaussian sums did not cancel";
    });

    run_check(out, "representation-independence", [](std::ostringstream& fail) {
        std::mt19937 rng(2027);
        FieldCtx f(5, 1);
        for (int rep = 0; rep < 20; ++rep) {
            FqMatrix raw = random_matrix(f, 3, 6, rng);
            RepresentedMatroid m = RepresentedMatroid::from_matrix(raw);
            if (m.rank() != 3) continue;
            FqMatrix p = random_invertible(f, 3, rng);
            RepresentedMatroid m2 = RepresentedMatroid::from_matrix(p.mul(m.matrix()));
            AlphaVector a = alpha_from_index(f, 6, rng() % 4096);
            if (!(term_main3(m, a) == term_main3(m2, a))) {
                fail << "Laplacian term changed under row transformation";
                return;
            }
        }
    });

    run_check(out, "restricted-search", [](std::ostringstream& fail) {
        FieldCtx f3(3, 1);
        for (Graph g : {Graph{3, {{1, 2}, {1, 3}, {2, 3}}},
                        Graph{4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}}}) {
            RepresentedMatroid m = RepresentedMatroid::from_graph(g, f3);
            std::uint32_t base = m.bases().front();
            unsigned long long total = saturating_pow(2, m.size());
            for (unsigned long long i = 0; i < total; ++i) {
                AlphaVector a = alpha_from_index(f3, m.size(), i);
                if (!(term_main1_restricted(m, a, base) == term_main1(m, a))) {
                    fail << "restricted search diverged";
                    return;
                }
            }
        }
    });

    run_check(out, "main1-vs-whitney", [](std::ostringstream& fail) {
        for (std::uint32_t q : {3u, 5u}) {
            FieldCtx f(q, 1);
            for (Graph g : {Graph{3, {{1, 2}, {1, 3}, {2, 3}}},
                            Graph{4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}}}) {
                RepresentedMatroid m = RepresentedMatroid::from_graph(g, f);
                if (eval_main1(m).value != Rational(m.chi_whitney(q))) {
                    fail << "A*-search sum missed the Whitney value at q=" << q;
                    return;
                }
            }
        }
    });

    run_check(out, "main3-vs-flows", [](std::ostringstream& fail) {
        for (std::uint32_t q : {3u, 5u, 7u}) {
            FieldCtx f(q, 1);
            FqMatrix raw(f, 2, 4);
            raw.at(0, 0) = f.from_int(1);
            raw.at(0, 2) = f.from_int(1);
            raw.at(0, 3) = f.from_int(1);
            raw.at(1, 1) = f.from_int(1);
            raw.at(1, 2) = f.from_int(1);
            raw.at(1, 3) = f.from_int(-1);
            RepresentedMatroid m = RepresentedMatroid::from_matrix(raw);
            if (eval_main3(m).value != Rational(m.flow_count())) {
                fail << "Laplacian sum missed the flow count at q=" << q;
                return;
            }
        }
    });

    if (!full) return out;

    run_check(out, "prism-chi-golden", [](std::ostringstream& fail) {
        FieldCtx f3(3, 1);
        RepresentedMatroid prism = RepresentedMatroid::from_graph(prism_graph(), f3);
        EvalResult res = eval_main1(prism);
        if (res.value != Rational(4)) fail << "chi != 4; ";
        if (tally_count(res.tally, 4, 1) != 186 || tally_count(res.tally, 4, -1) != 162 ||
            tally_count(res.tally, 2, 1) != 6 || tally_count(res.tally, 2, -1) != 10 ||
            res.tally.skipped_odd != 148)
            fail << "tally differs from the published 186/162/6/10/148";
    });

    run_check(out, "prism-tait-golden", [](std::ostringstream& fail) {
        CubicPlanarGraph g = prism_embedded();
        if (tait_count_direct(g) != 6) fail << "direct count != 6; ";
        if (heawood_count(g) != 6) fail << "spin count != 6; ";
        TaitEvalResult res = eval_tait_alpha(g);
        if (res.colorings != 6) fail << "face-matrix sum != 6; ";
        if (tally_count(res.tally, 4, 1) != 12 || tally_count(res.tally, 4, -1) != 18 ||
            tally_count(res.tally, 2, -1) != 8 || res.tally.skipped_odd != 26)
            fail << "tally differs from the published 12/18/8/26";
    });

    run_check(out, "prism-cancellation", [](std::ostringstream& fail) {
        FieldCtx f3(3, 1);
        RepresentedMatroid prism = RepresentedMatroid::from_graph(prism_graph(), f3);
        if (!cancellation_check(prism).is_zero())
            fail << "odd-rank Gaussian sums did not cancel";
    });

    run_check(out, "worker-determinism", [](std::ostringstream& fail) {
        FieldCtx f3(3, 1);
        RepresentedMatroid prism = RepresentedMatroid::from_graph(prism_graph(), f3);
        EvalResult base = eval_main1(prism);
        TaitEvalResult tait_base = eval_tait_alpha(prism_embedded());
        for (unsigned w : {4u, 16u}) {
            EvalOptions opts;
            opts.workers = w;
            EvalResult res = eval_main1(prism, opts);
            if (!(res.tally == base.tally) || res.value != base.value) {
                fail << "chi enumeration depends on the worker count";
                return;
            }
            TaitEvalResult tres = eval_tait_alpha(prism_embedded(), opts);
            if (!(tres.tally == tait_base.tally)) {
                fail << "spin enumeration depends on the worker count";
                return;
            }
        }
    });

    return out;
}

} // namespace alpharep
