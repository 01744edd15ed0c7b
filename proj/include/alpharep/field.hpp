#pragma once

#include "alpharep/errors.hpp"
#include "alpharep/rational.hpp"

#include <algorithm>
#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

namespace alpharep {

/// Element of F_{p^d} in canonical index form: the index encodes the
/// polynomial-basis coefficients base p, c_0 least significant.  Two
/// elements are equal iff their indices are equal.
struct FqElem {
    std::uint32_t v = 0;

    friend bool operator==(FqElem a, FqElem b) { return a.v == b.v; }
    friend bool operator!=(FqElem a, FqElem b) { return a.v != b.v; }
    friend bool operator<(FqElem a, FqElem b) { return a.v < b.v; }
};

/// Element of Z[zeta], zeta a primitive `order`-th root of unity, stored
/// with `order` integer coordinates.  Coordinates are defined up to a
/// common shift (1 + zeta + ... + zeta^{order-1} = 0); the canonical form
/// has minimum coordinate 0, so equality is plain coordinate comparison.
class CyclotomicInt {
public:
    explicit CyclotomicInt(std::uint32_t order) : c_(order, 0) {}

    static CyclotomicInt root_power(std::uint32_t order, std::uint32_t j) {
        CyclotomicInt z(order);
        z.c_[j % order] = 1;
        return z;
    }

    static CyclotomicInt integer(std::uint32_t order, long long n) {
        CyclotomicInt z(order);
        z.c_[0] = n;
        z.canonicalize();
        return z;
    }

    std::uint32_t order() const { return static_cast<std::uint32_t>(c_.size()); }
    const std::vector<long long>& coeffs() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](long long x) { return x == 0; });
    }

    CyclotomicInt& operator+=(const CyclotomicInt& o) {
        check_order(o);
        for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
        canonicalize();
        return *this;
    }

    CyclotomicInt& operator-=(const CyclotomicInt& o) {
        check_order(o);
        for (std::size_t j = 0; j < c_.size(); ++j) c_[j] -= o.c_[j];
        canonicalize();
        return *this;
    }

    friend CyclotomicInt operator+(CyclotomicInt a, const CyclotomicInt& b) { return a += b; }
    friend CyclotomicInt operator-(CyclotomicInt a, const CyclotomicInt& b) { return a -= b; }

    friend CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b) {
        a.check_order(b);
        CyclotomicInt r(a.order());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j] == 0) continue;
                r.c_[(i + j) % a.c_.size()] += a.c_[i] * b.c_[j];
            }
        }
        r.canonicalize();
        return r;
    }

    CyclotomicInt& operator*=(long long k) {
        for (auto& x : c_) x *= k;
        canonicalize();
        return *this;
    }

    friend CyclotomicInt operator*(CyclotomicInt a, long long k) { return a *= k; }

    CyclotomicInt pow(unsigned e) const {
        CyclotomicInt r = integer(order(), 1);
        for (unsigned i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    friend bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) {
        return a.c_ == b.c_;
    }
    friend bool operator!=(const CyclotomicInt& a, const CyclotomicInt& b) {
        return !(a == b);
    }

    /// Numeric value at zeta = exp(2*pi*i/order).  Test aid only; all
    /// library comparisons stay exact.
    std::complex<double> evaluate() const {
        std::complex<double> acc = 0.0;
        const double step = 2.0 * 3.14159265358979323846 / static_cast<double>(c_.size());
        for (std::size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            acc += static_cast<double>(c_[j]) *
                   std::complex<double>(std::cos(step * j), std::sin(step * j));
        }
        return acc;
    }

private:
    void check_order(const CyclotomicInt& o) const {
        if (c_.size() != o.c_.size())
            throw input_error("cyclotomic order mismatch");
    }

    void canonicalize() {
        long long m = *std::min_element(c_.begin(), c_.end());
        if (m != 0)
            for (auto& x : c_) x -= m;
    }

    std::vector<long long> c_;
};

/// Symbolic value of the quadratic Gaussian sum g1(q): sign * sqrt(q),
/// on the real or imaginary axis.
struct G1Symbolic {
    int sign = 1;
    bool imaginary = false;
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

} // namespace detail

/// base^exp clamped to the maximum representable value; used by the
/// enumeration budget guards.
inline unsigned long long saturating_pow(unsigned long long base, unsigned exp) {
    unsigned long long r = 1;
    const unsigned long long lim = ~0ULL;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > lim / base) return lim;
        r *= base;
    }
    return r;
}

/// The field F_{p^d}, p an odd prime.  Immutable after construction,
/// cheap to copy (the modulus and character memo live behind a shared
/// pointer), and safe to share across threads; every operation is a pure
/// function of its arguments.
///
/// The modulus is the lexicographically smallest monic irreducible
/// polynomial of degree d over F_p, coefficients compared
/// low-degree-first, so a (p, d) pair always denotes the same field
/// representation.
class FieldCtx {
public:
    FieldCtx(std::uint32_t p, std::uint32_t d) : p_(p), d_(d) {
        if (p % 2 == 0) throw input_error("field characteristic must be odd");
        if (!detail::is_prime(p)) throw input_error("field characteristic must be prime");
        if (d < 1) throw input_error("extension degree must be >= 1");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < d; ++i) {
            q *= p;
            if (q > (1u << 20))
                throw input_error("field size exceeds the supported budget (q <= 2^20)");
        }
        q_ = static_cast<std::uint32_t>(q);
        shared_ = std::make_shared<Shared>();
        shared_->modulus = smallest_irreducible();
    }

    /// Parses "p" or "p^d".
    static FieldCtx from_spec(const std::string& spec) {
        auto parse_number = [&](const std::string& s) -> std::uint32_t {
            if (s.empty() || s.size() > 7 ||
                s.find_first_not_of("0123456789") != std::string::npos)
                throw input_error("bad field spec '" + spec + "', expected \"p\" or \"p^d\"");
            return static_cast<std::uint32_t>(std::stoul(s));
        };
        auto caret = spec.find('^');
        if (caret == std::string::npos) return FieldCtx(parse_number(spec), 1);
        return FieldCtx(parse_number(spec.substr(0, caret)),
                        parse_number(spec.substr(caret + 1)));
    }

    std::string spec() const {
        return d_ == 1 ? std::to_string(p_) : std::to_string(p_) + "^" + std::to_string(d_);
    }

    std::uint32_t p() const { return p_; }
    std::uint32_t d() const { return d_; }
    std::uint32_t q() const { return q_; }

    /// Modulus coefficients, low degree first, length d+1, monic.
    const std::vector<std::uint32_t>& modulus() const { return shared_->modulus; }

    FqElem zero() const { return {0}; }
    FqElem one() const { return {1}; }
    bool is_zero(FqElem a) const { return a.v == 0; }

    FqElem element(std::uint32_t index) const {
        if (index >= q_) throw input_error("element index out of range");
        return {index};
    }

    /// Embeds an integer as a constant (reduced mod p).
    FqElem from_int(long long n) const {
        long long r = n % static_cast<long long>(p_);
        if (r < 0) r += p_;
        return {static_cast<std::uint32_t>(r)};
    }

    FqElem from_coeffs(const std::vector<std::uint32_t>& cs) const {
        if (cs.size() > d_) throw input_error("too many coefficients for this field");
        std::uint32_t idx = 0, scale = 1;
        for (std::size_t i = 0; i < cs.size(); ++i) {
            if (cs[i] >= p_) throw input_error("coefficient not reduced mod p");
            idx += cs[i] * scale;
            scale *= p_;
        }
        return {idx};
    }

    std::vector<std::uint32_t> coeffs(FqElem a) const {
        std::vector<std::uint32_t> cs(d_);
        std::uint32_t x = a.v;
        for (std::uint32_t i = 0; i < d_; ++i) {
            cs[i] = x % p_;
            x /= p_;
        }
        return cs;
    }

    FqElem add(FqElem a, FqElem b) const {
        if (d_ == 1) {
            std::uint32_t s = a.v + b.v;
            return {s >= p_ ? s - p_ : s};
        }
        std::uint32_t idx = 0, scale = 1, x = a.v, y = b.v;
        for (std::uint32_t i = 0; i < d_; ++i) {
            std::uint32_t s = x % p_ + y % p_;
            if (s >= p_) s -= p_;
            idx += s * scale;
            scale *= p_;
            x /= p_;
            y /= p_;
        }
        return {idx};
    }

    FqElem neg(FqElem a) const {
        if (d_ == 1) return {a.v == 0 ? 0u : p_ - a.v};
        std::uint32_t idx = 0, scale = 1, x = a.v;
        for (std::uint32_t i = 0; i < d_; ++i) {
            std::uint32_t c = x % p_;
            idx += (c == 0 ? 0 : p_ - c) * scale;
            scale *= p_;
            x /= p_;
        }
        return {idx};
    }

    FqElem sub(FqElem a, FqElem b) const { return add(a, neg(b)); }

    FqElem mul(FqElem a, FqElem b) const {
        if (d_ == 1)
            return {static_cast<std::uint32_t>(
                (static_cast<std::uint64_t>(a.v) * b.v) % p_)};
        // schoolbook product, then reduce by the modulus
        const std::vector<std::uint32_t>& mod = shared_->modulus;
        std::vector<std::uint64_t> prod(2 * d_ - 1, 0);
        std::uint32_t x = a.v;
        for (std::uint32_t i = 0; i < d_; ++i, x /= p_) {
            std::uint32_t ci = x % p_;
            if (ci == 0) continue;
            std::uint32_t y = b.v;
            for (std::uint32_t j = 0; j < d_; ++j, y /= p_)
                prod[i + j] += static_cast<std::uint64_t>(ci) * (y % p_);
        }
        for (std::uint32_t k = 2 * d_ - 2; k >= d_; --k) {
            std::uint64_t c = prod[k] % p_;
            prod[k] = 0;
            if (c == 0) continue;
            // x^k = x^{k-d} * (-modulus tail)
            for (std::uint32_t i = 0; i < d_; ++i) {
                std::uint64_t sub = (c * mod[i]) % p_;
                prod[k - d_ + i] += p_ - sub;
            }
        }
        std::uint32_t idx = 0, scale = 1;
        for (std::uint32_t i = 0; i < d_; ++i) {
            idx += static_cast<std::uint32_t>(prod[i] % p_) * scale;
            scale *= p_;
        }
        return {idx};
    }

    FqElem pow(FqElem a, std::uint64_t e) const {
        FqElem r = one(), base = a;
        while (e > 0) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    FqElem inv(FqElem a) const {
        if (a.v == 0) throw input_error("division by zero in F_q");
        return pow(a, q_ - 2);
    }

    /// Tr(x) = x + x^p + ... + x^{p^{d-1}}, a value in F_p.
    std::uint32_t trace(FqElem a) const {
        if (d_ == 1) return a.v;
        FqElem acc = a, t = a;
        for (std::uint32_t i = 1; i < d_; ++i) {
            t = pow(t, p_);
            acc = add(acc, t);
        }
        // the trace lands in the prime subfield
        return acc.v;
    }

    /// Canonical additive character h(a) = zeta^{Tr(a)}, zeta = e^{2 pi i / p}.
    CyclotomicInt additive_char(FqElem a) const {
        return CyclotomicInt::root_power(p_, trace(a));
    }

    /// Quadratic character: 0 at zero, +1 on nonzero squares, -1 otherwise.
    /// Computed by exponentiation; a memo table of size q is built lazily
    /// for q <= 2^16 to serve the enumeration loops.
    int quad_char(FqElem a) const {
        if (a.v == 0) return 0;
        if (q_ <= (1u << 16)) {
            std::call_once(shared_->eta_once, [this] {
                shared_->eta_table.resize(q_);
                for (std::uint32_t i = 1; i < q_; ++i)
                    shared_->eta_table[i] = static_cast<std::int8_t>(quad_char_slow({i}));
            });
            return shared_->eta_table[a.v];
        }
        return quad_char_slow(a);
    }

    friend bool operator==(const FieldCtx& a, const FieldCtx& b) {
        return a.p_ == b.p_ && a.d_ == b.d_;
    }

private:
    int quad_char_slow(FqElem a) const {
        return pow(a, (q_ - 1) / 2) == one() ? 1 : -1;
    }

    // --- modulus search ------------------------------------------------

    using Poly = std::vector<std::uint32_t>; // low degree first

    Poly smallest_irreducible() const {
        if (d_ == 1) return {0, 1}; // x
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < d_; ++i) count *= p_;
        for (std::uint64_t k = 0; k < count; ++k) {
            // k encodes (c_0 .. c_{d-1}) with c_0 the most significant
            // digit, which realizes low-degree-first lexicographic order.
            Poly f(d_ + 1, 0);
            f[d_] = 1;
            std::uint64_t t = k;
            for (std::uint32_t i = 0; i < d_; ++i) {
                f[d_ - 1 - i] = static_cast<std::uint32_t>(t % p_);
                t /= p_;
            }
            if (is_irreducible(f)) return f;
        }
        throw input_error("no irreducible polynomial found"); // unreachable
    }

    bool is_irreducible(const Poly& f) const {
        if (d_ <= 3) {
            // degree 2 and 3: reducible iff a root exists in F_p
            for (std::uint32_t r = 0; r < p_; ++r)
                if (poly_eval(f, r) == 0) return false;
            return true;
        }
        // Rabin: x^{p^d} == x mod f, and gcd(x^{p^{d/l}} - x, f) = 1 for
        // every prime divisor l of d.
        Poly x = {0, 1};
        Poly frob = poly_powmod_p_power(x, d_, f);
        if (frob != poly_mod(x, f)) return false;
        for (std::uint32_t l = 2; l <= d_; ++l) {
            if (d_ % l != 0 || !detail::is_prime(l)) continue;
            Poly g = poly_powmod_p_power(x, d_ / l, f);
            g = poly_sub(g, x);
            if (poly_deg(poly_gcd(g, f)) != 0) return false;
        }
        return true;
    }

    // --- minimal F_p[x] helpers (modulus search only) -------------------

    std::uint32_t poly_eval(const Poly& f, std::uint32_t x) const {
        std::uint64_t acc = 0;
        for (std::size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p_;
        return static_cast<std::uint32_t>(acc);
    }

    static int poly_deg(const Poly& f) {
        for (std::size_t i = f.size(); i-- > 0;)
            if (f[i] != 0) return static_cast<int>(i);
        return -1;
    }

    Poly poly_sub(Poly a, const Poly& b) const {
        if (a.size() < b.size()) a.resize(b.size(), 0);
        for (std::size_t i = 0; i < b.size(); ++i)
            a[i] = (a[i] + p_ - b[i] % p_) % p_;
        while (a.size() > 1 && a.back() == 0) a.pop_back();
        return a;
    }

    Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m) const {
        Poly prod(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j)
                prod[i + j] = static_cast<std::uint32_t>(
                    (prod[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p_);
        }
        return poly_mod(prod, m);
    }

    Poly poly_mod(Poly a, const Poly& m) const {
        int dm = poly_deg(m);
        std::uint32_t lead_inv = mod_inv(m[dm]);
        for (int k = poly_deg(a); k >= dm; k = poly_deg(a)) {
            std::uint64_t c = (static_cast<std::uint64_t>(a[k]) * lead_inv) % p_;
            for (int i = 0; i <= dm; ++i)
                a[k - dm + i] = static_cast<std::uint32_t>(
                    (a[k - dm + i] + p_ - (c * m[i]) % p_) % p_);
        }
        while (a.size() > 1 && a.back() == 0) a.pop_back();
        return a;
    }

    Poly poly_gcd(Poly a, Poly b) const {
        while (poly_deg(b) >= 0) {
            Poly r = poly_mod(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        // normalize to monic so "deg 0" means unit gcd
        int da = poly_deg(a);
        if (da >= 0) {
            std::uint32_t li = mod_inv(a[da]);
            for (auto& c : a)
                c = static_cast<std::uint32_t>((static_cast<std::uint64_t>(c) * li) % p_);
        }
        return a;
    }

    /// x |-> x^{p^e} mod f by repeated p-th powers.
    Poly poly_powmod_p_power(Poly x, std::uint32_t e, const Poly& f) const {
        for (std::uint32_t s = 0; s < e; ++s) {
            Poly r = {1};
            Poly base = x;
            std::uint32_t k = p_;
            while (k > 0) {
                if (k & 1) r = poly_mulmod(r, base, f);
                base = poly_mulmod(base, base, f);
                k >>= 1;
            }
            x = std::move(r);
        }
        return x;
    }

    std::uint32_t mod_inv(std::uint32_t a) const {
        std::uint32_t r = 1, e = p_ - 2;
        std::uint64_t base = a % p_;
        while (e > 0) {
            if (e & 1) r = static_cast<std::uint32_t>((r * base) % p_);
            base = (base * base) % p_;
            e >>= 1;
        }
        return r;
    }

    struct Shared {
        Poly modulus;
        std::once_flag eta_once;
        std::vector<std::int8_t> eta_table; // filled once under eta_once
    };

    std::uint32_t p_, d_, q_;
    std::shared_ptr<Shared> shared_;
};

/// g(q, m): the coefficient attached to a rank-m term.  Zero for odd m;
/// for even m it equals (g1(q)/q)^m, i.e. 1/q^{m/2} with a minus sign on
/// the base exactly when q = 3 mod 4.  g(q, 0) = 1.
inline Rational g_const(std::uint32_t q, std::uint32_t m) {
    if (m % 2 == 1) return Rational(0);
    long long den = 1;
    for (std::uint32_t i = 0; i < m / 2; ++i) {
        if (den > (1LL << 62) / q) throw input_error("g(q,m) denominator overflow");
        den *= q;
    }
    int sign = (q % 4 == 3 && (m / 2) % 2 == 1) ? -1 : 1;
    return Rational(sign, den);
}

/// Closed form of the one-dimensional Gaussian sum sum_x h(x^2):
/// (-1)^{d-1} sqrt(q) for p = 1 mod 4, (-1)^{d-1} i^d sqrt(q) for
/// p = 3 mod 4.
inline G1Symbolic g1_symbolic(const FieldCtx& f) {
    G1Symbolic g;
    g.sign = (f.d() % 2 == 1) ? 1 : -1; // (-1)^{d-1}
    if (f.p() % 4 == 3) {
        switch (f.d() % 4) {
        case 1: g.imaginary = true; break;
        case 2: g.sign = -g.sign; break;
        case 3: g.imaginary = true; g.sign = -g.sign; break;
        case 0: break;
        }
    }
    return g;
}

/// The same constant as an exact cyclotomic integer, by direct summation
/// over the q field elements.
inline CyclotomicInt g1_cyclotomic(const FieldCtx& f) {
    CyclotomicInt acc(f.p());
    for (std::uint32_t i = 0; i < f.q(); ++i) {
        FqElem x = f.element(i);
        acc += f.additive_char(f.mul(x, x));
    }
    return acc;
}

} // namespace alpharep
