/*
   Copyright 2026 The tmod Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef TMOD_APOLY_HPP
#define TMOD_APOLY_HPP

#include <string>
#include <utility>
#include <vector>

#include "laurent.hpp"

namespace tmod {

/* elements of A = F_q[t] */
using APoly = Poly<Fq>;
using KLaurent = Laurent<Fq>;

inline APoly a_zero(const GF* F) { return APoly(Fq(F, 0)); }
inline APoly a_const(const GF* F, long long c) { return APoly::constant(Fq::from_int(F, c)); }
inline APoly a_t(const GF* F) { return APoly::x(Fq(F, 0)); }
/* polynomial from ascending integer coefficients */
inline APoly a_from(const GF* F, const std::vector<long long>& c) {
    std::vector<Fq> v;
    for (long long x : c) v.push_back(Fq::from_int(F, x));
    return APoly(Fq(F, 0), v);
}

/* f(t) -> f(t^e); for e a power of q this is the q-power Frobenius on A */
inline APoly twist(const APoly& f, long long e) {
    if (f.is_zero() || e == 1) return f;
    std::vector<Fq> v(static_cast<std::size_t>(f.degree() * e + 1), f.zero());
    for (int i = 0; i <= f.degree(); ++i) v[static_cast<std::size_t>(i * e)] = f[i];
    return APoly(f.zero(), std::move(v));
}

inline std::pair<APoly, APoly> a_divmod(const APoly& a, const APoly& b) { return a.divmod(b, b.lead().inverse()); }
inline APoly a_mod(const APoly& a, const APoly& b) { return a_divmod(a, b).second; }

inline APoly make_monic(const APoly& a) {
    if (a.is_zero()) return a;
    return a.lead().inverse() * a;
}

inline APoly a_gcd(APoly a, APoly b) {
    while (!b.is_zero()) {
        APoly r = a_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

/* x^e mod m by square and multiply */
inline APoly a_powmod(APoly x, unsigned long long e, const APoly& m) {
    APoly r = a_mod(x.one_like(), m);
    x = a_mod(x, m);
    while (e) {
        if (e & 1ull) r = a_mod(r * x, m);
        x = a_mod(x * x, m);
        e >>= 1ull;
    }
    return r;
}

/* Ben-Or test: f has no factor of degree k <= deg f / 2 */
inline bool a_is_irreducible(const APoly& f) {
    const int d = f.degree();
    if (d < 1) return false;
    if (d == 1) return true;
    const APoly t = a_t(f.zero().field());
    const unsigned long long q = f.zero().field()->q;
    APoly h = a_mod(t, f);
    for (int k = 1; k <= d / 2; ++k) {
        h = a_powmod(h, q, f);
        if (a_gcd(f, h - t).degree() > 0) return false;
    }
    return true;
}

/**
 * Monic irreducible polynomials of degree d over F_q in increasing order:
 * coefficient vectors compared from the highest degree down.
 */
inline std::vector<APoly> enumerate_monic_irreducibles(const GF* F, int d) {
    std::vector<APoly> out;
    if (d < 1) return out;
    const Fq z(F, 0);
    unsigned long long count = 1;
    for (int i = 0; i < d; ++i) count *= F->q;
    for (unsigned long long idx = 0; idx < count; ++idx) {
        std::vector<Fq> c(d + 1, z);
        c[d] = Fq(F, 1);
        unsigned long long k = idx;
        for (int i = 0; i < d; ++i) {
            c[i] = Fq(F, static_cast<std::uint32_t>(k % F->q));
            k /= F->q;
        }
        APoly f(z, std::move(c));
        if (a_is_irreducible(f)) out.push_back(std::move(f));
    }
    return out;
}

/**
 * Element of k = F_q(t) in lowest terms with monic denominator.
 */
class RatFunc {
public:
    RatFunc() = default;
    explicit RatFunc(const APoly& num) : num_(num), den_(num.one_like()) {}
    RatFunc(const APoly& num, const APoly& den) : num_(num), den_(den) { normalize(); }

    static RatFunc zero(const GF* F) { return RatFunc(a_zero(F)); }
    static RatFunc one(const GF* F) { return RatFunc(a_const(F, 1)); }

    const APoly& num() const { return num_; }
    const APoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_.degree() == 0; }
    RatFunc zero_like() const { return RatFunc(num_.zero_like()); }
    RatFunc one_like() const { return RatFunc(num_.one_like()); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) { return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_); }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_); }
    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero() || b.is_zero()) return RatFunc(pick_ctx(a.num_, b.num_).zero_like());
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw AlgebraError("rational function division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    RatFunc twist(long long e) const { return RatFunc(tmod::twist(num_, e), tmod::twist(den_, e)); }

    /* valuation at infinity in u = 1/t */
    int valuation() const { return is_zero() ? KLaurent::kExact : den_.degree() - num_.degree(); }

    /* expansion in u, known modulo u^prec */
    KLaurent to_laurent(int prec) const {
        const Fq z = num_.zero();
        if (is_zero()) return KLaurent(z, prec);
        const KLaurent n = KLaurent::from_poly(num_);
        if (is_poly()) return (den_.lead().inverse() * n).truncate(prec);
        const KLaurent dinv = laurent_inverse(KLaurent::from_poly(den_), prec + num_.degree());
        return (n * dinv).truncate(prec);
    }

    std::string str() const {
        if (is_poly()) return num_.str();
        auto wrap = [](const APoly& p) {
            std::string s = p.str();
            return s.find('+') == std::string::npos ? s : "(" + s + ")";
        };
        return wrap(num_) + "/" + wrap(den_);
    }

private:
    APoly num_;
    APoly den_;

    void normalize() {
        if (den_.is_zero()) throw AlgebraError("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = den_.one_like();
            return;
        }
        APoly g = a_gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = a_divmod(num_, g).first;
            den_ = a_divmod(den_, g).first;
        }
        const Fq li = den_.lead().inverse();
        num_ = li * num_;
        den_ = li * den_;
    }
};

inline const RatFunc& pick_ctx(const RatFunc& a, const RatFunc& b) { return &pick_ctx(a.num(), b.num()) == &a.num() ? a : b; }

}  // namespace tmod

#endif
