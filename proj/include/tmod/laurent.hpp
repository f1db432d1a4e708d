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

#ifndef TMOD_LAURENT_HPP
#define TMOD_LAURENT_HPP

#include <algorithm>
#include <climits>
#include <string>
#include <vector>

#include "poly.hpp"

namespace tmod {

struct PrecisionError : AlgebraError {
    using AlgebraError::AlgebraError;
};

struct LaurentInverseError : AlgebraError {
    enum class Kind {
        non_unit,               // exact value without an invertible coefficient
        insufficient_precision, // no invertible coefficient within the known range
        non_unit_leading        // a later coefficient is a unit; needs componentwise inversion
    };
    Kind kind;
    LaurentInverseError(Kind k, const std::string& what) : AlgebraError(what), kind(k) {}
};

/* ring elements that can test and perform inversion */
template <typename R>
concept InvertibleRing = Ring<R> && requires(R a) {
    { a.is_unit() } -> std::convertible_to<bool>;
    { a.inverse() } -> std::convertible_to<R>;
};

/**
 * Laurent series in u = 1/t with an absolute precision: the value is known
 * modulo u^prec. Exact values (polynomials in t, constants) carry kExact.
 */
template <Ring R>
class Laurent {
public:
    static constexpr int kExact = INT_MAX / 4;

    Laurent() = default;
    explicit Laurent(const R& zero, int prec = kExact) : zero_(zero.zero_like()), prec_(prec) {}
    /* coefficients c[k] of u^(val+k) */
    Laurent(const R& zero, int val, std::vector<R> c, int prec) : zero_(zero.zero_like()), val_(val), c_(std::move(c)), prec_(prec) {
        normalize();
    }

    static Laurent constant(const R& c, int prec = kExact) { return Laurent(c, 0, {c}, prec); }
    /* c * u^k */
    static Laurent monomial(const R& c, int k, int prec = kExact) { return Laurent(c, k, {c}, prec); }
    /* a polynomial in t, exactly */
    static Laurent from_poly(const Poly<R>& f) {
        if (f.is_zero()) return Laurent(f.zero());
        std::vector<R> c(f.coeffs().rbegin(), f.coeffs().rend());
        return Laurent(f.zero(), -f.degree(), std::move(c), kExact);
    }

    const R& zero() const { return zero_; }
    R one() const { return zero_.one_like(); }
    int prec() const { return prec_; }
    bool exact() const { return prec_ >= kExact; }
    bool is_zero() const { return c_.empty(); }
    /* smallest exponent with a nonzero coefficient; prec for a zero value */
    int valuation() const { return c_.empty() ? prec_ : val_; }
    R lead() const { return c_.empty() ? zero_ : c_.front(); }
    /* largest exponent with a stored coefficient */
    int top() const { return val_ + static_cast<int>(c_.size()) - 1; }

    R operator[](int k) const {
        if (k >= prec_) throw PrecisionError("coefficient of u^" + std::to_string(k) + " beyond precision " + std::to_string(prec_));
        const int i = k - val_;
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : zero_;
    }
    R coeff(int k) const { return (*this)[k]; }

    Laurent zero_like() const { return Laurent(zero_); }
    Laurent one_like() const { return constant(one()); }

    Laurent truncate(int prec) const {
        Laurent r = *this;
        r.prec_ = std::min(prec_, prec);
        r.normalize();
        return r;
    }
    Laurent with_prec(int prec) const { return truncate(prec); }
    /* multiply by u^k */
    Laurent shift(int k) const {
        Laurent r = *this;
        r.val_ += k;
        if (!exact()) r.prec_ += k;
        return r;
    }

    friend Laurent operator+(const Laurent& a, const Laurent& b) { return combine(a, b, false); }
    friend Laurent operator-(const Laurent& a, const Laurent& b) { return combine(a, b, true); }
    Laurent operator-() const {
        Laurent r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        const R& z = pick_ctx(a.zero_, b.zero_);
        int prec = kExact;
        if (!a.exact()) prec = std::min<long long>(prec, static_cast<long long>(a.prec_) + std::min(b.valuation(), kExact / 2));
        if (!b.exact()) prec = std::min<long long>(prec, static_cast<long long>(b.prec_) + std::min(a.valuation(), kExact / 2));
        if (a.c_.empty() || b.c_.empty()) return Laurent(z, prec);
        const int val = a.val_ + b.val_;
        long long len = static_cast<long long>(a.c_.size()) + static_cast<long long>(b.c_.size()) - 1;
        if (prec < kExact) len = std::min<long long>(len, std::max(0LL, static_cast<long long>(prec) - val));
        std::vector<R> c(static_cast<std::size_t>(len), z.zero_like());
        for (std::size_t i = 0; i < a.c_.size() && static_cast<long long>(i) < len; ++i) {
            if (a.c_[i].is_zero()) continue;
            const std::size_t jmax = std::min<std::size_t>(b.c_.size(), static_cast<std::size_t>(len - static_cast<long long>(i)));
            for (std::size_t j = 0; j < jmax; ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        }
        return Laurent(z, val, std::move(c), prec);
    }
    friend Laurent operator*(const R& s, const Laurent& a) {
        Laurent r = a;
        for (auto& x : r.c_) x = s * x;
        r.normalize();
        return r;
    }
    Laurent& operator+=(const Laurent& b) { return *this = *this + b; }
    Laurent& operator-=(const Laurent& b) { return *this = *this - b; }
    Laurent& operator*=(const Laurent& b) { return *this = *this * b; }

    /* structural equality: same coefficients and same precision */
    friend bool operator==(const Laurent& a, const Laurent& b) {
        if (a.prec_ != b.prec_ || a.c_.size() != b.c_.size()) return false;
        if (!a.c_.empty() && a.val_ != b.val_) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }

    /**
     * Equality modulo u^n. Both operands must be known to that precision;
     * asking for more raises PrecisionError rather than passing silently.
     */
    friend bool agrees(const Laurent& a, const Laurent& b, int n) {
        if (a.prec_ < n || b.prec_ < n)
            throw PrecisionError("comparison modulo u^" + std::to_string(n) + " needs precision " + std::to_string(n) + ", have " +
                                 std::to_string(std::min(a.prec_, b.prec_)));
        const int lo = std::min(a.c_.empty() ? n : a.val_, b.c_.empty() ? n : b.val_);
        for (int k = lo; k < n; ++k)
            if (!(a.raw(k) == b.raw(k))) return false;
        return true;
    }
    /* equality at the common precision of the operands */
    friend bool agrees(const Laurent& a, const Laurent& b) {
        const int n = std::min(a.prec_, b.prec_);
        if (n >= kExact) return a == b;
        return agrees(a, b, n);
    }

    R raw(int k) const {
        const int i = k - val_;
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : zero_;
    }

    Laurent pow(unsigned e) const {
        Laurent r = one_like(), b = *this;
        while (e) {
            if (e & 1u) r = r * b;
            b = b * b;
            e >>= 1u;
        }
        return r;
    }

    /* terms with exponent <= 0 in u: the polynomial part in t */
    Laurent polar_part() const {
        Laurent r(zero_);
        for (int k = val_; k <= std::min(0, top()); ++k) r.c_.push_back(raw(k));
        r.val_ = val_;
        r.normalize();
        return r;
    }
    Poly<R> to_poly() const {
        std::vector<R> v;
        for (int k = std::min(val_, 0); k <= 0; ++k) v.push_back(raw(k));
        std::reverse(v.begin(), v.end());
        return Poly<R>(zero_, std::move(v));
    }
    /* terms with exponent >= 1 in u, keeping the precision */
    Laurent fractional_part() const {
        Laurent r = *this;
        if (c_.empty()) return r;
        std::vector<R> c;
        for (int k = std::max(1, val_); k <= top(); ++k) c.push_back(raw(k));
        return Laurent(zero_, std::max(1, val_), std::move(c), prec_);
    }

    /* apply f to every coefficient and substitute u -> u^e (e >= 1) */
    template <typename F>
    Laurent substitute(int e, F&& f) const {
        Laurent r(zero_);
        r.prec_ = exact() ? kExact : prec_ * e;
        if (c_.empty()) return r;
        r.val_ = val_ * e;
        r.c_.assign((c_.size() - 1) * e + 1, zero_);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * e] = f(c_[i]);
        r.normalize();
        return r;
    }
    template <typename F>
    auto map(F&& f) const {
        using S = decltype(f(zero_));
        std::vector<S> c;
        c.reserve(c_.size());
        for (const auto& x : c_) c.push_back(f(x));
        return Laurent<S>(f(zero_), val_, std::move(c), prec_);
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            const int k = val_ + static_cast<int>(i);
            if (!s.empty()) s += " + ";
            s += detail::monomial(c_[i], "t", -k);
        }
        if (!exact()) {
            if (!s.empty()) s += " + ";
            s += prec_ == 0 ? "O(1)" : prec_ == -1 ? "O(t)" : "O(t^" + std::to_string(-prec_) + ")";
        } else if (s.empty()) {
            s = "0";
        }
        return s;
    }

    const std::vector<R>& coeffs() const { return c_; }
    int val() const { return val_; }

private:
    R zero_{};
    int val_ = 0;
    std::vector<R> c_;
    int prec_ = kExact;

    void normalize() {
        if (!exact()) {
            const long long keep = static_cast<long long>(prec_) - val_;
            if (keep <= 0) c_.clear();
            else if (static_cast<long long>(c_.size()) > keep) c_.resize(static_cast<std::size_t>(keep));
        }
        std::size_t lead = 0;
        while (lead < c_.size() && c_[lead].is_zero()) ++lead;
        if (lead) {
            c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
            val_ += static_cast<int>(lead);
        }
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
        if (c_.empty()) val_ = 0;
    }

    static Laurent combine(const Laurent& a, const Laurent& b, bool minus) {
        const R& z = pick_ctx(a.zero_, b.zero_);
        const int prec = std::min(a.prec_, b.prec_);
        if (a.c_.empty() && b.c_.empty()) return Laurent(z, prec);
        int lo = std::min(a.c_.empty() ? INT_MAX : a.val_, b.c_.empty() ? INT_MAX : b.val_);
        int hi = std::max(a.c_.empty() ? INT_MIN : a.top(), b.c_.empty() ? INT_MIN : b.top());
        if (prec < kExact) hi = std::min(hi, prec - 1);
        if (hi < lo) return Laurent(z, prec);
        std::vector<R> c(static_cast<std::size_t>(hi - lo + 1), z.zero_like());
        for (int k = lo; k <= hi; ++k) c[k - lo] = minus ? a.raw(k) - b.raw(k) : a.raw(k) + b.raw(k);
        return Laurent(z, lo, std::move(c), prec);
    }
};

template <Ring R>
const Laurent<R>& pick_ctx(const Laurent<R>& a, const Laurent<R>& b) {
    return &pick_ctx(a.zero(), b.zero()) == &a.zero() ? a : b;
}

/**
 * Inverse of a Laurent series whose leading coefficient is a unit of R.
 * The result has the same relative precision as x; exact inputs are
 * inverted to absolute precision prec_cap.
 */
template <InvertibleRing R>
Laurent<R> laurent_inverse(const Laurent<R>& x, int prec_cap = Laurent<R>::kExact) {
    using L = Laurent<R>;
    if (x.is_zero()) {
        if (x.exact()) throw LaurentInverseError(LaurentInverseError::Kind::non_unit, "inverse of exact zero");
        throw LaurentInverseError(LaurentInverseError::Kind::insufficient_precision, "value is zero to precision " + std::to_string(x.prec()));
    }
    const int v = x.valuation();
    const R lead = x.lead();
    if (!lead.is_unit()) {
        for (const auto& c : x.coeffs())
            if (c.is_unit())
                throw LaurentInverseError(LaurentInverseError::Kind::non_unit_leading,
                                          "leading coefficient is not a unit but a later one is");
        if (x.exact()) throw LaurentInverseError(LaurentInverseError::Kind::non_unit, "no coefficient is a unit");
        throw LaurentInverseError(LaurentInverseError::Kind::insufficient_precision,
                                  "no unit coefficient within precision " + std::to_string(x.prec()));
    }
    long long target = x.exact() ? static_cast<long long>(prec_cap) : static_cast<long long>(x.prec()) - 2LL * v;
    target = std::min<long long>(target, prec_cap);
    if (target >= L::kExact) throw PrecisionError("inverse of an exact series needs a precision cap");
    /* y = lead^{-1} (1 + w)^{-1} u^{-v}, solved coefficient by coefficient */
    const int rel = static_cast<int>(target + v);  // number of coefficients needed
    const R li = lead.inverse();
    std::vector<R> y(std::max(rel, 0), x.zero());
    for (int k = 0; k < rel; ++k) {
        R s = k == 0 ? x.one() : x.zero();
        for (int j = 1; j <= k; ++j) {
            const int e = v + j;
            if (e > x.top()) break;
            s = s - x.raw(e) * y[k - j];
        }
        y[k] = s * li;
    }
    return L(x.zero(), -v, std::move(y), static_cast<int>(target));
}

}  // namespace tmod

#endif
