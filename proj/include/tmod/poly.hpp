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

#ifndef TMOD_POLY_HPP
#define TMOD_POLY_HPP

#include <algorithm>
#include <concepts>
#include <string>
#include <vector>

#include "gf.hpp"

namespace tmod {

/**
 * Commutative ring with context-carrying elements. Containers keep a zero
 * prototype so that constants can be produced without global state.
 */
template <typename R>
concept Ring = requires(R a, R b) {
    { a + b } -> std::convertible_to<R>;
    { a - b } -> std::convertible_to<R>;
    { a * b } -> std::convertible_to<R>;
    { -a } -> std::convertible_to<R>;
    { a == b } -> std::convertible_to<bool>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.zero_like() } -> std::convertible_to<R>;
    { a.one_like() } -> std::convertible_to<R>;
    { a.str() } -> std::convertible_to<std::string>;
};

namespace detail {

/* "c*var^k" with the canonical omissions */
template <Ring R>
std::string monomial(const R& c, const std::string& var, int k) {
    const bool unit = c == c.one_like();
    std::string cs = c.str();
    bool paren = cs.find('+') != std::string::npos || cs.find(' ') != std::string::npos;
    if (k == 0) return paren ? "(" + cs + ")" : cs;
    std::string m = var;
    if (k != 1) m += "^" + std::to_string(k);
    if (unit) return m;
    return (paren ? "(" + cs + ")" : cs) + "*" + m;
}

}  // namespace detail

/**
 * Polynomial over a commutative ring, coefficients by ascending exponent.
 * Canonical form has no trailing zero coefficient.
 */
template <Ring R>
class Poly {
public:
    Poly() = default;
    explicit Poly(const R& zero) : zero_(zero.zero_like()) {}
    Poly(const R& zero, std::vector<R> coeffs) : zero_(zero.zero_like()), c_(std::move(coeffs)) { normalize(); }

    static Poly constant(const R& c) { return Poly(c, {c}); }
    static Poly monomial(const R& c, int k) {
        std::vector<R> v(k + 1, c.zero_like());
        v[k] = c;
        return Poly(c, std::move(v));
    }
    /* the variable itself */
    static Poly x(const R& zero) { return monomial(zero.one_like(), 1); }

    const R& zero() const { return zero_; }
    R one() const { return zero_.one_like(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<R>& coeffs() const { return c_; }
    R operator[](int k) const { return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : zero_; }
    R lead() const { return c_.empty() ? zero_ : c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == one(); }

    Poly zero_like() const { return Poly(zero_); }
    Poly one_like() const { return constant(one()); }

    void set(int k, const R& v) {
        if (k >= static_cast<int>(c_.size())) c_.resize(k + 1, zero_);
        c_[k] = v;
        normalize();
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r(a.pick_zero(b));
        const std::size_t n = std::max(a.c_.size(), b.c_.size());
        r.c_.assign(n, r.zero_);
        for (std::size_t i = 0; i < n; ++i) r.c_[i] = a[static_cast<int>(i)] + b[static_cast<int>(i)];
        r.normalize();
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly r(a.pick_zero(b));
        const std::size_t n = std::max(a.c_.size(), b.c_.size());
        r.c_.assign(n, r.zero_);
        for (std::size_t i = 0; i < n; ++i) r.c_[i] = a[static_cast<int>(i)] - b[static_cast<int>(i)];
        r.normalize();
        return r;
    }
    Poly operator-() const {
        Poly r(zero_);
        r.c_.reserve(c_.size());
        for (const auto& x : c_) r.c_.push_back(-x);
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r(a.pick_zero(b));
        if (a.c_.empty() || b.c_.empty()) return r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, r.zero_);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
        }
        r.normalize();
        return r;
    }
    friend Poly operator*(const R& s, const Poly& a) {
        Poly r(a.zero_);
        for (const auto& x : a.c_) r.c_.push_back(s * x);
        r.normalize();
        return r;
    }
    Poly& operator+=(const Poly& b) { return *this = *this + b; }
    Poly& operator-=(const Poly& b) { return *this = *this - b; }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }
    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /* lexicographic on the coefficient vector, highest degree first */
    friend bool operator<(const Poly& a, const Poly& b) {
        if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
        for (int i = static_cast<int>(a.c_.size()) - 1; i >= 0; --i)
            if (!(a.c_[i] == b.c_[i])) return a.c_[i] < b.c_[i];
        return false;
    }

    R eval(const R& x) const {
        R acc = zero_;
        for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
        return acc;
    }
    /* composition self(g) */
    Poly compose(const Poly& g) const {
        Poly acc(zero_);
        for (int i = degree(); i >= 0; --i) acc = acc * g + constant(c_[i]);
        return acc;
    }
    Poly pow(unsigned e) const {
        Poly r = one_like(), b = *this;
        while (e) {
            if (e & 1u) r = r * b;
            b = b * b;
            e >>= 1u;
        }
        return r;
    }
    Poly shift(int k) const {
        if (c_.empty() || k == 0) return *this;
        Poly r(zero_);
        r.c_.assign(k, zero_);
        r.c_.insert(r.c_.end(), c_.begin(), c_.end());
        return r;
    }
    template <typename F>
    auto map_coeffs(F&& f) const {
        using S = decltype(f(zero_));
        std::vector<S> v;
        v.reserve(c_.size());
        for (const auto& x : c_) v.push_back(f(x));
        return Poly<S>(f(zero_), std::move(v));
    }

    /**
     * Division with remainder by a divisor whose leading coefficient is
     * invertible via lead_inv. Returns {quotient, remainder}.
     */
    std::pair<Poly, Poly> divmod(const Poly& d, const R& lead_inv) const {
        if (d.is_zero()) throw AlgebraError("polynomial division by zero");
        Poly q(zero_), r = *this;
        if (degree() < d.degree()) return {q, r};
        q.c_.assign(degree() - d.degree() + 1, zero_);
        while (!r.is_zero() && r.degree() >= d.degree()) {
            const int s = r.degree() - d.degree();
            R c = r.lead() * lead_inv;
            q.c_[s] = c;
            std::vector<R> rc = r.c_;
            for (int i = 0; i <= d.degree(); ++i) rc[s + i] = rc[s + i] - c * d.c_[i];
            rc.pop_back();
            r = Poly(zero_, std::move(rc));
        }
        q.normalize();
        return {q, r};
    }

    std::string str(const std::string& var = "t") const {
        if (c_.empty()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            if (c_[i].is_zero()) continue;
            if (!s.empty()) s += "+";
            s += detail::monomial(c_[i], var, i);
        }
        return s;
    }

private:
    R zero_{};
    std::vector<R> c_;

    void normalize() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    const R& pick_zero(const Poly& other) const { return pick_ctx(zero_, other.zero_); }
};

template <Ring R>
const Poly<R>& pick_ctx(const Poly<R>& a, const Poly<R>& b) {
    return &pick_ctx(a.zero(), b.zero()) == &a.zero() ? a : b;
}

}  // namespace tmod

#endif
