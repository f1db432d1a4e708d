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

#ifndef TMOD_TMODULE_HPP
#define TMOD_TMODULE_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "apoly.hpp"
#include "matrix.hpp"

namespace tmod {

using AMat = Matrix<APoly>;
using KMat = Matrix<RatFunc>;

inline AMat twist(const AMat& m, long long e) {
    return m.map([e](const APoly& f) { return twist(f, e); });
}
inline KMat twist(const KMat& m, long long e) {
    return m.map([e](const RatFunc& f) { return f.twist(e); });
}
inline KMat to_k(const AMat& m) {
    return m.map([](const APoly& f) { return RatFunc(f); });
}

inline long long qpow(long long q, int j) {
    long long r = 1;
    while (j-- > 0) r *= q;
    return r;
}

/**
 * Twisted polynomial sum_i C_i tau^i with matrix coefficients over A, where
 * tau * f = f^q * tau.
 */
struct TauPoly {
    const GF* F = nullptr;
    int n = 0;
    std::vector<AMat> c;

    TauPoly() = default;
    TauPoly(const GF* field, int dim) : F(field), n(dim) {}

    static TauPoly scalar(const GF* F, int n, const APoly& a) {
        TauPoly p(F, n);
        AMat m(n, n, a_zero(F));
        for (int i = 0; i < n; ++i) m(i, i) = a;
        p.c.push_back(m);
        p.trim();
        return p;
    }
    static TauPoly identity(const GF* F, int n) { return scalar(F, n, a_const(F, 1)); }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    AMat coeff(int i) const { return (i >= 0 && i <= degree()) ? c[i] : AMat(n, n, a_zero(F)); }

    friend TauPoly operator+(const TauPoly& a, const TauPoly& b) {
        TauPoly r(a.F, a.n);
        const int d = std::max(a.degree(), b.degree());
        for (int i = 0; i <= d; ++i) r.c.push_back(a.coeff(i) + b.coeff(i));
        r.trim();
        return r;
    }
    friend TauPoly operator-(const TauPoly& a, const TauPoly& b) {
        TauPoly r(a.F, a.n);
        const int d = std::max(a.degree(), b.degree());
        for (int i = 0; i <= d; ++i) r.c.push_back(a.coeff(i) - b.coeff(i));
        r.trim();
        return r;
    }
    friend TauPoly operator*(const TauPoly& a, const TauPoly& b) {
        TauPoly r(a.F, a.n);
        if (a.c.empty() || b.c.empty()) return r;
        const long long q = a.F->q;
        r.c.assign(a.c.size() + b.c.size() - 1, AMat(a.n, a.n, a_zero(a.F)));
        for (int i = 0; i <= a.degree(); ++i)
            for (int j = 0; j <= b.degree(); ++j) r.c[i + j] = r.c[i + j] + a.c[i] * twist(b.c[j], qpow(q, i));
        r.trim();
        return r;
    }
    friend bool operator==(const TauPoly& a, const TauPoly& b) {
        if (a.degree() != b.degree()) return false;
        for (int i = 0; i <= a.degree(); ++i)
            if (!(a.c[i] == b.c[i])) return false;
        return true;
    }

    std::string str() const {
        std::string s;
        for (int i = 0; i <= degree(); ++i) {
            if (c[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += (n == 1 ? c[i](0, 0).str() : c[i].str()) + (i ? "*tau^" + std::to_string(i) : "");
        }
        return s.empty() ? "0" : s;
    }

private:
    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
};

/**
 * t-module over A: phi(t) = dE + M_1 tau + ... + M_l tau^l with
 * dE = t*Id + N and N nilpotent.
 */
struct TModuleSpec {
    const GF* F = nullptr;
    int n = 1;
    AMat dE;
    std::vector<AMat> M;  // M[j-1] is the coefficient of tau^j
    std::string name;

    int ell() const { return static_cast<int>(M.size()); }
    AMat N() const {
        AMat r = dE;
        for (int i = 0; i < n; ++i) r(i, i) = r(i, i) - a_t(F);
        return r;
    }
    TauPoly phi_t() const {
        TauPoly p(F, n);
        p.c.push_back(dE);
        for (const auto& m : M) p.c.push_back(m);
        while (p.c.size() > 1 && p.c.back().is_zero()) p.c.pop_back();
        return p;
    }
    bool drinfeld() const { return n == 1; }

    /* N^n = 0 and dE - t*Id = N */
    void validate() const {
        if (dE.rows() != n || dE.cols() != n) throw AlgebraError("d[t] has the wrong shape");
        for (const auto& m : M)
            if (m.rows() != n || m.cols() != n) throw AlgebraError("tau coefficient has the wrong shape");
        if (!N().pow(static_cast<unsigned>(n)).is_zero()) throw AlgebraError("d[t] - t*Id is not nilpotent");
    }
    /* largest t-degree of the entries of N; the filtration arguments need 0 */
    int n_degree() const {
        int d = -1;
        const AMat nn = N();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) d = std::max(d, nn(i, j).degree());
        return d;
    }
    std::string str() const {
        std::string s = name.empty() ? "t-module" : name;
        return s + " (dim " + std::to_string(n) + "): phi(t) = " + phi_t().str();
    }
};

inline TModuleSpec make_drinfeld(const GF* F, const std::vector<APoly>& a) {
    TModuleSpec E;
    E.F = F;
    E.n = 1;
    E.dE = AMat(1, 1, a_zero(F));
    E.dE(0, 0) = a_t(F);
    for (const auto& x : a) {
        AMat m(1, 1, a_zero(F));
        m(0, 0) = x;
        E.M.push_back(m);
    }
    while (!E.M.empty() && E.M.back().is_zero()) E.M.pop_back();
    if (E.M.empty()) throw AlgebraError("Drinfeld module needs a nonzero tau coefficient");
    E.name = "drinfeld";
    E.validate();
    return E;
}

inline TModuleSpec make_carlitz(const GF* F) {
    TModuleSpec E = make_drinfeld(F, {a_const(F, 1)});
    E.name = "carlitz";
    return E;
}

/* C^{(x)m}: d[t] = t + superdiagonal ones, M_1 = E_{m,1} */
inline TModuleSpec carlitz_tensor(const GF* F, int m) {
    if (m < 1) throw AlgebraError("tensor power must be positive");
    TModuleSpec E;
    E.F = F;
    E.n = m;
    E.dE = AMat(m, m, a_zero(F));
    for (int i = 0; i < m; ++i) E.dE(i, i) = a_t(F);
    for (int i = 0; i + 1 < m; ++i) E.dE(i, i + 1) = a_const(F, 1);
    AMat M1(m, m, a_zero(F));
    M1(m - 1, 0) = a_const(F, 1);
    E.M.push_back(M1);
    E.name = m == 1 ? "carlitz" : "carlitz_tensor(" + std::to_string(m) + ")";
    E.validate();
    return E;
}

/* phi_E(a) for a in A, by Horner in phi_E(t) */
inline TauPoly phi_eval(const TModuleSpec& E, const APoly& a) {
    const TauPoly pt = E.phi_t();
    TauPoly acc(E.F, E.n);
    for (int k = a.degree(); k >= 0; --k) acc = acc * pt + TauPoly::scalar(E.F, E.n, APoly::constant(a[k]));
    return acc;
}

/**
 * Exp_E = sum e_i tau^i, exact coefficients over k. Solves
 * e_i dE^(q^i) - dE e_i = sum_j M_j e_{i-j}^(q^j): with s = t^(q^i) - t and
 * T(e) = e N' - N e nilpotent, e_i = sum_k (-1)^k s^(-k-1) T^k(rhs).
 */
struct ExpSeries {
    const GF* F = nullptr;
    int n = 1;
    std::vector<KMat> e;

    int count() const { return static_cast<int>(e.size()); }
};

inline ExpSeries exp_coeffs(const TModuleSpec& E, int K) {
    if (K < 1) throw AlgebraError("coefficient count must be positive");
    const GF* F = E.F;
    const long long q = F->q;
    const int n = E.n;
    ExpSeries out{F, n, {}};
    out.e.push_back(KMat::identity(n, RatFunc::zero(F)));
    const KMat Nk = to_k(E.N());
    for (int i = 1; i < K; ++i) {
        KMat rhs(n, n, RatFunc::zero(F));
        for (int j = 1; j <= std::min(i, E.ell()); ++j) rhs = rhs + to_k(E.M[j - 1]) * twist(out.e[i - j], qpow(q, j));
        const APoly sp = twist(a_t(F), qpow(q, i)) - a_t(F);
        const RatFunc sinv(a_const(F, 1), sp);
        const KMat Np = twist(Nk, qpow(q, i));
        KMat term = rhs, ei(n, n, RatFunc::zero(F));
        RatFunc coef = sinv;
        for (int k = 0; k < 2 * n && !term.is_zero(); ++k) {
            ei = ei + coef * term;
            term = term * Np - Nk * term;
            coef = -(coef * sinv);
        }
        out.e.push_back(ei);
    }
    return out;
}

/* the compositional inverse, from Exp o Log = id */
inline ExpSeries log_coeffs(const TModuleSpec& E, int K) {
    const ExpSeries ex = exp_coeffs(E, K);
    const long long q = E.F->q;
    ExpSeries out{E.F, E.n, {}};
    out.e.push_back(ex.e[0]);
    for (int k = 1; k < K; ++k) {
        KMat s(E.n, E.n, RatFunc::zero(E.F));
        for (int i = 1; i <= k; ++i) s = s + ex.e[i] * twist(out.e[k - i], qpow(q, i));
        out.e.push_back(-s);
    }
    return out;
}

/* largest i below K where the functional equation fails, or -1 */
inline int exp_residual(const TModuleSpec& E, const ExpSeries& ex) {
    const long long q = E.F->q;
    const KMat d = to_k(E.dE);
    for (int i = 1; i < ex.count(); ++i) {
        KMat lhs = ex.e[i] * twist(d, qpow(q, i)) - d * ex.e[i];
        for (int j = 1; j <= std::min(i, E.ell()); ++j) lhs = lhs - to_k(E.M[j - 1]) * twist(ex.e[i - j], qpow(q, j));
        if (!lhs.is_zero()) return i;
    }
    return -1;
}

/* first order where sum_{i+j=k} a_i b_j^(q^i) fails to vanish, or -1 */
inline int composition_residual(const ExpSeries& a, const ExpSeries& b) {
    const long long q = a.F->q;
    const int K = std::min(a.count(), b.count());
    for (int k = 1; k < K; ++k) {
        KMat s(a.n, a.n, RatFunc::zero(a.F));
        for (int i = 0; i <= k; ++i) s = s + a.e[i] * twist(b.e[k - i], qpow(q, i));
        if (!s.is_zero()) return k;
    }
    return -1;
}

/* max over entries of deg(num) - deg(den) */
inline int norm_degree(const KMat& m) {
    int d = -KLaurent::kExact;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) d = std::max(d, m(i, j).num().degree() - m(i, j).den().degree());
    return d;
}

/* inverse of dE over k; dE = t + N with N nilpotent */
inline KMat dE_inverse(const TModuleSpec& E) {
    const GF* F = E.F;
    const KMat Nk = to_k(E.N());
    const RatFunc tinv(a_const(F, 1), a_t(F));
    KMat term = KMat::identity(E.n, RatFunc::zero(F)), acc(E.n, E.n, RatFunc::zero(F));
    RatFunc c = tinv;
    for (int k = 0; k < E.n; ++k) {
        acc = acc + c * term;
        term = term * Nk;
        c = -(c * tinv);
    }
    return acc;
}

/* ---------- Anderson motives of twisted Drinfeld modules ---------- */

/* polynomials in the motive variable x with coefficients in A */
using AXPoly = Poly<APoly>;

/**
 * Motive of E (x) C^{(x)m} for a Drinfeld module E with
 * phi(t) = t + a_1 tau + ... + a_r tau^r, a_r in F_q^*. The tau-matrix is
 * (x - t)^m times the companion matrix of E.
 */
struct MotiveSpec {
    const GF* F = nullptr;
    int r = 1;
    int m = 0;
    std::vector<APoly> a;  // a[k-1] = a_k
    Matrix<AXPoly> phi;    // tau(e_i) = sum_j phi(i,j) e_j

    int dimension() const { return r * m + 1; }
};

struct MotiveError : AlgebraError {
    using AlgebraError::AlgebraError;
};

inline MotiveSpec drinfeld_motive(const TModuleSpec& E, int m) {
    if (!E.drinfeld()) throw MotiveError("motive construction supports Drinfeld modules only");
    if (m < 0) throw MotiveError("twist must be nonnegative");
    const GF* F = E.F;
    MotiveSpec mo;
    mo.F = F;
    mo.r = E.ell();
    mo.m = m;
    for (const auto& Mj : E.M) mo.a.push_back(Mj(0, 0));
    const APoly ar = mo.a.back();
    if (ar.degree() != 0) throw MotiveError("leading tau coefficient must be a nonzero constant");
    const Fq ari = ar[0].inverse();
    const APoly z = a_zero(F);
    const AXPoly X = AXPoly::x(z) - AXPoly::constant(a_t(F));  // x - t
    const AXPoly Xm = X.pow(static_cast<unsigned>(m));
    const int r = mo.r;
    mo.phi = Matrix<AXPoly>(r, r, AXPoly(z));
    for (int i = 0; i + 1 < r; ++i) mo.phi(i, i + 1) = Xm;
    mo.phi(r - 1, 0) = AXPoly::constant(APoly::constant(ari)) * X * Xm;
    for (int k = 1; k < r; ++k) mo.phi(r - 1, k) = AXPoly::constant(-(ari * mo.a[k - 1])) * Xm;
    return mo;
}

namespace detail {

class MotiveReducer {
public:
    using Coord = std::vector<std::vector<APoly>>;  // [basis j][tau power]

    explicit MotiveReducer(const MotiveSpec& mo) : mo_(mo), z_(a_zero(mo.F)) {
        for (int a = 0; a <= mo.m; ++a) basis_.push_back({0, a});
        for (int i = 1; i < mo.r; ++i)
            for (int a = 0; a < mo.m; ++a) basis_.push_back({i, a});
    }

    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<std::pair<int, int>>& basis() const { return basis_; }

    /* y = sum_i y[i] e_i as a tau-combination of the basis */
    Coord express(const std::vector<AXPoly>& y) {
        Coord out = empty();
        const int r = mo_.r, m = mo_.m;
        std::vector<AXPoly> high(r, AXPoly(z_));  // h_k multiplies tau'(e_k)
        const AXPoly shift = AXPoly::x(z_) + AXPoly::constant(a_t(mo_.F));  // x = X + t
        for (int i = 0; i < r; ++i) {
            if (y[i].is_zero()) continue;
            const AXPoly tay = y[i].compose(shift);  // in powers of X
            const int bound = i == 0 ? m + 1 : m;
            AXPoly g(z_);
            for (int a = 0; a <= tay.degree(); ++a) {
                if (tay[a].is_zero()) continue;
                if (a < bound) add(out[index(i, a)], 0, tay[a]);
                else g.set(a - bound, tay[a]);
            }
            if (g.is_zero()) continue;
            if (i == 0) {
                /* X^{m+1} e_0 = a_r tau'(e_{r-1}) + sum_{k<r} a_k tau'(e_{k-1}) */
                high[r - 1] = high[r - 1] + AXPoly::constant(mo_.a[r - 1]) * g;
                for (int k = 1; k < r; ++k) high[k - 1] = high[k - 1] + AXPoly::constant(mo_.a[k - 1]) * g;
            } else {
                high[i - 1] = high[i - 1] + g;  // X^m e_i = tau'(e_{i-1})
            }
        }
        const AXPoly back = AXPoly::x(z_) - AXPoly::constant(a_t(mo_.F));  // X = x - t
        for (int k = 0; k < r; ++k) {
            if (high[k].is_zero()) continue;
            const AXPoly hx = high[k].compose(back);
            for (int s = 0; s <= hx.degree(); ++s) {
                if (hx[s].is_zero()) continue;
                const Coord& sub = monomial(s, k);
                /* b * tau * P(tau) = b * P^(1)(tau) * tau */
                for (int j = 0; j < dim(); ++j)
                    for (int l = 0; l < static_cast<int>(sub[j].size()); ++l)
                        if (!sub[j][l].is_zero()) add(out[j], l + 1, hx[s] * twist(sub[j][l], mo_.F->q));
            }
        }
        return out;
    }

    /* lift of basis element j as a vector over A[x] */
    std::vector<AXPoly> lift(int j) const {
        std::vector<AXPoly> v(mo_.r, AXPoly(z_));
        const AXPoly X = AXPoly::x(z_) - AXPoly::constant(a_t(mo_.F));
        v[basis_[j].first] = X.pow(static_cast<unsigned>(basis_[j].second));
        return v;
    }

private:
    const MotiveSpec& mo_;
    APoly z_;
    std::vector<std::pair<int, int>> basis_;
    std::map<std::pair<int, int>, Coord> memo_;

    Coord empty() const { return Coord(basis_.size()); }
    int index(int i, int a) const {
        for (int j = 0; j < dim(); ++j)
            if (basis_[j] == std::make_pair(i, a)) return j;
        throw MotiveError("basis index out of range");
    }
    static void add(std::vector<APoly>& v, int l, const APoly& c) {
        if (static_cast<int>(v.size()) <= l) v.resize(l + 1, c.zero_like());
        v[l] = v[l] + c;
    }
    const Coord& monomial(int s, int k) {
        auto key = std::make_pair(s, k);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        std::vector<AXPoly> y(mo_.r, AXPoly(z_));
        y[k] = AXPoly::monomial(a_const(mo_.F, 1), s);
        Coord c = express(y);
        return memo_.emplace(key, std::move(c)).first->second;
    }
};

}  // namespace detail

/**
 * The t-module of a motive: on the A{tau}-basis m_j, x m_j = sum P_jk(tau) m_k
 * and the coefficient of tau^l in P_jk is entry (j, k) of the l-th matrix.
 */
inline TModuleSpec motive_to_tmodule(const MotiveSpec& mo) {
    const GF* F = mo.F;
    detail::MotiveReducer red(mo);
    const int n = red.dim();
    if (n != mo.dimension()) throw MotiveError("unexpected motive dimension");
    std::vector<AMat> coef;
    for (int j = 0; j < n; ++j) {
        std::vector<AXPoly> y = red.lift(j);
        for (auto& c : y) c = AXPoly::x(a_zero(F)) * c;
        const auto P = red.express(y);
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < static_cast<int>(P[k].size()); ++l) {
                while (static_cast<int>(coef.size()) <= l) coef.emplace_back(n, n, a_zero(F));
                coef[l](j, k) = P[k][l];
            }
    }
    TModuleSpec E;
    E.F = F;
    E.n = n;
    E.dE = coef.empty() ? AMat(n, n, a_zero(F)) : coef[0];
    for (std::size_t l = 1; l < coef.size(); ++l) E.M.push_back(coef[l]);
    while (!E.M.empty() && E.M.back().is_zero()) E.M.pop_back();
    E.validate();
    return E;
}

/* E(m) = E (x) C^{(x)m} */
inline TModuleSpec drinfeld_twist(const TModuleSpec& E, int m) {
    if (m == 0) return E;
    TModuleSpec T = motive_to_tmodule(drinfeld_motive(E, m));
    T.name = E.name + "(" + std::to_string(m) + ")";
    return T;
}

/* det of the tau-matrix; for the supported family a unit times (x - t)^(rm+1) */
inline bool motive_determinant_ok(const MotiveSpec& mo) {
    const AXPoly d = determinant(mo.phi);
    const AXPoly X = AXPoly::x(a_zero(mo.F)) - AXPoly::constant(a_t(mo.F));
    const AXPoly target = X.pow(static_cast<unsigned>(mo.dimension()));
    if (d.degree() != target.degree()) return false;
    const APoly lead = d.lead();
    if (lead.degree() != 0) return false;
    return d == AXPoly::constant(lead) * target;
}

}  // namespace tmod

#endif
