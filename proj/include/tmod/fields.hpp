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

#ifndef TMOD_FIELDS_HPP
#define TMOD_FIELDS_HPP

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "modsize.hpp"
#include "tmodule.hpp"

namespace tmod {

struct ExtensionError : AlgebraError {
    using AlgebraError::AlgebraError;
};

/* element of O_K in the A-basis w_0..w_{d-1} */
using OKElem = std::vector<APoly>;

struct InfinitePlace {
    int e = 1;  // ramification index
    int f = 1;  // residue degree
    std::string uniformizer;
};

/**
 * K/k with O_K = A w_0 + ... + A w_{d-1}, w_0 = 1, and G acting through
 * matrices on the w-coordinates (column j holds sigma(w_j)).
 */
struct ExtensionData {
    const GF* F = nullptr;
    GroupSpec G;
    const GroupRing* R = nullptr;
    int d = 1;
    std::vector<std::vector<OKElem>> mult;  // mult[i][j] = w_i * w_j
    std::vector<AMat> sigma;                // one per cyclic generator of G
    std::vector<InfinitePlace> places;
    std::string kind;
    APoly P;  // conductor for the cyclotomic kind
    std::vector<OKElem> frob;  // frob[j] = w_j^q

    OKElem zero() const { return OKElem(d, a_zero(F)); }
    OKElem basis(int j) const {
        OKElem x = zero();
        x[j] = a_const(F, 1);
        return x;
    }
    OKElem mul(const OKElem& x, const OKElem& y) const {
        OKElem r = zero();
        for (int i = 0; i < d; ++i) {
            if (x[i].is_zero()) continue;
            for (int j = 0; j < d; ++j) {
                if (y[j].is_zero()) continue;
                const APoly c = x[i] * y[j];
                for (int k = 0; k < d; ++k)
                    if (!mult[i][j][k].is_zero()) r[k] = r[k] + c * mult[i][j][k];
            }
        }
        return r;
    }
    OKElem pow(OKElem x, unsigned long long e) const {
        OKElem r = basis(0);
        while (e) {
            if (e & 1ull) r = mul(r, x);
            x = mul(x, x);
            e >>= 1ull;
        }
        return r;
    }
    /* matrix of the group element with index g */
    AMat action(int g) const {
        const std::vector<int> e = G.elem(g);
        AMat m = AMat::identity(d, a_zero(F));
        for (int i = 0; i < G.rank(); ++i) m = m * sigma[i].pow(static_cast<unsigned>(e[i]));
        return m;
    }
    OKElem act(int g, const OKElem& x) const { return action(g).apply(x); }
    bool constant_action() const {
        for (const auto& s : sigma)
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    if (s(i, j).degree() > 0) return false;
        return true;
    }
    /* q-power Frobenius on O_K: sum x_j(t^q) w_j^q */
    OKElem frobenius(const OKElem& x) const {
        OKElem r = zero();
        for (int j = 0; j < d; ++j) {
            if (x[j].is_zero()) continue;
            const APoly c = twist(x[j], F->q);
            for (int l = 0; l < d; ++l)
                if (!frob[j][l].is_zero()) r[l] = r[l] + c * frob[j][l];
        }
        return r;
    }
    /* largest t-degree among the coordinates of w_j^(q^k) */
    int frob_growth(int k) const {
        std::vector<OKElem> cur;
        for (int j = 0; j < d; ++j) cur.push_back(basis(j));
        for (int s = 0; s < k; ++s)
            for (auto& x : cur) x = frobenius(x);
        int g = 0;
        for (const auto& x : cur)
            for (const auto& c : x) g = std::max(g, c.degree());
        return g;
    }
    std::string str() const {
        std::string s = kind + " (degree " + std::to_string(d) + ", G = " + G.str();
        if (kind == "carlitz_cyclotomic") s += ", P = " + P.str();
        return s + ")";
    }

    /* multiplication table, G-action and Frobenius data are consistent */
    void validate() const {
        if (static_cast<int>(mult.size()) != d) throw ExtensionError("multiplication table has the wrong size");
        for (int i = 0; i < d; ++i) {
            if (static_cast<int>(mult[i].size()) != d) throw ExtensionError("multiplication table has the wrong size");
            for (int j = 0; j < d; ++j)
                if (static_cast<int>(mult[i][j].size()) != d) throw ExtensionError("multiplication table has the wrong size");
        }
        for (int j = 0; j < d; ++j)
            if (!(mult[0][j] == basis(j))) throw ExtensionError("w_0 must be the identity");
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                if (!(mult[i][j] == mult[j][i])) throw ExtensionError("multiplication is not commutative");
                for (int k = 0; k < d; ++k)
                    if (!(mul(mul(basis(i), basis(j)), basis(k)) == mul(basis(i), mul(basis(j), basis(k)))))
                        throw ExtensionError("multiplication is not associative");
            }
        if (static_cast<int>(sigma.size()) != G.rank()) throw ExtensionError("one action matrix per cyclic generator is required");
        if (G.size() != d) throw ExtensionError("[K:k] must equal |G|");
        for (int s = 0; s < G.rank(); ++s) {
            if (!(sigma[s].pow(static_cast<unsigned>(G.orders[s])) == AMat::identity(d, a_zero(F))))
                throw ExtensionError("action matrix has the wrong order");
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    if (!(sigma[s].apply(mul(basis(i), basis(j))) == mul(sigma[s].apply(basis(i)), sigma[s].apply(basis(j)))))
                        throw ExtensionError("G does not act by ring automorphisms");
        }
        int ef = 0;
        for (const auto& p : places) ef += p.e * p.f;
        if (ef != d) throw ExtensionError("sum of e*f over the infinite places must equal [K:k]");
    }

    void finish() {
        R = GroupRing::get(F, G);
        frob.clear();
        for (int j = 0; j < d; ++j) frob.push_back(pow(basis(j), F->q));
    }
};

inline ExtensionData trivial_extension(const GF* F) {
    ExtensionData X;
    X.F = F;
    X.d = 1;
    X.mult = {{{a_const(F, 1)}}};
    X.places = {{1, 1, "1/t"}};
    X.kind = "trivial";
    X.finish();
    X.validate();
    return X;
}

/**
 * k(lambda) with lambda^(q-1) = -P for P of degree 1: O_K = A[lambda], G = F_q^*
 * acting by lambda -> c*lambda, one totally ramified place over infinity.
 */
inline ExtensionData carlitz_cyclotomic(const GF* F, const APoly& P) {
    if (P.degree() != 1 || !P.is_monic()) throw ExtensionError("the cyclotomic extension needs a monic prime of degree 1");
    if (F->q < 3) throw ExtensionError("the cyclotomic extension needs q >= 3");
    const int d = static_cast<int>(F->q) - 1;
    ExtensionData X;
    X.F = F;
    X.d = d;
    X.G = GroupSpec({d});
    X.P = P;
    X.kind = "carlitz_cyclotomic";
    X.mult.assign(d, std::vector<OKElem>(d, OKElem(d, a_zero(F))));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (i + j < d) X.mult[i][j][i + j] = a_const(F, 1);
            else X.mult[i][j][i + j - d] = -P;
        }
    /* primitive element of F_q^* */
    Fq gamma(F, F->exp_at(1));
    AMat s(d, d, a_zero(F));
    Fq c(F, 1);
    for (int j = 0; j < d; ++j) {
        s(j, j) = APoly::constant(c);
        c = c * gamma;
    }
    X.sigma = {s};
    X.places = {{d, 1, "1/lambda"}};
    X.finish();
    X.validate();
    return X;
}

/**
 * Image of x in the completion at the unique place over infinity, as a
 * Laurent series in the uniformizer pi. Trivial: pi = 1/t. Cyclotomic:
 * pi = 1/lambda with t = -pi^(1-q) - P(0).
 */
inline KLaurent embed_at_infinity(const ExtensionData& X, const OKElem& x, int prec) {
    const Fq z(X.F, 0);
    if (X.kind == "trivial") return KLaurent::from_poly(x[0]).truncate(prec);
    if (X.kind != "carlitz_cyclotomic") throw ExtensionError("no built-in embedding for kind " + X.kind);
    const int e = X.d;
    /* t = -pi^-e (1 + a pi^e) with a = P(0) */
    const KLaurent tser = -(KLaurent::monomial(Fq(X.F, 1), -e) + KLaurent::constant(X.P[0]));
    KLaurent acc(z, prec);
    for (int j = 0; j < X.d; ++j) {
        if (x[j].is_zero()) continue;
        KLaurent v(z);
        for (int k = x[j].degree(); k >= 0; --k) v = v * tser + KLaurent::constant(x[j][k]);
        acc = acc + (v * KLaurent::monomial(Fq(X.F, 1), -j)).truncate(prec);
    }
    return acc.truncate(prec);
}

/**
 * The lattice M = xi * O_K. Elements of M/v and K_inf/M are written as xi*y
 * and stored through y; tau^k then reads y -> xi^(q^k - 1) y^(q^k).
 */
struct TamingModule {
    APoly xi;
    std::vector<APoly> S;  // primes absorbed into xi

    bool is_all_of_OK() const { return xi.degree() == 0; }
    std::string str() const {
        if (is_all_of_OK()) return "O_K";
        return "(" + xi.str() + ")*O_K";
    }
};

inline TamingModule full_taming(const GF* F) { return {a_const(F, 1), {}}; }

/* M_xi = xi * O_K with xi the product of the primes in S */
inline TamingModule xi_taming(const ExtensionData& X, const std::vector<APoly>& S) {
    TamingModule M = full_taming(X.F);
    for (const auto& p : S) {
        if (!p.is_monic() || !a_is_irreducible(p)) throw ExtensionError("taming set entry " + p.str() + " is not a monic prime");
        if (std::find(M.S.begin(), M.S.end(), p) != M.S.end()) continue;
        M.S.push_back(p);
        M.xi = M.xi * p;
    }
    return M;
}

struct PrimeOfA {
    APoly P;
    int degree() const { return P.degree(); }
};

/* ---------- residue modules (M/v)^n ---------- */

/**
 * F_q-coordinates on (O_K/P)^n: index ((c*d + j)*dv + a) for t^a w_j e_c.
 */
class ResidueSpace {
public:
    ResidueSpace(const ExtensionData& X, const TamingModule& M, const APoly& P, int n) : X_(X), M_(M), P_(P), n_(n), dv_(P.degree()) {
        xi_ = a_mod(M.xi, P);
        frob_.clear();
        for (int j = 0; j < X.d; ++j) {
            OKElem f = X.frob[j];
            for (auto& c : f) c = a_mod(c, P);
            frob_.push_back(f);
        }
        for (int g = 0; g < X.G.size(); ++g) {
            AMat a = X.action(g);
            act_.push_back(a.map([&](const APoly& f) { return a_mod(f, P); }));
        }
    }

    int dim() const { return n_ * X_.d * dv_; }

    using Elem = std::vector<OKElem>;  // [c][j]

    Elem from_vec(const FqVec& v) const {
        Elem x(n_, X_.zero());
        for (int c = 0; c < n_; ++c)
            for (int j = 0; j < X_.d; ++j) {
                std::vector<Fq> co(dv_, Fq(X_.F, 0));
                for (int a = 0; a < dv_; ++a) co[a] = v[idx(c, j, a)];
                x[c][j] = APoly(Fq(X_.F, 0), co);
            }
        return x;
    }
    FqVec to_vec(const Elem& x) const {
        FqVec v(dim(), Fq(X_.F, 0));
        for (int c = 0; c < n_; ++c)
            for (int j = 0; j < X_.d; ++j) {
                const APoly r = a_mod(x[c][j], P_);
                for (int a = 0; a < dv_; ++a) v[idx(c, j, a)] = r[a];
            }
        return v;
    }

    /* y -> xi^(q^k - 1) * Frob^k(y) on one copy of O_K/P */
    OKElem tau(const OKElem& y, int k) const {
        OKElem x = y;
        for (int s = 0; s < k; ++s) {
            OKElem r = X_.zero();
            for (int j = 0; j < X_.d; ++j) {
                if (x[j].is_zero()) continue;
                const APoly c = a_mod(twist(x[j], X_.F->q), P_);
                for (int l = 0; l < X_.d; ++l)
                    if (!frob_[j][l].is_zero()) r[l] = a_mod(r[l] + c * frob_[j][l], P_);
            }
            x = std::move(r);
        }
        if (k > 0 && !M_.is_all_of_OK()) {
            const APoly f = a_powmod(xi_, static_cast<unsigned long long>(qpow(X_.F->q, k) - 1), P_);
            for (auto& c : x) c = a_mod(c * f, P_);
        }
        return x;
    }

    /* sum_k C_k tau^k applied to x */
    Elem apply(const std::vector<AMat>& C, const Elem& x) const {
        Elem r(n_, X_.zero());
        for (int k = 0; k < static_cast<int>(C.size()); ++k) {
            if (C[k].is_zero()) continue;
            std::vector<OKElem> tx;
            for (int c = 0; c < n_; ++c) tx.push_back(tau(x[c], k));
            for (int i = 0; i < n_; ++i)
                for (int c = 0; c < n_; ++c) {
                    const APoly a = a_mod(C[k](i, c), P_);
                    if (a.is_zero()) continue;
                    for (int j = 0; j < X_.d; ++j) r[i][j] = a_mod(r[i][j] + a * tx[c][j], P_);
                }
        }
        return r;
    }

    FqMat matrix_of(const std::vector<AMat>& C) const {
        const int D = dim();
        FqMat m(D, D, Fq(X_.F, 0));
        for (int b = 0; b < D; ++b) {
            FqVec e(D, Fq(X_.F, 0));
            e[b] = Fq(X_.F, 1);
            const FqVec img = to_vec(apply(C, from_vec(e)));
            for (int i = 0; i < D; ++i) m(i, b) = img[i];
        }
        return m;
    }

    FqMat group_matrix(int g) const {
        const int D = dim();
        FqMat m(D, D, Fq(X_.F, 0));
        for (int b = 0; b < D; ++b) {
            FqVec e(D, Fq(X_.F, 0));
            e[b] = Fq(X_.F, 1);
            Elem x = from_vec(e);
            for (auto& y : x) {
                y = act_[g].apply(y);
                for (auto& c : y) c = a_mod(c, P_);
            }
            const FqVec img = to_vec(x);
            for (int i = 0; i < D; ++i) m(i, b) = img[i];
        }
        return m;
    }

private:
    const ExtensionData& X_;
    const TamingModule& M_;
    APoly P_;
    int n_, dv_;
    APoly xi_;
    std::vector<OKElem> frob_;
    std::vector<AMat> act_;

    int idx(int c, int j, int a) const { return (c * X_.d + j) * dv_ + a; }
};

struct Reduction {
    FqGModule lie;
    FqGModule e;
};

/* (Lie_E(M/v), E(M/v)) with t acting by d_E[t] and by phi_E(t) */
inline Reduction reduction(const TModuleSpec& E, const ExtensionData& X, const TamingModule& M, const PrimeOfA& v) {
    if (!a_is_irreducible(v.P) || !v.P.is_monic()) throw ExtensionError(v.P.str() + " is not a monic prime");
    ResidueSpace sp(X, M, v.P, E.n);
    std::vector<FqMat> gens;
    for (int s = 0; s < X.G.rank(); ++s) {
        std::vector<int> e(X.G.rank(), 0);
        e[s] = 1;
        gens.push_back(sp.group_matrix(X.G.index(e)));
    }
    std::vector<AMat> phi{E.dE};
    for (const auto& m : E.M) phi.push_back(m);
    Reduction r;
    r.lie = FqGModule{X.R, sp.matrix_of({E.dE}), gens};
    r.e = FqGModule{X.R, sp.matrix_of(phi), gens};
    return r;
}

/* ---------- K_inf coordinates ---------- */

/**
 * K_inf^n written on the w-basis: n*d Laurent series in u, index c*d + j,
 * over a host field B containing F_q. Elements of K_inf/M are stored in the
 * y-coordinates of M = xi*O_K.
 */
class KInfinity {
public:
    using Vec = std::vector<KLaurent>;

    KInfinity(const ExtensionData& X, const TamingModule& M, int n, const FieldEmbedding& emb) : X_(X), M_(M), n_(n), emb_(emb) {
        B_ = emb.big;
        for (int j = 0; j < X.d; ++j) {
            std::vector<KLaurent> row;
            for (int l = 0; l < X.d; ++l) row.push_back(lift(X.frob[j][l]));
            frob_.push_back(row);
        }
        xi_ = lift(M.xi);
    }

    const GF* field() const { return B_; }
    int n() const { return n_; }
    int d() const { return X_.d; }
    int size() const { return n_ * X_.d; }
    const ExtensionData& ext() const { return X_; }
    const FieldEmbedding& emb() const { return emb_; }

    KLaurent lift(const APoly& a) const { return KLaurent::from_poly(a.map_coeffs([&](const Fq& c) { return emb_.up(c); })); }
    KLaurent lift(const RatFunc& r, int prec) const {
        return r.to_laurent(prec).map([&](const Fq& c) { return emb_.up(c); });
    }
    Vec zero(int prec = KLaurent::kExact) const { return Vec(size(), KLaurent(Fq(B_, 0), prec)); }
    /* c * u^s * w_j * e_comp */
    Vec monomial(int comp, int j, int s, const Fq& c) const {
        Vec v = zero();
        v[comp * X_.d + j] = KLaurent::monomial(c, s);
        return v;
    }

    /* y -> xi^(q^k-1) Frob^k(y) for one copy of K_inf, index offset base */
    void tau_block(const Vec& x, int base, int k, Vec& out, int obase) const {
        std::vector<KLaurent> cur(x.begin() + base, x.begin() + base + X_.d);
        const long long q = X_.F->q;
        for (int s = 0; s < k; ++s) {
            std::vector<KLaurent> nxt(X_.d, KLaurent(Fq(B_, 0)));
            for (int j = 0; j < X_.d; ++j) {
                if (cur[j].is_zero() && cur[j].exact()) continue;
                const KLaurent fj = cur[j].substitute(static_cast<int>(q), [](const Fq& a) { return a; });
                for (int l = 0; l < X_.d; ++l)
                    if (!frob_[j][l].is_zero()) nxt[l] = nxt[l] + fj * frob_[j][l];
            }
            cur = std::move(nxt);
        }
        if (k > 0 && !M_.is_all_of_OK()) {
            const KLaurent f = xi_.pow(static_cast<unsigned>(qpow(q, k) - 1));
            for (auto& c : cur) c = c * f;
        }
        for (int j = 0; j < X_.d; ++j) out[obase + j] = cur[j];
    }

    Vec tau(const Vec& x, int k) const {
        Vec r = zero();
        for (int c = 0; c < n_; ++c) tau_block(x, c * X_.d, k, r, c * X_.d);
        return r;
    }

    /* matrix C over A acting on the e_c index */
    Vec mul(const AMat& C, const Vec& x) const {
        Vec r = zero();
        for (int i = 0; i < n_; ++i)
            for (int c = 0; c < n_; ++c) {
                if (C(i, c).is_zero()) continue;
                const KLaurent a = lift(C(i, c));
                for (int j = 0; j < X_.d; ++j) r[i * X_.d + j] = r[i * X_.d + j] + a * x[c * X_.d + j];
            }
        return r;
    }
    /* matrix of Laurent series acting on the e_c index */
    Vec mul(const std::vector<std::vector<KLaurent>>& C, const Vec& x) const {
        Vec r = zero();
        for (int i = 0; i < n_; ++i)
            for (int c = 0; c < n_; ++c) {
                if (C[i][c].is_zero() && C[i][c].exact()) continue;
                for (int j = 0; j < X_.d; ++j) r[i * X_.d + j] = r[i * X_.d + j] + C[i][c] * x[c * X_.d + j];
            }
        return r;
    }
    Vec apply(const TauPoly& p, const Vec& x) const {
        Vec r = zero();
        for (int k = 0; k <= p.degree(); ++k) {
            if (p.c[k].is_zero()) continue;
            r = add(r, mul(p.c[k], k ? tau(x, k) : x));
        }
        return r;
    }
    static Vec add(const Vec& a, const Vec& b) {
        Vec r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
        return r;
    }
    static Vec sub(const Vec& a, const Vec& b) {
        Vec r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
        return r;
    }
    static Vec scale(const Fq& c, const Vec& a) {
        Vec r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
        return r;
    }
    static Vec truncate(const Vec& a, int prec) {
        Vec r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i].truncate(prec);
        return r;
    }
    /* fundamental domain: strictly positive u-exponents in every coordinate */
    static Vec reduce(const Vec& a) {
        Vec r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i].fractional_part();
        return r;
    }
    static int valuation(const Vec& a) {
        int v = KLaurent::kExact;
        for (const auto& x : a) v = std::min(v, x.valuation());
        return v;
    }
    static int precision(const Vec& a) {
        int p = KLaurent::kExact;
        for (const auto& x : a) p = std::min(p, x.prec());
        return p;
    }

    /* G acts on each copy through constant matrices */
    Vec act(int g, const Vec& x) const {
        const AMat S = X_.action(g);
        Vec r = zero();
        for (int c = 0; c < n_; ++c)
            for (int l = 0; l < X_.d; ++l)
                for (int j = 0; j < X_.d; ++j) {
                    if (S(l, j).is_zero()) continue;
                    r[c * X_.d + l] = r[c * X_.d + l] + lift(S(l, j)) * x[c * X_.d + j];
                }
        return r;
    }

private:
    const ExtensionData& X_;
    const TamingModule& M_;
    int n_;
    const FieldEmbedding& emb_;
    const GF* B_ = nullptr;
    std::vector<std::vector<KLaurent>> frob_;
    KLaurent xi_;
};

/**
 * x - (element of M), the representative with strictly positive u-exponents
 * in the y-coordinates of M = xi*O_K. Inputs are actual K_inf coordinates.
 */
inline std::vector<KLaurent> reduce_mod_lattice(const ExtensionData& X, const TamingModule& M, const std::vector<KLaurent>& x) {
    for (const auto& c : x)
        if (!c.exact() && c.prec() < 1) throw PrecisionError("precision too low to reduce modulo the lattice");
    if (M.is_all_of_OK()) return KInfinity::reduce(x);
    const KLaurent xi = KLaurent::from_poly(M.xi);
    int prec = KLaurent::kExact;
    for (const auto& c : x) prec = std::min(prec, c.exact() ? KLaurent::kExact : c.prec());
    const int cap = prec >= KLaurent::kExact ? 64 : prec + 2 * M.xi.degree();
    const KLaurent xinv = laurent_inverse(xi, cap);
    std::vector<KLaurent> r;
    for (const auto& c : x) r.push_back(xi * (c * xinv).fractional_part());
    (void)X;
    return r;
}

/* F_q-coordinates of g with sigma_h(g) for h in G an F_q-basis of span(w_j); needs constant action */
inline std::optional<FqVec> normal_generator(const ExtensionData& X, unsigned seed = 20260101u) {
    if (!X.constant_action()) return std::nullopt;
    const int d = X.d, n = X.G.size();
    const Fq z(X.F, 0);
    std::vector<FqMat> act;
    for (int g = 0; g < n; ++g) act.push_back(X.action(g).map([&](const APoly& f) { return f[0]; }));
    auto works = [&](const FqVec& v) {
        FqMat B(d, n, z);
        for (int g = 0; g < n; ++g) {
            const FqVec w = act[g].apply(v);
            for (int k = 0; k < d; ++k) B(k, g) = w[k];
        }
        return rank(B) == d;
    };
    FqVec all(d, Fq(X.F, 1));
    if (works(all)) return all;
    std::mt19937 rng(seed);
    for (int attempt = 0; attempt < 2000; ++attempt) {
        FqVec v(d, z);
        for (auto& c : v) c = Fq(X.F, static_cast<std::uint32_t>(rng() % X.F->q));
        if (works(v)) return v;
    }
    return std::nullopt;
}

}  // namespace tmod

#endif
