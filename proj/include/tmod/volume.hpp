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

#ifndef TMOD_VOLUME_HPP
#define TMOD_VOLUME_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nuclear.hpp"

namespace tmod {

struct IsometryError : AlgebraError {
    using AlgebraError::AlgebraError;
};

using KVec = KInfinity::Vec;

/* ---------- exponential ---------- */

/**
 * Exp coefficients with exact valuations where computed and the recursive
 * lower bound b_k = q^k + min_j (q^j b_(k-j) - deg M_j) beyond.
 */
class ExpCoefficients {
public:
    ExpCoefficients(const TModuleSpec& E, const ExtensionData& X, const TamingModule& M, int initial = 4)
        : E_(E), X_(X), xi_deg_(M.xi.degree()) {
        if (E.n_degree() > 0) throw AlgebraError("the filtration needs d[t] - t constant");
        for (const auto& m : E.M) {
            int dm = -1;
            for (int a = 0; a < E.n; ++a)
                for (int b = 0; b < E.n; ++b) dm = std::max(dm, m(a, b).degree());
            deg_m_.push_back(dm);
        }
        ensure(initial);
    }

    const TModuleSpec& module() const { return E_; }
    long long q() const { return X_.F->q; }

    const KMat& coeff(int k) {
        ensure(k + 1);
        return ex_.e[k];
    }

    /* lower bound for the u-valuation of e_k */
    long double valuation_bound(int k) {
        while (static_cast<int>(bound_.size()) <= k) {
            const int i = static_cast<int>(bound_.size());
            if (i < static_cast<int>(exact_.size())) {
                bound_.push_back(exact_[i]);
                continue;
            }
            long double best = INFINITY;
            for (int j = 1; j <= static_cast<int>(deg_m_.size()) && j <= i; ++j) {
                if (deg_m_[j - 1] < 0) continue;
                best = std::min(best, std::pow(static_cast<long double>(q()), j) * bound_[i - j] - deg_m_[j - 1]);
            }
            bound_.push_back(std::pow(static_cast<long double>(q()), i) + best);
        }
        return bound_[k];
    }

    /* upper bound for the t-degree of w_j^(q^k) coordinates */
    long double growth(int k) {
        while (static_cast<int>(growth_.size()) <= k) {
            const int i = static_cast<int>(growth_.size());
            if (i <= 3) growth_.push_back(X_.frob_growth(i));
            else growth_.push_back(q() * growth_[i - 1] + growth_[1]);
        }
        return growth_[k];
    }

    /* lower bound for the valuation of e_k tau^k(x) when v(x) >= v */
    long double term_bound(int k, long long v) {
        const long double qk = std::pow(static_cast<long double>(q()), k);
        return valuation_bound(k) + qk * v - growth(k) - (qk - 1) * xi_deg_;
    }

    int xi_degree() const { return xi_deg_; }

private:
    const TModuleSpec& E_;
    const ExtensionData& X_;
    int xi_deg_;
    std::vector<int> deg_m_;
    ExpSeries ex_;
    std::vector<long double> exact_, bound_, growth_;

    void ensure(int count) {
        if (ex_.count() >= count) return;
        ex_ = exp_coeffs(E_, std::max(count, 2 * ex_.count()));
        exact_.clear();
        for (const auto& m : ex_.e) {
            long long v = KLaurent::kExact;
            for (int a = 0; a < m.rows(); ++a)
                for (int b = 0; b < m.cols(); ++b) v = std::min<long long>(v, m(a, b).valuation());
            exact_.push_back(v >= KLaurent::kExact ? INFINITY : static_cast<long double>(v));
        }
        /* bounds past the exact range are recomputed from the new data */
        bound_.clear();
    }
};

/**
 * Exp_E on K_inf^n in the y-coordinates of M: sum_k e_k tau^k with the
 * twisted tau of KInfinity.
 */
class ExpEvaluator {
public:
    ExpEvaluator(ExpCoefficients& C, const KInfinity& K) : C_(C), K_(K) {}

    KVec apply(const KVec& x, int prec) {
        KVec acc = KInfinity::truncate(x, prec);
        const int v = KInfinity::valuation(x);
        if (v >= KLaurent::kExact) return acc;
        int done = 0;
        for (int k = 1; k < 64 && done < 4; ++k) {
            const long double tb = C_.term_bound(k, v);
            if (tb >= prec) {
                ++done;
                continue;
            }
            done = 0;
            const long double qk = std::pow(static_cast<long double>(C_.q()), k);
            const long long low = static_cast<long long>(std::floor(qk * v - C_.growth(k) - (qk - 1) * C_.xi_degree()));
            const int need = static_cast<int>(std::max<long long>(1, prec - low));
            const KVec term = K_.mul(lifted(k, need), K_.tau(x, k));
            acc = KInfinity::add(acc, KInfinity::truncate(term, prec));
        }
        if (done < 4) throw IsometryError("exponential did not converge to the requested precision");
        return acc;
    }

    /* the z in U_w with Exp(z) = y, for y in U_w and w at least the isometry depth */
    KVec inverse_on(const KVec& y, int prec) {
        KVec z = KInfinity::truncate(y, prec);
        for (int it = 0; it <= prec + 2; ++it) {
            const KVec ez = apply(z, prec);
            const KVec nz = KInfinity::truncate(KInfinity::sub(y, KInfinity::sub(ez, z)), prec);
            if (same(nz, z, prec)) return nz;
            z = nz;
        }
        throw IsometryError("fixed point for the inverse exponential did not settle");
    }

private:
    ExpCoefficients& C_;
    const KInfinity& K_;
    std::vector<std::vector<std::vector<KLaurent>>> cache_;
    std::vector<int> cache_prec_;

    const std::vector<std::vector<KLaurent>>& lifted(int k, int prec) {
        if (static_cast<int>(cache_.size()) <= k) {
            cache_.resize(k + 1);
            cache_prec_.resize(k + 1, -1);
        }
        if (cache_prec_[k] < prec) {
            const KMat& e = C_.coeff(k);
            const int p = std::max(prec, cache_prec_[k] * 2);
            std::vector<std::vector<KLaurent>> m(e.rows(), std::vector<KLaurent>(e.cols()));
            for (int a = 0; a < e.rows(); ++a)
                for (int b = 0; b < e.cols(); ++b) m[a][b] = K_.lift(e(a, b), p);
            cache_[k] = std::move(m);
            cache_prec_[k] = p;
        }
        return cache_[k];
    }

    static bool same(const KVec& a, const KVec& b, int prec) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!agrees(a[i].truncate(prec), b[i].truncate(prec), prec)) return false;
        return true;
    }
};

/* smallest w >= 1 with every Exp term strictly contracting on U_w */
inline int isometry_depth(ExpCoefficients& C, int kmax = 40) {
    for (int w = 1; w < 10000; ++w) {
        bool ok = true;
        for (int k = 1; k <= kmax && ok; ++k) ok = C.term_bound(k, w) > w;
        if (ok) return w;
    }
    throw IsometryError("no isometry depth found");
}

/* ---------- coordinates ---------- */

/* F-coordinates of the u^1..u^(i-1) part: index ((c*d + j)*(i-1) + s-1) */
inline FqVec frac_coords(const KVec& y, int n, int d, int i, const Fq& zero) {
    const int S = i - 1;
    FqVec z(static_cast<std::size_t>(n * d * S), zero);
    if (KInfinity::precision(y) < i) throw PrecisionError("value not known modulo U_" + std::to_string(i));
    for (int c = 0; c < n; ++c)
        for (int j = 0; j < d; ++j)
            for (int s = 1; s <= S; ++s) z[(c * d + j) * S + (s - 1)] = y[c * d + j].raw(s);
    return z;
}

inline KVec from_frac_coords(const KInfinity& K, const FqVec& z, int i) {
    const int S = i - 1, d = K.d();
    KVec x = K.zero();
    for (int c = 0; c < K.n(); ++c)
        for (int j = 0; j < d; ++j) {
            std::vector<Fq> co(S + 1, Fq(K.field(), 0));
            bool any = false;
            for (int s = 1; s <= S; ++s) {
                co[s] = z[(c * d + j) * S + (s - 1)];
                any = any || !co[s].is_zero();
            }
            if (any) x[c * d + j] = KLaurent(Fq(K.field(), 0), 0, co, KLaurent::kExact);
        }
    return x;
}

/**
 * Matrix over F_q[G] with entries mod u^(N+1) of I + sum_m delta_m u^m on
 * V/U_i, basis u^s g e_c; images(beta) returns the coordinates of
 * delta_1(beta)..delta_N(beta).
 */
inline Matrix<GRLaurent> operator_matrix(const ExtensionData& X, const KInfinity& K, int N, int i,
                                         const std::function<std::vector<FqVec>(const KVec&)>& images) {
    const GroupRing* R = X.R;
    const NormalCoordinates nc(X);
    const int n = K.n(), d = X.d, S = i - 1, dim = n * S;
    Matrix<GRLaurent> A(dim, dim, GRLaurent(GR::zero(R), N + 1));
    for (int r = 0; r < dim; ++r) A(r, r) = GRLaurent::constant(GR::one(R), N + 1);
    const FqVec& g = nc.generator();
    for (int c = 0; c < n; ++c)
        for (int s = 1; s <= S; ++s) {
            KVec beta = K.zero();
            for (int j = 0; j < d; ++j) beta[c * d + j] = KLaurent::monomial(g[j], s);
            const std::vector<FqVec> ims = images(beta);
            const int col = c * S + (s - 1);
            for (int m = 1; m <= N; ++m)
                for (int c2 = 0; c2 < n; ++c2)
                    for (int s2 = 1; s2 <= S; ++s2) {
                        FqVec z(d, Fq(X.F, 0));
                        bool any = false;
                        for (int j = 0; j < d; ++j) {
                            z[j] = ims[m - 1][(c2 * d + j) * S + (s2 - 1)];
                            any = any || !z[j].is_zero();
                        }
                        if (!any) continue;
                        const int row = c2 * S + (s2 - 1);
                        A(row, col) = A(row, col) + GRLaurent::monomial(nc.to_gr(z), m, N + 1);
                    }
        }
    return A;
}

/* ---------- class module ---------- */

struct ClassModule {
    int depth = 0;
    int w_dim = 0;     // F_q-dimension of K_inf^n / (M^n + U_depth)
    int span_dim = 0;  // dimension of the exp-image S
    int levels = 0;    // monomial levels used before S stabilized
    FqGModule H;
    GRPoly size;  // |H|_G

    int dim() const { return H.dim(); }
};

/**
 * H(E/M) = K_inf^n / (M^n + Exp(K_inf^n)) as W/S with W = K_inf^n/(M^n + U_i).
 * S is spanned by Exp of the monomials u^s w_j e_c, s < i, level by level;
 * the first level that adds nothing certifies stability since
 * phi(t) U_i lies in Exp(u^(i-1) span) + U_i.
 */
inline ClassModule class_module(const TModuleSpec& E, const ExtensionData& X, const TamingModule& M, std::optional<int> depth = std::nullopt,
                                int max_levels = 64) {
    if (!X.R->tame()) throw ModuleError("class module size uses the character route, which needs p not dividing |G|");
    const GF* F = X.F;
    const Fq z0(F, 0);
    ExpCoefficients C(E, X, M);
    const int i0 = depth ? *depth : isometry_depth(C);
    if (depth && isometry_depth(C) > *depth) throw IsometryError("Exp is not an isometry on U_" + std::to_string(*depth));
    const FieldEmbedding emb = FieldEmbedding::make(F, 1);
    const KInfinity K(X, M, E.n, emb);
    ExpEvaluator ev(C, K);
    const int n = E.n, d = X.d;

    ClassModule out;
    out.depth = i0;
    out.w_dim = n * d * (i0 - 1);
    Subspace S(out.w_dim, z0);
    int levels = 0;
    for (int s = i0 - 1; s > i0 - 1 - max_levels; --s) {
        ++levels;
        bool grew = false;
        for (int c = 0; c < n; ++c)
            for (int j = 0; j < d; ++j) {
                const KVec x = K.monomial(c, j, s, Fq(F, 1));
                grew = S.insert(frac_coords(ev.apply(x, i0), n, d, i0, z0)) || grew;
            }
        if (!grew && s < i0 - 1) break;
        if (levels == max_levels) throw ModuleError("exp-image did not stabilize within the level budget");
    }
    out.levels = levels;
    out.span_dim = S.dim();

    /* complement of S spanned by the standard vectors off its pivots */
    std::vector<bool> piv(out.w_dim, false);
    for (int p : S.pivots()) piv[p] = true;
    std::vector<int> comp;
    for (int p = 0; p < out.w_dim; ++p)
        if (!piv[p]) comp.push_back(p);
    const int h = static_cast<int>(comp.size());
    auto quotient = [&](const FqVec& w) {
        const FqVec r = S.reduce(w);
        FqVec v(h, z0);
        for (int a = 0; a < h; ++a) v[a] = r[comp[a]];
        return v;
    };
    auto matrix_of = [&](const std::function<KVec(const KVec&)>& f) {
        FqMat m(h, h, z0);
        for (int b = 0; b < h; ++b) {
            FqVec e(out.w_dim, z0);
            e[comp[b]] = Fq(F, 1);
            const KVec x = from_frac_coords(K, e, i0);
            const FqVec col = quotient(frac_coords(KInfinity::reduce(f(x)), n, d, i0, z0));
            for (int a = 0; a < h; ++a) m(a, b) = col[a];
        }
        return m;
    };
    const TauPoly phi = E.phi_t();
    out.H.R = X.R;
    out.H.t = matrix_of([&](const KVec& x) { return K.apply(phi, x); });
    for (int r = 0; r < X.G.rank(); ++r) {
        std::vector<int> e(X.G.rank(), 0);
        e[r] = 1;
        const int g = X.G.index(e);
        out.H.gens.push_back(matrix_of([&](const KVec& x) { return K.act(g, x); }));
    }
    out.size = gsize_by_characters(out.H);
    return out;
}

/* ---------- the lattice Exp^-1(E(M)) ---------- */

struct ExpInvLattice {
    int depth = 0;
    int precision = 0;
    std::vector<std::vector<KVec>> basis;     // per character class, n vectors over the host field
    std::vector<std::vector<int>> degrees;    // level of each basis vector
    std::vector<KLaurent> components;         // per-class determinant
    GRLaurent index;                          // [Lie(M) : Lambda']_G, monic
    bool in_lattice = false;                  // Exp(basis) in M^n to precision
    bool d_stable = false;                    // greedy spans agree with the kernel past the last new vector
};

namespace detail {

/* t-coordinates of the preimage under sum u^k x_k -> sum d^-k x_k, for d = t + N with N constant */
inline std::vector<KLaurent> untwist_d(const std::vector<KLaurent>& a, const Matrix<Fq>& Nm, int prec) {
    const int n = static_cast<int>(a.size());
    if (Nm.is_zero()) return a;
    const GF* B = a[0].zero().field();
    const Fq z(B, 0);
    const long long p = B->p;
    std::vector<KLaurent> r = a, out(n, KLaurent(z, prec));
    int lo = KLaurent::kExact;
    for (const auto& x : a) lo = std::min(lo, x.valuation());
    if (lo >= prec) return out;
    /* binom(-k, j) mod p */
    auto binom_neg = [&](int k, int j) {
        long long num = 1, den = 1;
        for (int i = 0; i < j; ++i) {
            num *= (-k - i);
            den *= (i + 1);
        }
        long long v = num / den;
        v %= p;
        if (v < 0) v += p;
        return Fq(B, static_cast<std::uint32_t>(v));
    };
    for (int k = lo; k < prec; ++k) {
        std::vector<Fq> y(n, z);
        bool any = false;
        for (int c = 0; c < n; ++c) {
            y[c] = r[c].raw(k);
            any = any || !y[c].is_zero();
        }
        if (!any) continue;
        for (int c = 0; c < n; ++c) out[c] = out[c] + KLaurent::monomial(y[c], k, prec);
        /* subtract d^-k y = sum_j binom(-k, j) u^(k+j) N^j y */
        std::vector<Fq> cur = y;
        for (int j = 0; j < n; ++j) {
            const Fq b = binom_neg(k, j);
            if (!b.is_zero())
                for (int c = 0; c < n; ++c)
                    if (!cur[c].is_zero()) r[c] = r[c] - KLaurent::monomial(b * cur[c], k + j, prec);
            cur = Nm.apply(cur);
        }
    }
    return out;
}

}  // namespace detail

/**
 * Lambda' = Exp^-1(M^n) per character: the kernel of x -> Exp(x) mod (M^n + U_i)
 * on the monomials u^s w_j e_c with s >= -k is (Lambda' + U_i) cut at level
 * k. A greedy basis by level, lifted along U_i, gives the chi-part as a free
 * module; the index is assembled from the per-class determinants.
 */
inline ExpInvLattice expinv_lattice(const TModuleSpec& E, const ExtensionData& X, const TamingModule& M, int N,
                                    std::optional<int> depth = std::nullopt, int max_level = 16) {
    const GroupRing* R = X.R;
    if (!R->tame()) throw ModuleError("lattice index uses the character route, which needs p not dividing |G|");
    const GF* F = X.F;
    const GF* B = R->emb.big;
    const Fq zF(F, 0), zB(B, 0);
    const int n = E.n, d = X.d, G = X.G.size();
    ExpCoefficients C(E, X, M);
    const int i0 = depth ? *depth : isometry_depth(C);
    const FieldEmbedding embF = FieldEmbedding::make(F, 1);
    const KInfinity KF(X, M, n, embF), KB(X, M, n, R->emb);
    ExpEvaluator evF(C, KF), evB(C, KB);
    const NormalCoordinates nc(X);

    /* global coordinates (s, c, j), s in [-max_level, i0-1] */
    const int L = max_level;
    const int Dv = (L + i0) * n * d;
    auto gidx = [&](int s, int c, int j) { return ((s + L) * n + c) * d + j; };
    const int wdim = n * d * (i0 - 1);

    std::vector<FqVec> eps(Dv);  // eps-bar of each monomial
    auto eps_of = [&](int s, int c, int j) -> const FqVec& {
        FqVec& slot = eps[gidx(s, c, j)];
        if (slot.empty()) slot = frac_coords(evF.apply(KF.monomial(c, j, s, Fq(F, 1)), i0), n, d, i0, zF);
        return slot;
    };
    auto coords_B = [&](const KVec& x) {
        FqVec v(Dv, zB);
        for (int c = 0; c < n; ++c)
            for (int j = 0; j < d; ++j) {
                const KLaurent& y = x[c * d + j];
                if (!y.is_zero() && y.val() < -L) throw ModuleError("lattice vector beyond the level budget");
                for (int s = -L; s < i0; ++s) v[gidx(s, c, j)] = y.raw(s);
            }
        return v;
    };
    auto vec_B = [&](const FqVec& v) {
        KVec x = KB.zero();
        for (int c = 0; c < n; ++c)
            for (int j = 0; j < d; ++j) {
                std::vector<Fq> co(L + i0, zB);
                for (int s = -L; s < i0; ++s) co[s + L] = v[gidx(s, c, j)];
                x[c * d + j] = KLaurent(zB, -L, co, KLaurent::kExact);
            }
        return x;
    };
    std::vector<FqMat> actB;
    for (int h = 0; h < G; ++h) actB.push_back(X.action(h).map([&](const APoly& f) { return R->emb.up(f[0]); }));
    const AMat& dE = E.dE;

    ExpInvLattice out;
    out.depth = i0;
    out.in_lattice = true;
    out.d_stable = true;

    /* lift a kernel class to the element of Lambda' it represents */
    auto lift = [&](const FqVec& v, int prec) {
        const KVec x = vec_B(v);
        const KVec ex = KInfinity::reduce(evB.apply(x, prec));
        if (KInfinity::valuation(ex) < i0) throw ModuleError("kernel vector does not map into U_i");
        const KVec z1 = evB.inverse_on(ex, prec);
        const KVec b = KInfinity::truncate(KInfinity::sub(x, z1), prec);
        const KVec check = KInfinity::reduce(evB.apply(b, prec));
        if (KInfinity::valuation(check) < prec) out.in_lattice = false;
        return b;
    };

    struct Chosen {
        FqVec v;
        int level;
    };
    std::vector<std::vector<Chosen>> chosen(R->num_classes());
    for (int ci = 0; ci < R->num_classes(); ++ci) {
        const auto& cc = R->classes[ci];
        std::vector<KVec> lifts;  // lifts at the working precision, for d-multiples
        int extra = -1;
        for (int k = -(i0 - 1); k <= L; ++k) {
            /* kernel of eps-bar on the monomials with s >= -k */
            std::vector<std::tuple<int, int, int>> cols;
            for (int s = -k; s < i0; ++s)
                for (int c = 0; c < n; ++c)
                    for (int j = 0; j < d; ++j) cols.emplace_back(s, c, j);
            FqMat Mk(wdim, static_cast<int>(cols.size()), zF);
            for (int a = 0; a < static_cast<int>(cols.size()); ++a) {
                const auto [s, c, j] = cols[a];
                const FqVec& e = eps_of(s, c, j);
                for (int r = 0; r < wdim; ++r) Mk(r, a) = e[r];
            }
            Subspace Kchi(Dv, zB);
            for (const FqVec& kv : kernel(Mk)) {
                FqVec gv(Dv, zB);
                for (int a = 0; a < static_cast<int>(cols.size()); ++a) {
                    const auto [s, c, j] = cols[a];
                    gv[gidx(s, c, j)] = R->emb.up(kv[a]);
                }
                /* projector onto the chi-eigenspace */
                FqVec pv(Dv, zB);
                for (int h = 0; h < G; ++h) {
                    const Fq w = cc.value[R->to_D[h]].inverse();
                    for (int s = -L; s < i0; ++s)
                        for (int c = 0; c < n; ++c) {
                            FqVec blk(d, zB);
                            for (int j = 0; j < d; ++j) blk[j] = gv[gidx(s, c, j)];
                            const FqVec img = actB[h].apply(blk);
                            for (int j = 0; j < d; ++j) pv[gidx(s, c, j)] = pv[gidx(s, c, j)] + w * img[j];
                        }
                }
                Kchi.insert(pv);
            }
            /* span of the d-multiples of the chosen vectors at this level */
            Subspace span(Dv, zB);
            const int work_prec = i0 + L + 2;
            for (std::size_t a = 0; a < chosen[ci].size(); ++a) {
                KVec y = lifts[a];
                for (int e = 0; e <= k - chosen[ci][a].level; ++e) {
                    span.insert(coords_B(KInfinity::truncate(y, i0)));
                    y = KB.mul(dE, y);
                }
            }
            if (static_cast<int>(chosen[ci].size()) == n && span.dim() != Kchi.dim()) out.d_stable = false;
            for (const auto& kv : Kchi.basis()) {
                if (!span.insert(kv)) continue;
                if (static_cast<int>(chosen[ci].size()) >= n) {
                    out.d_stable = false;
                    continue;
                }
                chosen[ci].push_back({kv, k});
                lifts.push_back(lift(kv, work_prec));
            }
            if (static_cast<int>(chosen[ci].size()) == n) {
                if (extra < 0) extra = 0;
                else ++extra;
                if (extra >= 2) break;
            }
        }
        if (static_cast<int>(chosen[ci].size()) < n) throw ModuleError("lattice basis not found within the level budget");
    }

    /* final lifts and chi-coordinates */
    int degsum = 0;
    for (const auto& ch : chosen) {
        int s = 0;
        for (const auto& c : ch) s += std::max(0, c.level);
        degsum = std::max(degsum, s);
    }
    const int prec = N + 3 + degsum + i0;
    out.precision = prec;
    const Fq order(B, static_cast<std::uint32_t>(G % B->p));
    Matrix<Fq> Nm = E.N().map([&](const APoly& f) { return R->emb.up(f[0]); });
    /* chi-coordinate |G| * (B^-1 z)_identity */
    std::vector<Fq> binv0(d, zB);
    {
        const auto inv = inverse(nc.basis());
        if (!inv) throw ExtensionError("normal basis matrix is singular");
        for (int j = 0; j < d; ++j) binv0[j] = R->emb.up((*inv)(0, j));
    }
    for (int ci = 0; ci < R->num_classes(); ++ci) {
        std::vector<KVec> bas;
        std::vector<int> degs;
        Matrix<KLaurent> A(n, n, KLaurent(zB, prec));
        for (int a = 0; a < n; ++a) {
            const KVec b = lift(chosen[ci][a].v, prec);
            std::vector<KLaurent> co(n, KLaurent(zB, prec));
            for (int c = 0; c < n; ++c) {
                KLaurent acc(zB, prec);
                for (int j = 0; j < d; ++j)
                    if (!binv0[j].is_zero()) acc = acc + (order * binv0[j]) * b[c * d + j];
                co[c] = acc;
            }
            co = detail::untwist_d(co, Nm, prec);
            for (int c = 0; c < n; ++c) A(c, a) = co[c];
            bas.push_back(b);
            degs.push_back(chosen[ci][a].level);
        }
        out.basis.push_back(std::move(bas));
        out.degrees.push_back(std::move(degs));
        out.components.push_back(determinant(A));
    }
    const GRLaurent det = assemble_components(R, out.components);
    if (det.prec() < N + 1) throw PrecisionError("lattice index known only mod u^" + std::to_string(det.prec()));
    out.index = monic_part(det).plus.truncate(N + 1);
    return out;
}

/* ---------- volumes ---------- */

/**
 * Vol of an object split as Lie_E(K_inf)/Lambda with finite part H, against
 * Lambda_0, taking Lambda' = Lambda_0 + Lambda: [Lambda_0 : Lambda]_G |H|_G.
 */
inline GRLaurent vol_split(const LatticeBasis& lambda, const LatticeBasis& lambda0, const GRPoly& h_size, int prec) {
    return (lattice_index(lambda0, lambda, prec) * GRLaurent::from_poly(h_size)).truncate(prec);
}

/* ---------- checks ---------- */

struct EtnfReport {
    ThetaValue theta;
    ClassModule H;
    ExpInvLattice lattice;
    GRLaurent rhs;  // index * |H|_G
    int residual = -1;

    bool pass() const { return residual < 0; }
};

inline EtnfReport etnf_check(const TModuleSpec& E, const ExtensionData& X, const TamingModule& M, int N,
                             std::optional<int> max_degree = std::nullopt) {
    EtnfReport r;
    r.theta = theta0(E, X, M, N, max_degree);
    r.H = class_module(E, X, M);
    /* index * |H| is wanted mod u^(N+1) */
    r.lattice = expinv_lattice(E, X, M, N + std::max(0, r.H.size.degree()));
    r.rhs = (r.lattice.index * GRLaurent::from_poly(r.H.size)).truncate(N + 1);
    r.residual = first_difference(r.theta.value, r.rhs, N + 1);
    return r;
}

struct FittingReport {
    EtnfReport etnf;
    GRLaurent candidate;  // Theta / [Lie(M) : Lambda']_G
    bool contained = false;
    bool mutual = false;

    bool pass() const { return contained && mutual; }
};

inline FittingReport fitting_check(EtnfReport etnf, int N) {
    FittingReport f;
    const GRLaurent& idx = etnf.lattice.index;
    f.candidate = (etnf.theta.value * gr_inverse(idx, N + 1 + std::max(0, -idx.valuation()) * 2 + 4)).truncate(N + 1);
    f.contained = fitting_contains(f.candidate, etnf.H.size);
    const auto p = as_polynomial(monic_part(f.candidate).plus);
    f.mutual = p && !p->is_zero() && gr_divides(etnf.H.size, *p) && gr_divides(*p, etnf.H.size);
    f.etnf = std::move(etnf);
    return f;
}

/* the quotient Theta / index has degree deg |H|, so the working precision is raised by that much */
inline int fitting_precision(const TModuleSpec& E, const ExtensionData& X, const TamingModule& M, int N) {
    return N + std::max(0, class_module(E, X, M).size.degree());
}

inline FittingReport brumer_stark_check(const TModuleSpec& E, const ExtensionData& X, const TamingModule& M, int N,
                                        std::optional<int> max_degree = std::nullopt) {
    const int Ne = fitting_precision(E, X, M, N);
    return fitting_check(etnf_check(E, X, M, Ne, max_degree), Ne);
}

/* the same containment for E(m) = E (x) C^(x)m on M_xi */
inline FittingReport coates_sinnott_check(const TModuleSpec& E, const ExtensionData& X, const std::vector<APoly>& S, int m, int N,
                                          std::optional<int> max_degree = std::nullopt) {
    const TModuleSpec Em = drinfeld_twist(E, m);
    const TamingModule M = xi_taming(X, S);
    const int Ne = fitting_precision(Em, X, M, N);
    return fitting_check(etnf_check(Em, X, M, Ne, max_degree), Ne);
}

/* ---------- Delta_gamma and the volume formula ---------- */

/**
 * Gamma(z) = z + D_1 z^(q) + ... acting on each coordinate through tau, with
 * A-coefficients, so that Gamma(M^n) lies in M^n.
 */
struct GammaMap {
    TauPoly series;
    std::string name;
};

inline GammaMap make_gamma(const GF* F, int n, const std::vector<APoly>& D, std::string name = "") {
    GammaMap g{TauPoly::identity(F, n), std::move(name)};
    for (const auto& a : D) g.series.c.push_back(TauPoly::scalar(F, n, a).c[0]);
    while (g.series.c.size() > 1 && g.series.c.back().is_zero()) g.series.c.pop_back();
    return g;
}

struct VolumeReport {
    std::string instance;
    int nucleus = 0;
    GRLaurent det;
    GRLaurent det_wider;
    bool independent = false;
    GRLaurent vol1, vol2;
    int residual = -1;  // det * Vol(M1) against Vol(M2)
    int theta_residual = -1;  // exp-induced only: det * Theta against 1
    int reverse_residual = -1;  // exp-induced only: Lie-side operator against Vol(M_E)

    bool pass() const { return independent && residual < 0 && theta_residual < 0 && reverse_residual < 0; }
};

/* smallest i with Gamma-tangency contraction for every delta_m, m <= N */
inline int gamma_nucleus(const GammaMap& g, const ExtensionData& X, const TamingModule& M, int N) {
    const long long q = X.F->q;
    for (int w = 1; w < 100000; ++w) {
        bool ok = true;
        for (int m = 1; m <= N && ok; ++m) {
            long long best = KLaurent::kExact;
            for (int k = 1; k <= g.series.degree(); ++k) {
                if (g.series.c[k].is_zero()) continue;
                int dd = 0;
                for (int a = 0; a < g.series.n; ++a)
                    for (int b = 0; b < g.series.n; ++b) dd = std::max(dd, g.series.c[k](a, b).degree());
                const long long qk = qpow(q, k);
                best = std::min(best, qk * (w - m) - X.frob_growth(k) - (qk - 1) * M.xi.degree() - dd);
            }
            ok = best >= w + 1;
        }
        if (ok) return w;
    }
    throw AlgebraError("no nucleus for Delta_gamma");
}

/* Gamma is an isometry on U_1 when every tau-term raises valuations */
inline bool gamma_tangent(const GammaMap& g, const ExtensionData& X, const TamingModule& M) {
    const long long q = X.F->q;
    for (int k = 1; k <= g.series.degree(); ++k) {
        if (g.series.c[k].is_zero()) continue;
        int dd = 0;
        for (int a = 0; a < g.series.n; ++a)
            for (int b = 0; b < g.series.n; ++b) dd = std::max(dd, g.series.c[k](a, b).degree());
        const long long qk = qpow(q, k);
        if (qk - X.frob_growth(k) - (qk - 1) * M.xi.degree() - dd <= 1) return false;
    }
    return true;
}

/* 1 + Delta_gamma on K_inf^n / (M^n + U_i), with t acting by t on both sides */
inline Matrix<GRLaurent> gamma_operator(const GammaMap& g, const ExtensionData& X, const TamingModule& M, int N, int i) {
    const GF* F = X.F;
    const Fq z0(F, 0);
    const int n = g.series.n, d = X.d, S = i - 1, dim = n * d * S;
    const FieldEmbedding emb = FieldEmbedding::make(F, 1);
    const KInfinity K(X, M, n, emb);
    const AMat tI = AMat::identity(n, a_zero(F)).map([&](const APoly& f) { return f * a_t(F); });
    /* Gamma on V/U_i and its inverse */
    FqMat Gm(dim, dim, z0);
    for (int b = 0; b < dim; ++b) {
        FqVec e(dim, z0);
        e[b] = Fq(F, 1);
        const FqVec col = frac_coords(K.apply(g.series, from_frac_coords(K, e, i)), n, d, i, z0);
        for (int a = 0; a < dim; ++a) Gm(a, b) = col[a];
    }
    const auto Ginv = inverse(Gm);
    if (!Ginv) throw AlgebraError("gamma is not invertible on V/U_" + std::to_string(i));
    auto images = [&](const KVec& beta) {
        std::vector<FqVec> out;
        KVec x = beta;
        for (int m = 1; m <= N; ++m) {
            if (m > 1) x = K.mul(tI, x);
            const FqVec y1 = frac_coords(K.mul(tI, x), n, d, i, z0);
            const FqVec y2 = Ginv->apply(frac_coords(K.mul(tI, K.apply(g.series, x)), n, d, i, z0));
            FqVec r(dim, z0);
            for (int a = 0; a < dim; ++a) r[a] = y1[a] - y2[a];
            out.push_back(r);
        }
        return out;
    };
    return operator_matrix(X, K, N, i, images);
}

/* det(1 + Delta_gamma | K_inf^n / M^n) mod u^(N+1) */
inline GRLaurent gamma_determinant(const GammaMap& g, const ExtensionData& X, const TamingModule& M, int N, int i) {
    return determinant(gamma_operator(g, X, M, N, i)).truncate(N + 1);
}

/**
 * Synthetic instance: M1 = M2 = K_inf^n / M^n with t acting by t, so both
 * volumes are 1 and det(1 + Delta_gamma) must be 1.
 */
inline VolumeReport volume_formula_check(const GammaMap& g, const ExtensionData& X, const TamingModule& M, int N) {
    if (!gamma_tangent(g, X, M)) throw AlgebraError("gamma is not an isometry on U_1");
    VolumeReport r;
    r.instance = g.name;
    r.nucleus = gamma_nucleus(g, X, M, N);
    r.det = gamma_determinant(g, X, M, N, r.nucleus);
    r.det_wider = gamma_determinant(g, X, M, N, r.nucleus + 2);
    r.independent = first_difference(r.det, r.det_wider, N + 1) < 0;
    const GroupRing* R = X.R;
    const int n = g.series.n;
    LatticeBasis L0{R, {}, true};
    for (int c = 0; c < n; ++c) {
        std::vector<GRLaurent> v(n, GRLaurent(GR::zero(R)));
        v[c] = GRLaurent::constant(GR::one(R));
        L0.vectors.push_back(v);
    }
    const GRPoly none = GRPoly::constant(GR::one(R));
    r.vol1 = vol_split(L0, L0, none, N + 1);
    r.vol2 = vol_split(L0, L0, none, N + 1);
    r.residual = first_difference((r.det * r.vol1).truncate(N + 1), r.vol2, N + 1);
    return r;
}

/* valuation reached after applying phi(t) k times to U_w, reducing mod M each time */
inline long long phi_orbit_bound(const TModuleSpec& E, const ExtensionData& X, const TamingModule& M, long long w, int k) {
    const long long q = X.F->q;
    long long v = w;
    for (int s = 0; s < k; ++s) {
        long long nv = v - 1;
        for (int j = 1; j <= E.ell(); ++j) {
            if (E.M[j - 1].is_zero()) continue;
            int dm = 0;
            for (int a = 0; a < E.n; ++a)
                for (int b = 0; b < E.n; ++b) dm = std::max(dm, E.M[j - 1](a, b).degree());
            const long long qj = qpow(q, j);
            nv = std::min(nv, qj * v - X.frob_growth(j) - (qj - 1) * M.xi.degree() - dm);
        }
        v = std::max(1LL, nv);
    }
    return v;
}

inline int exp_induced_nucleus(const TModuleSpec& E, const ExtensionData& X, const TamingModule& M, int N) {
    const long long q = X.F->q;
    for (int w = 1; w < 100000; ++w) {
        bool ok = true;
        for (int ww = w; ww <= w + 3 && ok; ++ww)
            for (int m = 1; m <= N && ok; ++m) {
                const long long v = phi_orbit_bound(E, X, M, ww, m - 1);
                long long best = KLaurent::kExact;
                for (int j = 1; j <= E.ell(); ++j) {
                    if (E.M[j - 1].is_zero()) continue;
                    int dm = 0;
                    for (int a = 0; a < E.n; ++a)
                        for (int b = 0; b < E.n; ++b) dm = std::max(dm, E.M[j - 1](a, b).degree());
                    const long long qj = qpow(q, j);
                    best = std::min(best, qj * v - X.frob_growth(j) - (qj - 1) * M.xi.degree() - dm);
                }
                ok = best >= ww + 1;
            }
        if (ok) return w;
    }
    throw AlgebraError("no nucleus for the exp-induced operator");
}

/* det(1 + sum (phi(t) - d) phi(t)^(m-1) u^m | E(K_inf)/E(M)) mod u^(N+1) */
inline GRLaurent exp_induced_determinant(const TModuleSpec& E, const ExtensionData& X, const TamingModule& M, int N, int i) {
    const GF* F = X.F;
    const Fq z0(F, 0);
    const FieldEmbedding emb = FieldEmbedding::make(F, 1);
    const KInfinity K(X, M, E.n, emb);
    TauPoly dpart(F, E.n);
    dpart.c.push_back(E.dE);
    const TauPoly phi = E.phi_t();
    const TauPoly diff = phi - dpart;
    auto images = [&](const KVec& beta) {
        std::vector<FqVec> out;
        KVec x = beta;
        for (int m = 1; m <= N; ++m) {
            if (m > 1) x = KInfinity::reduce(K.apply(phi, x));
            out.push_back(frac_coords(K.apply(diff, x), E.n, X.d, i, z0));
        }
        return out;
    };
    return determinant(operator_matrix(X, K, N, i, images)).truncate(N + 1);
}

/**
 * Exp-induced instance: M1 = E(K_inf)/E(M) with Vol(M1) = [Lie(M):Lambda']_G |H|_G,
 * M2 = Lie_E(K_inf)/Lie_E(M) with Vol(M2) = 1, gamma the identity on coordinates.
 */
inline VolumeReport exp_volume_check(const TModuleSpec& E, const ExtensionData& X, const TamingModule& M, int N,
                                     std::optional<int> max_degree = std::nullopt) {
    VolumeReport r;
    r.instance = "exp-induced " + E.name;
    r.nucleus = exp_induced_nucleus(E, X, M, N);
    r.det = exp_induced_determinant(E, X, M, N, r.nucleus);
    r.det_wider = exp_induced_determinant(E, X, M, N, r.nucleus + 2);
    r.independent = first_difference(r.det, r.det_wider, N + 1) < 0;
    const ClassModule H = class_module(E, X, M);
    const ExpInvLattice L = expinv_lattice(E, X, M, N + std::max(0, H.size.degree()));
    const GroupRing* R = X.R;
    r.vol1 = (L.index * GRLaurent::from_poly(H.size)).truncate(N + 1);
    r.vol2 = GRLaurent::constant(GR::one(R), N + 1);
    r.residual = first_difference((r.det * r.vol1).truncate(N + 1), r.vol2, N + 1);
    const ThetaValue th = theta0(E, X, M, N, max_degree);
    r.theta_residual = first_difference((r.det * th.value).truncate(N + 1), r.vol2, N + 1);
    /* the other orientation is the trace operator, with determinant Vol(M1) */
    const GRLaurent rev = nuclear_determinant(E, X, M, N, nucleus_index(E, X, M, N));
    r.reverse_residual = first_difference(rev, r.vol1, N + 1);
    return r;
}

}  // namespace tmod

#endif
