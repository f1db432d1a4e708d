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

#ifndef TMOD_NUCLEAR_HPP
#define TMOD_NUCLEAR_HPP

#include <optional>
#include <string>
#include <vector>

#include "lvalue.hpp"

namespace tmod {

/**
 * F_q[G]-coordinates on the span of w_0..w_{d-1}: the basis sigma_h(g) for a
 * normal generator g. Requires G to act through constant matrices.
 */
class NormalCoordinates {
public:
    explicit NormalCoordinates(const ExtensionData& X) : X_(X) {
        const auto g = normal_generator(X);
        if (!g) throw ExtensionError("no normal basis of span(w_j); the action must be constant");
        g_ = *g;
        const int d = X.d, n = X.G.size();
        FqMat B(d, n, Fq(X.F, 0));
        for (int h = 0; h < n; ++h) {
            const FqVec w = X.action(h).map([](const APoly& f) { return f[0]; }).apply(g_);
            for (int k = 0; k < d; ++k) B(k, h) = w[k];
        }
        const auto inv = inverse(B);
        if (!inv) throw ExtensionError("normal generator does not give a basis");
        B_ = B;
        Binv_ = *inv;
    }

    const FqVec& generator() const { return g_; }
    const FqMat& basis() const { return B_; }

    /* w-coordinates z = a * g with a in F_q[G] */
    GR to_gr(const FqVec& z) const { return GR(X_.R, Binv_.apply(z)); }
    FqVec from_gr(const GR& a) const {
        FqVec c(a.c.begin(), a.c.end());
        return B_.apply(c);
    }

private:
    const ExtensionData& X_;
    FqVec g_;
    FqMat B_, Binv_;
};

/**
 * Lower bound for the u-valuation of phi_m(x) when x has u-valuation w, with
 * phi_m = (d - phi(t)) d^(m-1) read in the y-coordinates of M.
 */
inline long long contraction_bound(const TModuleSpec& E, const ExtensionData& X, const TamingModule& M, int m, long long w) {
    const long long q = X.F->q;
    const long long degd = std::max(1, E.n_degree());
    long long best = KLaurent::kExact;
    for (int j = 1; j <= E.ell(); ++j) {
        if (E.M[j - 1].is_zero()) continue;
        int degM = 0;
        for (int a = 0; a < E.n; ++a)
            for (int b = 0; b < E.n; ++b) degM = std::max(degM, E.M[j - 1](a, b).degree());
        const long long qj = qpow(q, j);
        const long long v = qj * (w - (m - 1) * degd) - X.frob_growth(j) - (qj - 1) * M.xi.degree() - degM;
        best = std::min(best, v);
    }
    return best;
}

/* smallest i >= 1 such that every phi_m, m <= N, maps U_w into U_(w+1) for w >= i */
inline int nucleus_index(const TModuleSpec& E, const ExtensionData& X, const TamingModule& M, int N) {
    for (int i = 1; i < 100000; ++i) {
        bool ok = true;
        for (int m = 1; m <= N && ok; ++m) ok = contraction_bound(E, X, M, m, i) >= i + 1;
        if (ok) return i;
    }
    throw AlgebraError("no nucleus found");
}

/**
 * I + sum_{m<=N} phi_m u^m on V/U_i = K_inf^n / (M^n + U_i), over F_q[G] with
 * basis u^s g e_c (1 <= s < i), entries known mod u^(N+1).
 */
inline Matrix<GRLaurent> nuclear_operator(const TModuleSpec& E, const ExtensionData& X, const TamingModule& M, int N, int i) {
    const GF* F = X.F;
    const GroupRing* R = X.R;
    const NormalCoordinates nc(X);
    const FieldEmbedding emb = FieldEmbedding::make(F, 1);
    const KInfinity K(X, M, E.n, emb);
    const int d = X.d, S = i - 1, dim = E.n * S;
    const GRLaurent zero(GR::zero(R), N + 1);
    Matrix<GRLaurent> A(dim, dim, zero);
    for (int r = 0; r < dim; ++r) A(r, r) = GRLaurent::constant(GR::one(R), N + 1);

    TauPoly dpart(F, E.n);
    dpart.c.push_back(E.dE);
    const TauPoly delta = dpart - E.phi_t();  // d - phi(t)
    const FqVec& g = nc.generator();

    for (int c = 0; c < E.n; ++c)
        for (int s = 1; s <= S; ++s) {
            KInfinity::Vec x = K.zero();
            for (int j = 0; j < d; ++j) x[c * d + j] = KLaurent::monomial(g[j], s);
            const int col = c * S + (s - 1);
            for (int m = 1; m <= N; ++m) {
                if (m > 1) x = K.mul(E.dE, x);
                const KInfinity::Vec y = KInfinity::truncate(KInfinity::reduce(K.apply(delta, x)), i);
                for (int c2 = 0; c2 < E.n; ++c2)
                    for (int s2 = 1; s2 <= S; ++s2) {
                        FqVec z(d, Fq(F, 0));
                        bool any = false;
                        for (int j = 0; j < d; ++j) {
                            z[j] = y[c2 * d + j].raw(s2);
                            any = any || !z[j].is_zero();
                        }
                        if (!any) continue;
                        const int row = c2 * S + (s2 - 1);
                        A(row, col) = A(row, col) + GRLaurent::monomial(nc.to_gr(z), m, N + 1);
                    }
            }
        }
    return A;
}

/* det(1 + sum phi_m u^m | V/U_i) mod u^(N+1) */
inline GRLaurent nuclear_determinant(const TModuleSpec& E, const ExtensionData& X, const TamingModule& M, int N, int i) {
    return determinant(nuclear_operator(E, X, M, N, i)).truncate(N + 1);
}

struct TraceReport {
    int nucleus = 0;
    int dim = 0;  // rank of V/U_i over F_q[G]
    GRLaurent det;
    GRLaurent det_wider;  // at i + 2
    ThetaValue theta;
    bool independent = false;
    /* order of the first disagreement with theta, or -1 */
    int residual = -1;

    bool pass() const { return independent && residual < 0; }
};

/* first exponent below n where a and b differ, or -1; both must be known mod u^n */
inline int first_difference(const GRLaurent& a, const GRLaurent& b, int n) {
    if (a.prec() < n || b.prec() < n)
        throw PrecisionError("comparison mod u^" + std::to_string(n) + " with precision " + std::to_string(std::min(a.prec(), b.prec())));
    const GRLaurent diff = (a - b).truncate(n);
    return diff.is_zero() ? -1 : diff.valuation();
}

inline TraceReport trace_check(const TModuleSpec& E, const ExtensionData& X, const TamingModule& M, int N,
                               std::optional<int> max_degree = std::nullopt) {
    TraceReport r;
    r.nucleus = nucleus_index(E, X, M, N);
    r.dim = E.n * (r.nucleus - 1);
    r.det = nuclear_determinant(E, X, M, N, r.nucleus);
    r.det_wider = nuclear_determinant(E, X, M, N, r.nucleus + 2);
    r.independent = first_difference(r.det, r.det_wider, N + 1) < 0;
    r.theta = theta0(E, X, M, N, max_degree);
    r.residual = first_difference(r.theta.value, r.det, N + 1);
    return r;
}

}  // namespace tmod

#endif
