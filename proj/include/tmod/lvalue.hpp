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

#ifndef TMOD_LVALUE_HPP
#define TMOD_LVALUE_HPP

#include <optional>
#include <string>
#include <vector>

#include "fields.hpp"

namespace tmod {

struct CutoffError : AlgebraError {
    using AlgebraError::AlgebraError;
};

struct EulerFactor {
    PrimeOfA v;
    GRPoly lie;      // |Lie_E(M/v)|_G
    GRPoly e;        // |E(M/v)|_G
    GRLaurent ratio;  // lie / e, known mod u^(N+1)
    int stable = 0;   // largest s with ratio = 1 mod u^s

    bool trivial() const { return stable >= ratio.prec(); }
};

struct ThetaValue {
    GRLaurent value;
    int N = 0;
    int D = 0;          // largest prime degree in the product
    int certified = 0;  // the degree whose factors certified the cutoff
    std::vector<EulerFactor> log;
};

/* ratio of two monic polynomials of equal degree, mod u^(N+1) */
inline GRLaurent monic_ratio(const GRPoly& num, const GRPoly& den, int N) {
    if (!den.lead().is_one()) throw AlgebraError("denominator is not monic");
    const GRLaurent d = GRLaurent::from_poly(den);
    const GRLaurent inv = laurent_inverse(d, N + 1 + den.degree());
    return (GRLaurent::from_poly(num) * inv).truncate(N + 1);
}

/* largest s with x = 1 mod u^s, capped at the precision */
inline int stabilization_order(const GRLaurent& x) {
    const GRLaurent r = x - GRLaurent::constant(x.one());
    return r.is_zero() ? x.prec() : r.valuation();
}

inline EulerFactor euler_factor(const TModuleSpec& E, const ExtensionData& X, const TamingModule& M, const PrimeOfA& v, int N) {
    const Reduction red = reduction(E, X, M, v);
    EulerFactor f;
    f.v = v;
    f.lie = gsize(make_free(red.lie));
    f.e = gsize(make_free(red.e));
    const int deg = E.n * v.degree();
    if (f.lie.degree() != deg || f.e.degree() != deg) throw AlgebraError("Euler factor has the wrong degree at " + v.P.str());
    f.ratio = monic_ratio(f.lie, f.e, N);
    f.stable = stabilization_order(f.ratio);
    return f;
}

/* the default cutoff N + n(1 + l) */
inline int default_cutoff(const TModuleSpec& E, int N) { return N + E.n * (1 + E.ell()); }

/**
 * Euler product over the primes of A in ascending degree, lexicographic
 * within a degree, mod u^(N+1). The sweep stops at the first D >= D0 such
 * that every factor of degree D+1 is 1 mod u^(N+1).
 */
inline ThetaValue theta0(const TModuleSpec& E, const ExtensionData& X, const TamingModule& M, int N, std::optional<int> max_degree = std::nullopt,
                         int extra_degrees = 6) {
    if (N < 1) throw AlgebraError("precision must be at least 1");
    const GroupRing* R = X.R;
    const int D0 = max_degree ? *max_degree : default_cutoff(E, N);
    ThetaValue th;
    th.N = N;
    th.value = GRLaurent::constant(GR::one(R)).truncate(N + 1);
    for (int deg = 1; deg <= D0 + extra_degrees + 1; ++deg) {
        bool all_trivial = true;
        std::vector<EulerFactor> batch;
        for (const auto& P : enumerate_monic_irreducibles(X.F, deg)) {
            EulerFactor f = euler_factor(E, X, M, {P}, N);
            all_trivial = all_trivial && f.trivial();
            batch.push_back(std::move(f));
        }
        if (deg > D0 && all_trivial) {
            th.D = deg - 1;
            th.certified = deg;
            return th;
        }
        for (auto& f : batch) {
            th.value = (th.value * f.ratio).truncate(N + 1);
            th.log.push_back(std::move(f));
        }
    }
    std::string data;
    for (const auto& f : th.log)
        if (f.v.degree() > D0 && !f.trivial()) data += " " + f.v.P.str() + ":" + std::to_string(f.stable);
    throw CutoffError("cutoff not certified up to degree " + std::to_string(D0 + extra_degrees + 1) + "; unstable factors" + data);
}

/* Euler product without the primes in S, computed on M_xi */
inline ThetaValue theta_S(const TModuleSpec& E, const ExtensionData& X, const std::vector<APoly>& S, int N, std::optional<int> max_degree = std::nullopt) {
    return theta0(E, X, xi_taming(X, S), N, max_degree);
}

/* Theta at s = m through the twist E(m) = E (x) C^(x)m */
inline ThetaValue theta_m(const TModuleSpec& E, const ExtensionData& X, const std::vector<APoly>& S, int m, int N,
                          std::optional<int> max_degree = std::nullopt) {
    if (!E.drinfeld()) throw MotiveError("theta at positive integers needs a Drinfeld module");
    return theta_S(drinfeld_twist(E, m), X, S, N, max_degree);
}

/**
 * The same Euler product computed inside each character component over the
 * host field, from characteristic polynomials on chi-eigenspaces. Primes of
 * degree at most D.
 */
inline std::vector<KLaurent> theta0_by_characters(const TModuleSpec& E, const ExtensionData& X, const TamingModule& M, int N, int D) {
    const GroupRing* R = X.R;
    const GF* B = R->emb.big;
    std::vector<KLaurent> acc(R->num_classes(), KLaurent::constant(Fq(B, 1)).truncate(N + 1));
    for (int deg = 1; deg <= D; ++deg)
        for (const auto& P : enumerate_monic_irreducibles(X.F, deg)) {
            const Reduction red = reduction(E, X, M, {P});
            const auto lie = character_charpolys(red.lie), e = character_charpolys(red.e);
            for (int c = 0; c < R->num_classes(); ++c) {
                const KLaurent inv = laurent_inverse(KLaurent::from_poly(e[c]), N + 1 + e[c].degree());
                acc[c] = (acc[c] * (KLaurent::from_poly(lie[c]) * inv)).truncate(N + 1);
            }
        }
    return acc;
}

/* independent value: sum over monic a of degree <= N of a^-1, mod u^(N+1) */
inline KLaurent carlitz_zeta_oracle(const GF* F, int N) {
    KLaurent s = KLaurent(Fq(F, 0), N + 1);
    for (int deg = 0; deg <= N; ++deg) {
        unsigned long long count = 1;
        for (int i = 0; i < deg; ++i) count *= F->q;
        for (unsigned long long idx = 0; idx < count; ++idx) {
            std::vector<Fq> c(deg + 1, Fq(F, 0));
            c[deg] = Fq(F, 1);
            unsigned long long k = idx;
            for (int i = 0; i < deg; ++i) {
                c[i] = Fq(F, static_cast<std::uint32_t>(k % F->q));
                k /= F->q;
            }
            s = s + laurent_inverse(KLaurent::from_poly(APoly(Fq(F, 0), c)), N + 1);
        }
    }
    return s.truncate(N + 1);
}

}  // namespace tmod

#endif
