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

#include <functional>

#include <gtest/gtest.h>

#include "support.hpp"

namespace tmod {
namespace {

/* monic polynomials of degree d over F, in a fixed order */
std::vector<APoly> monics(const GF* F, int d) {
    std::vector<APoly> out;
    unsigned long long count = 1;
    for (int i = 0; i < d; ++i) count *= F->q;
    for (unsigned long long idx = 0; idx < count; ++idx) {
        std::vector<Fq> c(d + 1, Fq(F, 0));
        c[d] = Fq(F, 1);
        for (int i = 0, k = static_cast<int>(idx); i < d; ++i, k /= static_cast<int>(F->q)) c[i] = Fq(F, static_cast<std::uint32_t>(k % F->q));
        out.emplace_back(Fq(F, 0), c);
    }
    return out;
}

/* sum over monic a, deg a <= N, of chi(a(0)) / a; chi = 1 is the Carlitz zeta value */
KLaurent dirichlet_sum(const GF* F, int N, const std::function<Fq(const Fq&)>& chi) {
    KLaurent s(Fq(F, 0), N + 1);
    for (int d = 0; d <= N; ++d)
        for (const APoly& a : monics(F, d)) {
            const Fq c = chi(a[0]);
            if (c.is_zero()) continue;
            s = s + KLaurent::constant(c) * laurent_inverse(KLaurent::from_poly(a), N + 1);
        }
    return s.truncate(N + 1);
}

KLaurent zeta_sum(const GF* F, int N) {
    return dirichlet_sum(F, N, [&](const Fq&) { return Fq(F, 1); });
}

KLaurent series(const GF* F, const std::vector<int>& c, int prec) {
    std::vector<Fq> v;
    for (int x : c) v.push_back(Fq::from_int(F, x));
    return KLaurent(Fq(F, 0), 0, v, prec);
}

/* a series over F_q, or over the host field, as a character component */
GRLaurent local(const GroupRing* R, const KLaurent& x, bool from_base) {
    return x.map([&](const Fq& a) { return GR::constant(R->local, from_base ? R->emb.up(a) : a); });
}

TEST(Theta0, CarlitzZetaQ2) {
    const GF* F = GF::prime(2);
    const ThetaValue th = theta0(make_carlitz(F), trivial_extension(F), full_taming(F), 4);
    const GroupRing* T = GroupRing::get(F, GroupSpec());
    const KLaurent frozen = series(F, {1, 0, 1, 1, 1}, 5);
    EXPECT_TRUE(agrees(th.value, to_group(T, frozen), 5));
    EXPECT_TRUE(agrees(zeta_sum(F, 4), frozen, 5));
    EXPECT_TRUE(agrees(carlitz_zeta_oracle(F, 4), frozen, 5));
    EXPECT_EQ(th.value.str(), "1 + t^-2 + t^-3 + t^-4 + O(t^-5)");
}

TEST(Theta0, CarlitzZetaQ3) {
    const GF* F = GF::prime(3);
    const ThetaValue th = theta0(make_carlitz(F), trivial_extension(F), full_taming(F), 4);
    const GroupRing* T = GroupRing::get(F, GroupSpec());
    const KLaurent frozen = series(F, {1, 0, 0, 2, 0}, 5);
    EXPECT_TRUE(agrees(th.value, to_group(T, frozen), 5));
    EXPECT_TRUE(agrees(zeta_sum(F, 4), frozen, 5));
}

TEST(Theta0, FactorBookkeeping) {
    const GF* F = GF::prime(2);
    const TModuleSpec E = make_drinfeld(F, {a_const(F, 1), a_const(F, 1)});
    const ThetaValue th = theta0(E, trivial_extension(F), full_taming(F), 3);
    ASSERT_FALSE(th.log.empty());
    int last = 0;
    for (const auto& f : th.log) {
        EXPECT_GE(f.v.degree(), last);
        last = f.v.degree();
        EXPECT_EQ(f.lie.degree(), E.n * f.v.degree());
        EXPECT_EQ(f.e.degree(), E.n * f.v.degree());
        EXPECT_TRUE(f.lie.lead().is_one() && f.e.lead().is_one());
        /* ratio in 1 + u F[G][[u]] */
        EXPECT_GE(f.stable, 1);
    }
    EXPECT_EQ(th.certified, th.D + 1);
}

TEST(Theta0, CutoffStability) {
    const GF* F = GF::prime(2);
    for (const TModuleSpec& E : {make_carlitz(F), carlitz_tensor(F, 2)}) {
        const ExtensionData X = trivial_extension(F);
        const ThetaValue a = theta0(E, X, full_taming(F), 3);
        const ThetaValue b = theta0(E, X, full_taming(F), 3, a.D + 2);
        EXPECT_TRUE(agrees(a.value, b.value, 4));
        EXPECT_GE(b.D, a.D + 2);
    }
}

TEST(Theta0, CutoffError) {
    const GF* F = GF::prime(2);
    EXPECT_THROW(theta0(make_carlitz(F), trivial_extension(F), full_taming(F), 4, 1, 0), CutoffError);
    EXPECT_THROW(theta0(make_carlitz(F), trivial_extension(F), full_taming(F), 0), AlgebraError);
}

/* components over k(lambda_t), q = 3, against Dirichlet sums for the characters of F_3^* */
TEST(Theta0, CyclotomicComponents) {
    const GF* F = GF::prime(3);
    const ExtensionData X = carlitz_cyclotomic(F, a_t(F));
    const TModuleSpec C = make_carlitz(F);
    const ThetaValue th = theta0(C, X, full_taming(F), 3);
    const auto comps = psi(th.value);
    ASSERT_EQ(comps.size(), 2u);
    const KLaurent sign = dirichlet_sum(F, 3, [&](const Fq& c) {
        if (c.is_zero()) return Fq(F, 0);
        return c.is_one() ? Fq(F, 1) : Fq(F, 2);
    });
    EXPECT_TRUE(agrees(comps[0], local(X.R, zeta_sum(F, 3), true), 4));
    EXPECT_TRUE(agrees(comps[1], local(X.R, sign, true), 4));
}

TEST(Theta0, CharacterPipelineAgrees) {
    for (const GF* F : {GF::prime(3), GF::get(2, {1, 1, 1})}) {
        const int N = F->q == 3 ? 3 : 2;
        const ExtensionData X = carlitz_cyclotomic(F, a_t(F));
        /* the tensor square over F_4 needs primes of degree 6; one field is enough */
        std::vector<TModuleSpec> mods = {make_carlitz(F)};
        if (F->q == 3) mods.push_back(carlitz_tensor(F, 2));
        for (const TModuleSpec& E : mods) {
            const ThetaValue th = theta0(E, X, full_taming(F), N);
            const auto comps = psi(th.value);
            const auto chars = theta0_by_characters(E, X, full_taming(F), N, th.D);
            ASSERT_EQ(comps.size(), chars.size());
            for (std::size_t c = 0; c < comps.size(); ++c) EXPECT_TRUE(agrees(comps[c], local(X.R, chars[c], false), N + 1)) << F->q << " " << c;
        }
    }
}

/* Theta_S against theta0 on O_K with the Euler factors at S divided out */
TEST(ThetaS, MatchesRemovedFactors) {
    const GF* F2 = GF::prime(2);
    const GF* F3 = GF::prime(3);
    struct Case {
        TModuleSpec E;
        ExtensionData X;
        std::vector<APoly> S;
        int N;
    };
    const std::vector<Case> cases = {{make_carlitz(F2), trivial_extension(F2), {a_t(F2)}, 4},
                                     {make_drinfeld(F2, {a_const(F2, 1), a_const(F2, 1)}), trivial_extension(F2), {a_t(F2), a_from(F2, {1, 1})}, 3},
                                     {make_carlitz(F3), carlitz_cyclotomic(F3, a_t(F3)), {a_from(F3, {1, 1})}, 3}};
    for (const auto& c : cases) {
        const ThetaValue full = theta0(c.E, c.X, full_taming(c.X.F), c.N);
        GRLaurent expect = full.value;
        for (const auto& P : c.S) {
            const EulerFactor f = euler_factor(c.E, c.X, full_taming(c.X.F), {P}, c.N);
            expect = (expect * laurent_inverse(f.ratio, c.N + 1)).truncate(c.N + 1);
        }
        const ThetaValue ts = theta_S(c.E, c.X, c.S, c.N);
        EXPECT_TRUE(agrees(ts.value, expect, c.N + 1)) << c.E.name;
        for (const auto& f : ts.log)
            if (std::find(c.S.begin(), c.S.end(), f.v.P) != c.S.end()) {
                EXPECT_TRUE(f.trivial()) << f.v.P.str();
            }
    }
}

TEST(ThetaS, CarlitzWithoutT) {
    /* removing v = (t) multiplies by (t - 1)/t = 1 + u over F_2 */
    const GF* F = GF::prime(2);
    const GroupRing* T = GroupRing::get(F, GroupSpec());
    const ThetaValue ts = theta_S(make_carlitz(F), trivial_extension(F), {a_t(F)}, 4);
    const KLaurent expect = (zeta_sum(F, 4) * series(F, {1, 1}, 5)).truncate(5);
    EXPECT_TRUE(agrees(ts.value, to_group(T, expect), 5));
    EXPECT_TRUE(agrees(theta_S(make_carlitz(F), trivial_extension(F), {}, 4).value, to_group(T, zeta_sum(F, 4)), 5));
}

TEST(ThetaM, ReducesToTwists) {
    const GF* F = GF::prime(2);
    const ExtensionData X = trivial_extension(F);
    const TModuleSpec C = make_carlitz(F);
    EXPECT_TRUE(agrees(theta_m(C, X, {}, 0, 4).value, theta0(C, X, full_taming(F), 4).value, 5));
    const ThetaValue t1 = theta_m(C, X, {}, 1, 3);
    EXPECT_TRUE(agrees(t1.value, theta0(carlitz_tensor(F, 2), X, full_taming(F), 3).value, 4));
    EXPECT_THROW(theta_m(carlitz_tensor(F, 2), X, {}, 1, 3), MotiveError);
}

/* the twist law on whole values: C(1) has Euler factors P^2 / (P^2 - 1), i.e. sum of 1/a^2 */
TEST(ThetaM, CarlitzAtOne) {
    const GF* F = GF::prime(2);
    const GroupRing* T = GroupRing::get(F, GroupSpec());
    const int N = 4;
    KLaurent s(Fq(F, 0), N + 1);
    for (int d = 0; 2 * d <= N; ++d)
        for (const APoly& a : monics(F, d)) s = s + laurent_inverse(KLaurent::from_poly(a * a), N + 1);
    const ThetaValue t1 = theta_m(make_carlitz(F), trivial_extension(F), {}, 1, N);
    EXPECT_TRUE(agrees(t1.value, to_group(T, s.truncate(N + 1)), N + 1));
}

}  // namespace
}  // namespace tmod
