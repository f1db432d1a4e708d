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

#include <gtest/gtest.h>

#include "support.hpp"

namespace tmod {
namespace {

using testing::group_matrix;
using testing::random_gr;
using testing::ring_of;

TEST(GroupRing, CharacterClassCounts) {
    /* Galois orbits of characters of Delta under k -> qk */
    const std::vector<int> expected = {1, 2, 3, 4, 1, 1};
    for (std::size_t i = 0; i < group_matrix().size(); ++i)
        EXPECT_EQ(ring_of(group_matrix()[i])->num_classes(), expected[i]) << group_matrix()[i].name;
}

TEST(GroupRing, PsiOfOneAndOfSigma) {
    const GroupRing* R = GroupRing::get(GF::prime(3), GroupSpec({2}));
    for (const auto& c : psi(GR::one(R))) EXPECT_TRUE(c.is_one());
    const auto comps = psi(GR::basis(R, 1));
    ASSERT_EQ(comps.size(), 2u);
    EXPECT_TRUE(comps[0].is_one());
    EXPECT_EQ(comps[1], -comps[1].one_like());
}

TEST(GroupRing, PsiIsARingIsomorphism) {
    std::mt19937 rng(17);
    for (const auto& gc : group_matrix()) {
        const GroupRing* R = ring_of(gc);
        for (int s = 0; s < 200; ++s) {
            const GR x = random_gr(R, rng), y = random_gr(R, rng);
            const auto px = psi(x), py = psi(y), pxy = psi(x * y), ps = psi(x + y);
            for (std::size_t c = 0; c < px.size(); ++c) {
                ASSERT_EQ(pxy[c], px[c] * py[c]) << gc.name;
                ASSERT_EQ(ps[c], px[c] + py[c]) << gc.name;
            }
            ASSERT_EQ(psi_inverse(R, px), x) << gc.name;
        }
    }
}

TEST(GroupRing, PsiOnSeriesRoundTrip) {
    std::mt19937 rng(19);
    for (const auto& gc : group_matrix()) {
        const GroupRing* R = ring_of(gc);
        for (int s = 0; s < 100; ++s) {
            const GRLaurent x = testing::random_series(R, -2, 6, 5, rng);
            EXPECT_TRUE(agrees(psi_inverse(R, psi(x)), x)) << gc.name;
        }
    }
}

/* exhaustive inverse search is the oracle for is_unit */
TEST(GroupRing, IsUnitMatchesExhaustiveSearch) {
    for (const auto& gc : group_matrix()) {
        const GroupRing* R = ring_of(gc);
        long long total = 1;
        for (int i = 0; i < R->n; ++i) total *= R->F->q;
        if (total > 729) continue;
        std::vector<GR> all;
        for (long long idx = 0; idx < total; ++idx) {
            GR x = GR::zero(R);
            long long k = idx;
            for (int i = 0; i < R->n; ++i) {
                x.c[i] = Fq(R->F, static_cast<std::uint32_t>(k % R->F->q));
                k /= R->F->q;
            }
            all.push_back(x);
        }
        for (const auto& x : all) {
            bool found = false;
            for (const auto& y : all)
                if ((x * y).is_one()) {
                    found = true;
                    break;
                }
            ASSERT_EQ(x.is_unit(), found) << gc.name << " " << x.str();
            if (found) {
                ASSERT_TRUE((x * x.inverse()).is_one());
            }
        }
    }
}

TEST(GroupRing, OneMinusSigmaIsNotAUnitInCharacteristicTwo) {
    const GroupRing* R = GroupRing::get(GF::prime(2), GroupSpec({2}));
    EXPECT_FALSE((GR::one(R) - GR::basis(R, 1)).is_unit());
    EXPECT_TRUE(GR::one(R).is_unit());
}

TEST(Monic, Examples) {
    const GF* F3 = GF::prime(3);
    const GroupRing* T = GroupRing::get(F3, GroupSpec());
    const GR one = GR::one(T);
    auto tpow = [&](const GroupRing* R, int k) { return GRLaurent::monomial(GR::one(R), -k); };
    EXPECT_TRUE(is_monic(tpow(T, 3)));
    const GR two = GR::constant(T, Fq(F3, 2));
    EXPECT_FALSE(is_monic(GRLaurent::monomial(two, -1)));

    const MonicSplit a = monic_part(tpow(T, 2));
    EXPECT_EQ(a.plus, tpow(T, 2));
    EXPECT_TRUE(a.unit == GRPoly::constant(one));

    /* 2t + 1 = 2 (t + 2) over F_3 */
    const GRLaurent x = GRLaurent::from_poly(to_group(T, a_from(F3, {1, 2})));
    const MonicSplit b = monic_part(x);
    EXPECT_EQ(b.plus.str(), "t + 2");
    EXPECT_EQ(b.unit.str(), "2");

    /* t*sigma in F_3[Z/2] */
    const GroupRing* R = GroupRing::get(F3, GroupSpec({2}));
    const GR sigma = GR::basis(R, 1);
    const GRLaurent ts = GRLaurent::monomial(sigma, -1);
    EXPECT_FALSE(is_monic(ts));
    const MonicSplit c = monic_part(ts);
    EXPECT_EQ(c.plus, tpow(R, 1));
    EXPECT_TRUE(c.unit == GRPoly::constant(sigma));
}

TEST(Monic, ClassicallyMonicPolynomialsAreMonic) {
    std::mt19937 rng(23);
    for (const auto& gc : group_matrix()) {
        const GroupRing* R = ring_of(gc);
        for (int s = 0; s < 20; ++s) {
            /* monic in every character: lead 1, arbitrary lower coefficients */
            const int deg = 1 + static_cast<int>(rng() % 3);
            std::vector<GR> c;
            for (int i = 0; i < deg; ++i) c.push_back(random_gr(R, rng));
            c.push_back(GR::one(R));
            EXPECT_TRUE(is_monic(GRLaurent::from_poly(GRPoly(GR::zero(R), c)))) << gc.name;
        }
    }
}

/* unit of F[G][t]: a unit constant, times 1 + (nilpotent) t in the wild case */
GRPoly random_poly_unit(const GroupRing* R, std::mt19937& rng) {
    GR c = random_gr(R, rng);
    while (!c.is_unit()) c = random_gr(R, rng);
    GRPoly u = GRPoly::constant(c);
    if (!R->tame()) {
        const GR nil = GR::one(R) - GR::basis(R, 1);
        u = u * GRPoly(GR::zero(R), {GR::one(R), random_gr(R, rng) * nil});
    }
    return u;
}

TEST(Monic, RoundTripAcrossTheGroupMatrix) {
    std::mt19937 rng(29);
    int checked = 0;
    for (const auto& gc : group_matrix()) {
        const GroupRing* R = ring_of(gc);
        int here = 0;
        for (int s = 0; s < 400 && here < 100; ++s) {
            const GRLaurent x = testing::random_series(R, -static_cast<int>(rng() % 3), 12, 10, rng);
            MonicSplit sp;
            try {
                sp = monic_part(x);
            } catch (const LaurentInverseError&) {
                continue;  // some component is not a unit
            } catch (const PrecisionError&) {
                continue;  // lead unit too deep for the known coefficients
            }
            if (sp.plus.prec() < sp.plus.valuation() + 2) continue;  // lead unit too close to the precision edge
            ++here;
            const GRLaurent back = sp.plus * GRLaurent::from_poly(sp.unit);
            ASSERT_TRUE(agrees(back, x)) << gc.name << " x=" << x.str();
            ASSERT_TRUE(is_monic(sp.plus)) << gc.name;
            ASSERT_TRUE((sp.unit * poly_unit_inverse(sp.unit)) == GRPoly::constant(GR::one(R))) << gc.name;
            /* idempotent, and blind to polynomial units */
            ASSERT_TRUE(agrees(monic_part(sp.plus).plus, sp.plus)) << gc.name;
            const GRPoly w = random_poly_unit(R, rng);
            ASSERT_TRUE(agrees(monic_part(x * GRLaurent::from_poly(w)).plus, sp.plus)) << gc.name;
            /* more precision does not move the known coefficients */
            const GRLaurent longer(x.zero(), x.val(), [&] {
                std::vector<GR> c;
                for (int k = x.val(); k < x.prec(); ++k) c.push_back(x.raw(k));
                for (int k = 0; k < 3; ++k) c.push_back(random_gr(R, rng));
                return c;
            }(), x.prec() + 3);
            ASSERT_TRUE(agrees(monic_part(longer).plus, sp.plus)) << gc.name;
        }
        EXPECT_GE(here, 80) << gc.name;
        checked += here;
    }
    EXPECT_GE(checked, 500);
}

TEST(Monic, TrivialGroupMatchesClassicalNormalization) {
    std::mt19937 rng(31);
    const GF* F = GF::prime(5);
    const GroupRing* T = GroupRing::get(F, GroupSpec());
    for (int s = 0; s < 50; ++s) {
        const KLaurent x(Fq(F, 0), -2, {Fq(F, 1 + rng() % 4), testing::random_fq(F, rng), testing::random_fq(F, rng)}, 4);
        const MonicSplit sp = monic_part(to_group(T, x));
        const Fq lead = x.lead();
        EXPECT_TRUE(agrees(sp.plus, to_group(T, lead.inverse() * x)));
        EXPECT_TRUE(sp.unit == GRPoly::constant(GR::constant(T, lead)));
    }
}

TEST(Monic, GrInverseHandlesNonUnitLeads) {
    /* F_3[Z/2]: (1 + sigma) t + (1 - sigma) has a zero divisor as leading coefficient */
    const GroupRing* R = GroupRing::get(GF::prime(3), GroupSpec({2}));
    const GR s = GR::basis(R, 1), one = GR::one(R);
    const GRLaurent x = GRLaurent::monomial(one + s, -1) + GRLaurent::constant(one - s);
    const GRLaurent y = gr_inverse(x, 6);
    EXPECT_TRUE(agrees(x * y, GRLaurent::constant(one), std::min(6, (x * y).prec())));
}

}  // namespace
}  // namespace tmod
