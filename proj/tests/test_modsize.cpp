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

/* multiplication by t on A/f in the basis 1, t, ..., t^(d-1) */
FqMat companion(const APoly& f) {
    const int d = f.degree();
    const Fq z = f.zero();
    FqMat C(d, d, z);
    const Fq li = f.lead().inverse();
    for (int i = 1; i < d; ++i) C(i, i - 1) = z.one_like();
    for (int i = 0; i < d; ++i) C(i, d - 1) = -(li * f[i]);
    return C;
}

/* the Carlitz action t x + x^q on A/P, written F_q-linearly */
FqMat carlitz_on_quotient(const APoly& P) {
    const GF* F = P.zero().f;
    const int d = P.degree();
    FqMat T(d, d, Fq(F, 0));
    for (int j = 0; j < d; ++j) {
        const APoly tj = APoly::monomial(Fq(F, 1), j);
        const APoly img = a_mod(a_t(F) * tj + APoly::monomial(Fq(F, 1), static_cast<int>(F->q) * j), P);
        for (int i = 0; i < d; ++i) T(i, j) = img[i];
    }
    return T;
}

FqGModule trivial_module(const GroupRing* R, const FqMat& t) { return {R, t, {}}; }

/* B = sum F_q[G] e_i with t e_j = sum theta_ij e_i, on the F_q-basis g e_i */
FqGModule expand(const FiniteModule& B) {
    const GroupRing* R = B.R;
    const int n = R->n, r = B.rank();
    const Fq z(R->F, 0);
    FqGModule M{R, FqMat(n * r, n * r, z), {}};
    for (int j = 0; j < r; ++j)
        for (int g = 0; g < n; ++g)
            for (int i = 0; i < r; ++i) {
                const GR e = GR::basis(R, g) * B.theta(i, j);
                for (int h = 0; h < n; ++h) M.t(i * n + h, j * n + g) = e.c[h];
            }
    for (int k = 0; k < R->G.rank(); ++k) {
        std::vector<int> ek(R->G.rank(), 0);
        ek[k] = 1;
        const int gk = R->G.index(ek);
        FqMat A(n * r, n * r, z);
        for (int i = 0; i < r; ++i)
            for (int g = 0; g < n; ++g) A(i * n + R->G.mul(gk, g), i * n + g) = z.one_like();
        M.gens.push_back(A);
    }
    return M;
}

FiniteModule random_free(const GroupRing* R, int r, std::mt19937& rng) {
    Matrix<GR> th(r, r, GR::zero(R));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) th(i, j) = random_gr(R, rng);
    return {R, th};
}

TEST(GSize, QuotientByPolynomialIsThePolynomial) {
    std::mt19937 rng(3);
    for (unsigned p : {2u, 3u, 5u}) {
        const GF* F = GF::prime(p);
        const GroupRing* T = GroupRing::get(F, GroupSpec());
        for (int s = 0; s < 30; ++s) {
            const int d = 1 + static_cast<int>(rng() % 4);
            APoly f = testing::random_apoly(F, d, rng);
            f.set(d, Fq(F, 1));
            const FiniteModule B = make_free(trivial_module(T, companion(f)));
            EXPECT_EQ(gsize(B), to_group(T, f)) << f.str();
        }
    }
}

TEST(GSize, CarlitzModuleOfAPrime) {
    /* |C(A/P)| = P - 1 for the Carlitz module */
    for (unsigned p : {2u, 3u}) {
        const GF* F = GF::prime(p);
        const GroupRing* T = GroupRing::get(F, GroupSpec());
        for (int d = 1; d <= 3; ++d)
            for (const APoly& P : enumerate_monic_irreducibles(F, d)) {
                const GRPoly g = gsize(make_free(trivial_module(T, carlitz_on_quotient(P))));
                EXPECT_EQ(g, to_group(T, P - a_const(F, 1))) << P.str();
            }
    }
    const GF* F2 = GF::prime(2);
    const GroupRing* T = GroupRing::get(F2, GroupSpec());
    EXPECT_EQ(gsize(make_free(trivial_module(T, carlitz_on_quotient(a_t(F2))))).str(), "t+1");
}

TEST(GSize, ZeroModuleHasSizeOne) {
    for (const auto& gc : group_matrix()) {
        const GroupRing* R = ring_of(gc);
        EXPECT_EQ(gsize(FiniteModule::zero(R)), GRPoly::constant(GR::one(R)));
        EXPECT_EQ(gsize(make_free(FqGModule{R, FqMat(0, 0, Fq(R->F, 0)), std::vector<FqMat>(R->G.rank(), FqMat(0, 0, Fq(R->F, 0)))})),
                  GRPoly::constant(GR::one(R)));
    }
}

TEST(GSize, MultiplicativeOnDirectSums) {
    std::mt19937 rng(5);
    for (const auto& gc : group_matrix()) {
        const GroupRing* R = ring_of(gc);
        for (int s = 0; s < 20; ++s) {
            const FiniteModule a = random_free(R, 1 + static_cast<int>(rng() % 3), rng);
            const FiniteModule b = random_free(R, 1 + static_cast<int>(rng() % 3), rng);
            EXPECT_EQ(gsize(direct_sum(a, b)), gsize(a) * gsize(b)) << gc.name;
        }
    }
}

TEST(GSize, IndependentOfTheFreeBasis) {
    std::mt19937 rng(7);
    for (const auto& gc : group_matrix()) {
        const GroupRing* R = ring_of(gc);
        for (int s = 0; s < 15; ++s) {
            const int r = 1 + static_cast<int>(rng() % 3);
            const FiniteModule B = random_free(R, r, rng);
            /* P = 1 + N with N strictly upper triangular */
            Matrix<GR> P = Matrix<GR>::identity(r, GR::zero(R)), Pinv = P, N(r, r, GR::zero(R));
            for (int i = 0; i < r; ++i)
                for (int j = i + 1; j < r; ++j) N(i, j) = random_gr(R, rng);
            P = P + N;
            Matrix<GR> pw = Pinv;
            for (int k = 1; k < r; ++k) {
                pw = pw * N;
                Pinv = (k % 2) ? Pinv - pw : Pinv + pw;
            }
            const FiniteModule B2{R, P * B.theta * Pinv};
            EXPECT_EQ(gsize(B2), gsize(B)) << gc.name;
            /* through the F_q-description and a fresh basis search */
            EXPECT_EQ(gsize(make_free(expand(B), 99u + static_cast<unsigned>(s))), gsize(B)) << gc.name;
        }
    }
}

TEST(GSize, CharacterRouteAgreesWhenTame) {
    std::mt19937 rng(11);
    for (const auto& gc : group_matrix()) {
        const GroupRing* R = ring_of(gc);
        if (!R->tame()) {
            EXPECT_THROW(gsize_by_characters(expand(random_free(R, 1, rng))), ModuleError);
            continue;
        }
        for (int s = 0; s < 20; ++s) {
            const FiniteModule B = random_free(R, 1 + static_cast<int>(rng() % 3), rng);
            EXPECT_EQ(gsize_by_characters(expand(B)), gsize(B)) << gc.name;
        }
    }
}

TEST(GSize, MakeFreeRejectsNonFreeModules) {
    const GF* F = GF::prime(3);
    const GroupRing* R = GroupRing::get(F, GroupSpec({2}));
    /* F_3 with trivial action is not F_3[Z/2]-free */
    FqGModule M{R, FqMat(1, 1, Fq(F, 0)), {FqMat::identity(1, Fq(F, 0))}};
    EXPECT_THROW(make_free(M), ModuleError);
    /* but its size is still defined through characters: t in the trivial component, 1 in the other */
    const GRPoly g = gsize_by_characters(M);
    const auto comps = psi(g);
    EXPECT_EQ(comps[0].str(), "t");
    EXPECT_TRUE(comps[1] == GRPoly::constant(comps[1].one()));
}

TEST(Fitting, DivisibilityAndContainment) {
    const GF* F = GF::prime(3);
    const GroupRing* R = GroupRing::get(F, GroupSpec({2}));
    const GR one = GR::one(R), s = GR::basis(R, 1);
    const GRPoly t = GRPoly::x(GR::zero(R));
    const GRPoly f = t + GRPoly::constant(s);  // t + sigma
    const GRPoly g = t * t + GRPoly::constant(one);
    EXPECT_TRUE(gr_divides(f, f * g));
    EXPECT_FALSE(gr_divides(f * g, f));
    EXPECT_TRUE(gr_divides(GRPoly::constant(one), g));
    EXPECT_THROW(gr_divides(GRPoly::constant(one + s) * t, t * g), ModuleError);

    FiniteModule B{R, Matrix<GR>(1, 1, GR::zero(R))};
    B.theta(0, 0) = -s;
    EXPECT_EQ(gsize(B), f);
    EXPECT_TRUE(fitting_contains(GRLaurent::from_poly(f * g), B));
    /* a unit multiple changes nothing */
    EXPECT_TRUE(fitting_contains(GRLaurent::from_poly(GRPoly::constant(s) * f), B));
    EXPECT_FALSE(fitting_contains(GRLaurent::from_poly(g), B));
    /* fractional part */
    EXPECT_FALSE(fitting_contains(GRLaurent::from_poly(f) + GRLaurent::monomial(one, 2, 5), B));
    EXPECT_THROW(fitting_contains(GRLaurent::from_poly(f).truncate(0), B), PrecisionError);
}

TEST(Lattice, IndexOfDiagonalSublattice) {
    std::mt19937 rng(13);
    for (const auto& gc : group_matrix()) {
        const GroupRing* R = ring_of(gc);
        if (R->F->p != 3) continue;
        const GRLaurent one = GRLaurent::constant(GR::one(R)), zero(GR::zero(R));
        const GRPoly t = GRPoly::x(GR::zero(R));
        const GRPoly f = t * t + GRPoly::constant(random_gr(R, rng)) * t + GRPoly::constant(random_gr(R, rng));
        LatticeBasis L1{R, {{one, zero}, {zero, one}}};
        LatticeBasis L2{R, {{GRLaurent::from_poly(f), zero}, {zero, one}}};
        /* multiplying by t^2 costs two orders of precision */
        const GRLaurent i12 = lattice_index(L1, L2, 6);
        EXPECT_GE(i12.prec(), 4);
        EXPECT_TRUE(agrees(i12, GRLaurent::from_poly(f))) << gc.name;
        /* a unimodular change of basis has index 1 */
        LatticeBasis L3{R, {{one, GRLaurent::from_poly(t)}, {zero, one}}};
        EXPECT_TRUE(agrees(lattice_index(L1, L3, 6), one)) << gc.name;
        /* index is multiplicative in towers */
        LatticeBasis L4{R, {{GRLaurent::from_poly(f), zero}, {GRLaurent::from_poly(f), GRLaurent::from_poly(t)}}};
        const GRLaurent i14 = lattice_index(L1, L4, 8), i24 = lattice_index(L2, L4, 8);
        EXPECT_TRUE(agrees(i14, lattice_index(L1, L2, 8) * i24)) << gc.name;
        EXPECT_TRUE(agrees(i24, GRLaurent::from_poly(t))) << gc.name;
    }
}

TEST(Lattice, RejectsMismatchedInput) {
    const GroupRing* R = GroupRing::get(GF::prime(2), GroupSpec());
    const GRLaurent one = GRLaurent::constant(GR::one(R)), zero(GR::zero(R));
    LatticeBasis L1{R, {{one}}};
    LatticeBasis L2{R, {{one, zero}, {zero, one}}};
    EXPECT_THROW(lattice_index(L1, L2, 4), ModuleError);
    LatticeBasis L3{R, {{one}}, false};
    EXPECT_THROW(lattice_index(L1, L3, 4), ModuleError);
}

}  // namespace
}  // namespace tmod
