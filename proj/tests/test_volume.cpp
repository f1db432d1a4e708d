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

const GF* F2() { return GF::prime(2); }
const GF* F3() { return GF::prime(3); }

TModuleSpec class_group_module() { return make_drinfeld(F2(), {a_from(F2(), {0, 0, 0, 1})}); }
TModuleSpec square_class_module() { return make_drinfeld(F2(), {a_from(F2(), {0, 0, 0, 0, 1}), a_const(F2(), 1)}); }

TEST(ClassModule, CarlitzIsTrivialAtEveryDepth) {
    for (const GF* F : {F2(), F3()}) {
        const ExtensionData X = trivial_extension(F);
        for (int depth = 2; depth <= 4; ++depth) {
            const ClassModule H = class_module(make_carlitz(F), X, full_taming(F), depth);
            EXPECT_EQ(H.dim(), 0) << "depth " << depth;
            EXPECT_EQ(H.size, GRPoly::constant(GR::one(X.R)));
            EXPECT_EQ(H.w_dim, H.span_dim);
        }
    }
}

TEST(ClassModule, NontrivialExamples) {
    const ExtensionData X = trivial_extension(F2());
    const ClassModule a = class_module(class_group_module(), X, full_taming(F2()));
    EXPECT_EQ(a.size.str(), "t");
    EXPECT_EQ(a.dim(), 1);
    const ClassModule b = class_module(square_class_module(), X, full_taming(F2()));
    EXPECT_EQ(b.size.str(), "t^2");
    EXPECT_EQ(b.dim(), 2);
    /* a deeper truncation sees the same quotient */
    const ClassModule c = class_module(class_group_module(), X, full_taming(F2()), a.depth + 2);
    EXPECT_EQ(c.size, a.size);
}

TEST(ClassModule, RejectsShallowDepth) {
    const ExtensionData X = trivial_extension(F2());
    EXPECT_THROW(class_module(class_group_module(), X, full_taming(F2()), 1), IsometryError);
}

TEST(ExpInverse, LatticeCertificates) {
    struct Case {
        TModuleSpec E;
        ExtensionData X;
    };
    const std::vector<Case> cases = {{make_carlitz(F2()), trivial_extension(F2())},
                                     {make_carlitz(F3()), carlitz_cyclotomic(F3(), a_t(F3()))},
                                     {class_group_module(), trivial_extension(F2())},
                                     {carlitz_tensor(F2(), 2), trivial_extension(F2())}};
    for (const auto& c : cases) {
        const ExpInvLattice L = expinv_lattice(c.E, c.X, full_taming(c.E.F), 4);
        EXPECT_TRUE(L.in_lattice) << c.E.name;
        EXPECT_TRUE(L.d_stable) << c.E.name;
        EXPECT_EQ(static_cast<int>(L.components.size()), c.X.R->num_classes());
        EXPECT_TRUE(is_monic(L.index)) << c.E.name;
        EXPECT_GE(L.index.prec(), 5);
        for (const auto& b : L.basis) EXPECT_EQ(static_cast<int>(b.size()), c.E.n);
    }
}

TEST(Etnf, CarlitzTrivialExtension) {
    const EtnfReport r = etnf_check(make_carlitz(F2()), trivial_extension(F2()), full_taming(F2()), 4);
    EXPECT_TRUE(r.pass()) << "theta " << r.theta.value.str() << " rhs " << r.rhs.str();
    EXPECT_EQ(r.H.dim(), 0);
    EXPECT_EQ(r.rhs.str(), "1 + t^-2 + t^-3 + t^-4 + O(t^-5)");
}

TEST(Etnf, CarlitzCyclotomic) {
    const GF* F = F3();
    const EtnfReport r = etnf_check(make_carlitz(F), carlitz_cyclotomic(F, a_t(F)), full_taming(F), 3);
    EXPECT_TRUE(r.pass()) << "theta " << r.theta.value.str() << " rhs " << r.rhs.str();
}

TEST(Etnf, FurtherInstances) {
    const ExtensionData X2 = trivial_extension(F2());
    for (const TModuleSpec& E : {class_group_module(), square_class_module(), make_drinfeld(F2(), {a_const(F2(), 1), a_const(F2(), 1)}),
                                 carlitz_tensor(F2(), 2)}) {
        const EtnfReport r = etnf_check(E, X2, full_taming(F2()), 3);
        EXPECT_TRUE(r.pass()) << E.name << " theta " << r.theta.value.str() << " rhs " << r.rhs.str();
    }
    const TModuleSpec C = make_carlitz(F2());
    const EtnfReport tamed = etnf_check(C, X2, xi_taming(X2, {a_t(F2())}), 4);
    EXPECT_TRUE(tamed.pass());
}

/* the class module carries the difference between Theta and the lattice index */
TEST(Etnf, ClassModuleIsNeeded) {
    const EtnfReport r = etnf_check(class_group_module(), trivial_extension(F2()), full_taming(F2()), 3);
    ASSERT_TRUE(r.pass());
    EXPECT_GE(first_difference(r.theta.value, r.lattice.index.truncate(4), 4), 0);
}

TEST(BrumerStark, CriterionInstances) {
    const FittingReport a = brumer_stark_check(make_carlitz(F2()), trivial_extension(F2()), full_taming(F2()), 4);
    EXPECT_TRUE(a.pass());
    EXPECT_TRUE(a.etnf.pass());
    const FittingReport b = brumer_stark_check(make_carlitz(F3()), carlitz_cyclotomic(F3(), a_t(F3())), full_taming(F3()), 3);
    EXPECT_TRUE(b.pass());
    EXPECT_TRUE(b.etnf.pass());
}

TEST(BrumerStark, NontrivialClassModules) {
    for (const TModuleSpec& E : {class_group_module(), square_class_module()}) {
        const FittingReport f = brumer_stark_check(E, trivial_extension(F2()), full_taming(F2()), 3);
        EXPECT_TRUE(f.contained) << E.name;
        EXPECT_TRUE(f.mutual) << E.name;
        const auto p = as_polynomial(monic_part(f.candidate).plus);
        ASSERT_TRUE(p.has_value());
        EXPECT_EQ(*p, f.etnf.H.size) << E.name;
    }
}

TEST(BrumerStark, DetectsAWrongClassModule) {
    FittingReport ok = brumer_stark_check(class_group_module(), trivial_extension(F2()), full_taming(F2()), 3);
    EtnfReport bad = ok.etnf;
    bad.H.size = bad.H.size * to_group(bad.H.size.zero().R, a_from(F2(), {1, 1}));
    const FittingReport f = fitting_check(bad, 4);
    EXPECT_FALSE(f.contained);
    EXPECT_FALSE(f.mutual);
}

TEST(CoatesSinnott, CarlitzTwist) {
    const ExtensionData X = trivial_extension(F2());
    const FittingReport f = coates_sinnott_check(make_carlitz(F2()), X, {}, 1, 3);
    EXPECT_TRUE(f.pass());
    EXPECT_TRUE(f.etnf.pass());
    const FittingReport g = coates_sinnott_check(make_carlitz(F2()), X, {a_t(F2())}, 1, 3);
    EXPECT_TRUE(g.pass());
}

GammaMap gamma_of(const GF* F, const std::vector<std::vector<long long>>& D, const std::string& name) {
    std::vector<APoly> c;
    for (const auto& x : D) c.push_back(a_from(F, x));
    return make_gamma(F, 1, c, name);
}

TEST(Volume, SyntheticInstances) {
    struct Case {
        GammaMap g;
        ExtensionData X;
    };
    const std::vector<Case> cases = {{gamma_of(F2(), {{1}}, "z + z^2"), trivial_extension(F2())},
                                     {gamma_of(F2(), {{1}, {1, 0, 1}}, "z + z^2 + (t^2+1) z^4"), trivial_extension(F2())},
                                     {gamma_of(F2(), {{0}, {0, 1}}, "z + t z^4"), trivial_extension(F2())},
                                     {gamma_of(F3(), {{0, 1}}, "z + t z^3"), trivial_extension(F3())},
                                     {gamma_of(F3(), {{1}}, "z + z^3 over k(lambda)"), carlitz_cyclotomic(F3(), a_t(F3()))}};
    for (const auto& c : cases) {
        const VolumeReport r = volume_formula_check(c.g, c.X, full_taming(c.X.F), 3);
        EXPECT_TRUE(r.pass()) << r.instance << " det " << r.det.str();
        /* the operator really moves things */
        const Matrix<GRLaurent> A = gamma_operator(c.g, c.X, full_taming(c.X.F), 3, r.nucleus);
        bool moved = false;
        for (int i = 0; i < A.rows(); ++i)
            for (int j = 0; j < A.cols(); ++j) {
                const GRLaurent e = i == j ? A(i, j) - GRLaurent::constant(A(i, j).one()) : A(i, j);
                moved = moved || !e.truncate(4).is_zero();
            }
        EXPECT_TRUE(moved) << r.instance;
    }
}

TEST(Volume, RejectsNonTangentGamma) {
    EXPECT_THROW(volume_formula_check(gamma_of(F2(), {{0, 1}}, "z + t z^2"), trivial_extension(F2()), full_taming(F2()), 3), AlgebraError);
}

TEST(Volume, ExpInducedInstances) {
    const ExtensionData X = trivial_extension(F2());
    for (const TModuleSpec& E : {make_carlitz(F2()), class_group_module()}) {
        const VolumeReport r = exp_volume_check(E, X, full_taming(F2()), 3);
        EXPECT_TRUE(r.independent) << r.instance;
        EXPECT_EQ(r.residual, -1) << r.instance;
        EXPECT_EQ(r.theta_residual, -1) << r.instance;
        EXPECT_EQ(r.reverse_residual, -1) << r.instance;
        EXPECT_FALSE(r.det.truncate(4) == GRLaurent::constant(GR::one(X.R)).truncate(4)) << r.instance;
    }
}

TEST(Volume, SplitVolume) {
    const GroupRing* R = GroupRing::get(F2(), GroupSpec());
    const GRLaurent one = GRLaurent::constant(GR::one(R));
    const LatticeBasis L0{R, {{one}}, true};
    const GRPoly t = GRPoly::x(GR::zero(R));
    const LatticeBasis L{R, {{GRLaurent::from_poly(t + GRPoly::constant(GR::one(R)))}}, true};
    /* [L0 : L] |H| = (t + 1) t */
    EXPECT_TRUE(agrees(vol_split(L, L0, t, 6), GRLaurent::from_poly(t * t + t)));
}

}  // namespace
}  // namespace tmod
