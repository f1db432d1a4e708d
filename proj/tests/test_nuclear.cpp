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

struct TraceCase {
    std::string name;
    TModuleSpec E;
    ExtensionData X;
    int N;
};

std::vector<TraceCase> trace_cases() {
    const GF* F2 = GF::prime(2);
    const GF* F3 = GF::prime(3);
    return {{"carlitz_q2", make_carlitz(F2), trivial_extension(F2), 5},
            {"rank2_q2", make_drinfeld(F2, {a_const(F2, 1), a_const(F2, 1)}), trivial_extension(F2), 3},
            {"tensor2_q2", carlitz_tensor(F2, 2), trivial_extension(F2), 3},
            {"carlitz_cyclotomic_q3", make_carlitz(F3), carlitz_cyclotomic(F3, a_t(F3)), 3}};
}

TEST(Trace, ThetaEqualsNuclearDeterminant) {
    for (const auto& c : trace_cases()) {
        const TraceReport r = trace_check(c.E, c.X, full_taming(c.E.F), c.N);
        EXPECT_TRUE(r.independent) << c.name;
        EXPECT_EQ(r.residual, -1) << c.name << ": theta " << r.theta.value.str() << " det " << r.det.str();
        EXPECT_EQ(r.dim, c.E.n * (r.nucleus - 1));
        EXPECT_GE(r.det.prec(), c.N + 1);
    }
}

TEST(Trace, CarlitzDeterminantValue) {
    const GF* F = GF::prime(2);
    const TModuleSpec C = make_carlitz(F);
    const ExtensionData X = trivial_extension(F);
    const int i = nucleus_index(C, X, full_taming(F), 5);
    EXPECT_EQ(nuclear_determinant(C, X, full_taming(F), 5, i).str(), "1 + t^-2 + t^-3 + t^-4 + t^-5 + O(t^-6)");
}

TEST(Trace, TamedModules) {
    const GF* F = GF::prime(2);
    const ExtensionData X = trivial_extension(F);
    for (const TModuleSpec& E : {make_carlitz(F), make_drinfeld(F, {a_const(F, 1), a_const(F, 1)})}) {
        const TamingModule M = xi_taming(X, {a_t(F)});
        const TraceReport r = trace_check(E, X, M, 3);
        EXPECT_TRUE(r.pass()) << E.name << " residual " << r.residual;
    }
}

TEST(Nucleus, DeterminantIndependentOfTheIndex) {
    for (const auto& c : trace_cases()) {
        const TamingModule M = full_taming(c.E.F);
        const int i = nucleus_index(c.E, c.X, M, c.N);
        const GRLaurent d0 = nuclear_determinant(c.E, c.X, M, c.N, i);
        for (int k = 1; k <= 2; ++k) EXPECT_EQ(first_difference(d0, nuclear_determinant(c.E, c.X, M, c.N, i + k), c.N + 1), -1) << c.name << " i+" << k;
    }
}

TEST(Nucleus, ContractionBound) {
    for (const auto& c : trace_cases()) {
        const TamingModule M = full_taming(c.E.F);
        const int i = nucleus_index(c.E, c.X, M, c.N);
        EXPECT_GE(i, 1);
        for (int m = 1; m <= c.N; ++m)
            for (long long w = i; w < i + 5; ++w) {
                EXPECT_GE(contraction_bound(c.E, c.X, M, m, w), w + 1) << c.name;
                EXPECT_LE(contraction_bound(c.E, c.X, M, m, w), contraction_bound(c.E, c.X, M, m, w + 1));
            }
        if (i > 1) {
            bool some_fail = false;
            for (int m = 1; m <= c.N; ++m) some_fail = some_fail || contraction_bound(c.E, c.X, M, m, i - 1) < i;
            EXPECT_TRUE(some_fail) << c.name << ": nucleus index is not minimal";
        }
    }
}

TEST(Nuclear, OperatorIsNotTheIdentity) {
    for (const auto& c : trace_cases()) {
        const TamingModule M = full_taming(c.E.F);
        const int i = nucleus_index(c.E, c.X, M, c.N);
        const Matrix<GRLaurent> A = nuclear_operator(c.E, c.X, M, c.N, i);
        bool off = false;
        for (int r = 0; r < A.rows(); ++r)
            for (int s = 0; s < A.cols(); ++s) {
                const GRLaurent e = r == s ? A(r, s) - GRLaurent::constant(A(r, s).one()) : A(r, s);
                off = off || !e.truncate(c.N + 1).is_zero();
            }
        EXPECT_TRUE(off) << c.name;
        /* 1 + (terms in u): the constant part is the identity */
        for (int r = 0; r < A.rows(); ++r)
            for (int s = 0; s < A.cols(); ++s) EXPECT_GE(A(r, s).valuation(), r == s ? 0 : 1);
    }
}

TEST(Nuclear, DeterminantIsMultiplicative) {
    const GF* F = GF::prime(2);
    const ExtensionData X = trivial_extension(F);
    const TamingModule M = full_taming(F);
    const int N = 3;
    const TModuleSpec C = make_carlitz(F), D = make_drinfeld(F, {a_const(F, 1), a_const(F, 1)});
    const int i = std::max(nucleus_index(C, X, M, N), nucleus_index(D, X, M, N));
    const Matrix<GRLaurent> A = nuclear_operator(C, X, M, N, i), B = nuclear_operator(D, X, M, N, i);
    ASSERT_EQ(A.rows(), B.rows());
    const GRLaurent dA = determinant(A), dB = determinant(B);
    EXPECT_EQ(first_difference(determinant(A * B), dA * dB, N + 1), -1);
    EXPECT_EQ(first_difference(determinant(B * A), dA * dB, N + 1), -1);
    EXPECT_EQ(first_difference(determinant(direct_sum(A, B)), dA * dB, N + 1), -1);
}

TEST(Nuclear, BerkowitzAgreesWithCofactorsOnOperators) {
    const GF* F3 = GF::prime(3);
    const ExtensionData X = carlitz_cyclotomic(F3, a_t(F3));
    const TModuleSpec C = make_carlitz(F3);
    const int N = 3;
    const int i = nucleus_index(C, X, full_taming(F3), N);
    const Matrix<GRLaurent> A = nuclear_operator(C, X, full_taming(F3), N, i);
    ASSERT_LE(A.rows(), 5);
    EXPECT_EQ(first_difference(determinant(A), testing::cofactor_determinant(A), N + 1), -1);
}

TEST(Nuclear, FirstDifference) {
    const GroupRing* R = GroupRing::get(GF::prime(2), GroupSpec());
    const GRLaurent one = GRLaurent::constant(GR::one(R));
    const GRLaurent a = (one + GRLaurent::monomial(GR::one(R), 3)).truncate(5);
    EXPECT_EQ(first_difference(a, one.truncate(5), 5), 3);
    EXPECT_EQ(first_difference(a, one.truncate(5), 3), -1);
    EXPECT_EQ(first_difference(a, a, 5), -1);
    EXPECT_THROW(first_difference(a, one.truncate(4), 5), PrecisionError);
}

TEST(NormalCoordinates, NeedConstantAction) {
    const GF* F = GF::prime(3);
    ExtensionData X = carlitz_cyclotomic(F, a_t(F));
    EXPECT_NO_THROW(NormalCoordinates{X});
    X.sigma[0](0, 1) = a_t(F);  // no longer constant
    EXPECT_THROW(NormalCoordinates{X}, ExtensionError);
}

}  // namespace
}  // namespace tmod
