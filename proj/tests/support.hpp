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

#ifndef TMOD_TESTS_SUPPORT_HPP
#define TMOD_TESTS_SUPPORT_HPP

#include <random>
#include <string>
#include <vector>

#include "tmod/tmod.hpp"

namespace tmod::testing {

inline Fq random_fq(const GF* F, std::mt19937& rng) { return Fq(F, static_cast<std::uint32_t>(rng() % F->q)); }

inline GR random_gr(const GroupRing* R, std::mt19937& rng) {
    GR x = GR::zero(R);
    for (auto& c : x.c) c = random_fq(R->F, rng);
    return x;
}

inline APoly random_apoly(const GF* F, int deg, std::mt19937& rng) {
    std::vector<Fq> c;
    for (int i = 0; i <= deg; ++i) c.push_back(random_fq(F, rng));
    return APoly(Fq(F, 0), c);
}

/* random series with val 0..-2 in t, relative length len, given precision */
inline GRLaurent random_series(const GroupRing* R, int val, int len, int prec, std::mt19937& rng) {
    std::vector<GR> c;
    for (int i = 0; i < len; ++i) c.push_back(random_gr(R, rng));
    return GRLaurent(GR::zero(R), val, c, prec);
}

/* Laplace expansion along the first row; the oracle for Berkowitz */
template <typename R>
R cofactor_determinant(const Matrix<R>& m) {
    const int n = m.rows();
    if (n == 0) return m.zero().one_like();
    if (n == 1) return m(0, 0);
    R acc = m.zero();
    for (int j = 0; j < n; ++j) {
        Matrix<R> minor(n - 1, n - 1, m.zero());
        for (int i = 1; i < n; ++i)
            for (int k = 0, c = 0; k < n; ++k)
                if (k != j) minor(i - 1, c++) = m(i, k);
        const R term = m(0, j) * cofactor_determinant(minor);
        acc = (j % 2) ? acc - term : acc + term;
    }
    return acc;
}

struct GroupCase {
    int q;
    std::vector<int> orders;
    std::string name;
};

/* trivial, tame cyclic, tame non-cyclic and wild groups */
inline const std::vector<GroupCase>& group_matrix() {
    static const std::vector<GroupCase> cases = {
        {2, {}, "trivial_q2"},     {3, {2}, "Z2_q3"},         {3, {4}, "Z4_q3"},
        {3, {2, 2}, "Z2xZ2_q3"},   {2, {2}, "Z2_q2_wild"},    {3, {3}, "Z3_q3_wild"},
    };
    return cases;
}

inline const GroupRing* ring_of(const GroupCase& c) { return GroupRing::get(GF::prime(c.q), GroupSpec(c.orders)); }

}  // namespace tmod::testing

#endif
