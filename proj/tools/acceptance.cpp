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

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "support.hpp"

namespace {

using namespace tmod;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (ok) return;
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

/* runs one check, adds its runtime to the note, fails it past the limit */
void timed(Outcome& o, const std::string& label, double limit_s, const std::function<bool()>& body) {
    const auto t0 = Clock::now();
    bool ok = false;
    std::string error;
    try {
        ok = body();
    } catch (const std::exception& e) {
        error = e.what();
    }
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    std::ostringstream note;
    note << label << " " << std::fixed << std::setprecision(2) << s << "s";
    if (!error.empty()) note << " threw: " << error;
    else if (!ok) note << " mismatch";
    if (s > limit_s) note << " over " << limit_s << "s";
    const bool good = ok && error.empty() && s <= limit_s;
    o.require(good, note.str());
    if (good) o.detail += (o.detail.empty() ? "" : ", ") + note.str();
}

const GF* F2() { return GF::prime(2); }
const GF* F3() { return GF::prime(3); }

KLaurent frozen(const GF* F, const std::vector<int>& c, int prec) {
    std::vector<Fq> v;
    for (int x : c) v.push_back(Fq::from_int(F, x));
    return KLaurent(Fq(F, 0), 0, v, prec);
}

Outcome criterion1() {
    Outcome o;
    for (const GF* F : {F2(), F3()}) {
        timed(o, "q=" + std::to_string(F->q), 5.0, [&] {
            const ThetaValue th = theta0(make_carlitz(F), trivial_extension(F), full_taming(F), 4);
            const GroupRing* T = GroupRing::get(F, GroupSpec());
            const KLaurent oracle = carlitz_zeta_oracle(F, 4);
            const KLaurent expect = F->q == 2 ? frozen(F, {1, 0, 1, 1, 1}, 5) : frozen(F, {1, 0, 0, 2, 0}, 5);
            return first_difference(th.value, to_group(T, oracle), 5) < 0 && agrees(oracle, expect, 5);
        });
    }
    return o;
}

Outcome criterion2() {
    Outcome o;
    struct Case {
        std::string name;
        TModuleSpec E;
        ExtensionData X;
        int N;
    };
    const std::vector<Case> cases = {{"carlitz q=2 N=5", make_carlitz(F2()), trivial_extension(F2()), 5},
                                     {"rank2 q=2 N=3", make_drinfeld(F2(), {a_const(F2(), 1), a_const(F2(), 1)}), trivial_extension(F2()), 3},
                                     {"C^2 q=2 N=3", carlitz_tensor(F2(), 2), trivial_extension(F2()), 3},
                                     {"carlitz k(lambda_t) q=3 N=3", make_carlitz(F3()), carlitz_cyclotomic(F3(), a_t(F3())), 3}};
    for (const auto& c : cases) timed(o, c.name, 120.0, [&] { return trace_check(c.E, c.X, full_taming(c.E.F), c.N).pass(); });
    return o;
}

Outcome criterion3() {
    Outcome o;
    timed(o, "carlitz trivial q=2 N=4", 300.0, [&] {
        const EtnfReport r = etnf_check(make_carlitz(F2()), trivial_extension(F2()), full_taming(F2()), 4);
        return r.pass() && r.H.dim() == 0;
    });
    timed(o, "carlitz k(lambda_t) q=3 N=3", 300.0,
          [&] { return etnf_check(make_carlitz(F3()), carlitz_cyclotomic(F3(), a_t(F3())), full_taming(F3()), 3).pass(); });
    return o;
}

Outcome criterion4() {
    Outcome o;
    auto gamma = [](const GF* F, const std::vector<std::vector<long long>>& D, const std::string& name) {
        std::vector<APoly> c;
        for (const auto& x : D) c.push_back(a_from(F, x));
        return make_gamma(F, 1, c, name);
    };
    struct Case {
        GammaMap g;
        ExtensionData X;
    };
    const std::vector<Case> cases = {{gamma(F2(), {{1}}, "z+z^2"), trivial_extension(F2())},
                                     {gamma(F2(), {{1}, {1, 0, 1}}, "z+z^2+(t^2+1)z^4"), trivial_extension(F2())},
                                     {gamma(F3(), {{0, 1}}, "z+tz^3"), trivial_extension(F3())},
                                     {gamma(F3(), {{1}}, "z+z^3 over k(lambda_t)"), carlitz_cyclotomic(F3(), a_t(F3()))}};
    for (const auto& c : cases) {
        timed(o, c.g.name, 300.0, [&] {
            const VolumeReport r = volume_formula_check(c.g, c.X, full_taming(c.X.F), 3);
            /* a vacuous operator would pass trivially */
            const Matrix<GRLaurent> A = gamma_operator(c.g, c.X, full_taming(c.X.F), 3, r.nucleus);
            return r.pass() && !(A == Matrix<GRLaurent>::identity(A.rows(), A(0, 0).zero_like()));
        });
    }
    for (const TModuleSpec& E : {make_carlitz(F2()), make_drinfeld(F2(), {a_from(F2(), {0, 0, 0, 1})})})
        timed(o, "exp-induced " + E.name, 300.0, [&] { return exp_volume_check(E, trivial_extension(F2()), full_taming(F2()), 3).pass(); });
    return o;
}

Outcome criterion5() {
    Outcome o;
    timed(o, "BS carlitz trivial q=2 N=4", 300.0,
          [&] { return brumer_stark_check(make_carlitz(F2()), trivial_extension(F2()), full_taming(F2()), 4).pass(); });
    timed(o, "BS carlitz k(lambda_t) q=3 N=3", 300.0,
          [&] { return brumer_stark_check(make_carlitz(F3()), carlitz_cyclotomic(F3(), a_t(F3())), full_taming(F3()), 3).pass(); });
    timed(o, "CS carlitz m=1 q=2 N=3", 300.0, [&] { return coates_sinnott_check(make_carlitz(F2()), trivial_extension(F2()), {}, 1, 3).pass(); });
    return o;
}

/* E(m) at v against the Carlitz factor with P replaced by P^(m+1) */
Outcome criterion6() {
    Outcome o;
    const GF* F = F2();
    const ExtensionData X = trivial_extension(F);
    const TModuleSpec C = make_carlitz(F);
    const int N = 6;
    for (int m = 1; m <= 2; ++m) {
        timed(o, "m=" + std::to_string(m), 60.0, [&] {
            const TModuleSpec Em = drinfeld_twist(C, m);
            int primes = 0;
            for (int d = 1; d <= 2; ++d)
                for (const APoly& P : enumerate_monic_irreducibles(F, d)) {
                    const APoly Pm = P.pow(static_cast<unsigned>(m + 1));
                    const GRPoly lie = to_group(X.R, Pm), e = to_group(X.R, Pm - a_const(F, 1));
                    const EulerFactor f = euler_factor(Em, X, full_taming(F), {P}, N);
                    if (!(f.lie == lie) || !(f.e == e)) return false;
                    if (first_difference(f.ratio, monic_ratio(lie, e, N), N + 1) >= 0) return false;
                    ++primes;
                }
            return primes == 3;
        });
    }
    return o;
}

bool field_axioms() {
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61})
        for (int r = 1, q = p; q <= 64; ++r, q *= p) {
            const GF* F = GF::standard(p, r);
            for (int a = 0; a < q; ++a) {
                const Fq x(F, a);
                if (a && !(x * x.inverse()).is_one()) return false;
                if (!(x.pow(F->q) == x)) return false;
                for (int b = 0; b < q; ++b) {
                    const Fq y(F, b);
                    if (!(x + y == y + x) || !(x * y == y * x)) return false;
                    if (a && b && (x * y).is_zero()) return false;
                    for (int c = 0; c < q; ++c) {
                        const Fq z(F, c);
                        if (!((x + y) + z == x + (y + z)) || !((x * y) * z == x * (y * z)) || !(x * (y + z) == x * y + x * z)) return false;
                    }
                }
            }
        }
    return true;
}

bool monic_round_trip() {
    std::mt19937 rng(29);
    int ok = 0;
    for (const auto& gc : testing::group_matrix()) {
        const GroupRing* R = testing::ring_of(gc);
        int here = 0;
        for (int s = 0; s < 400 && here < 100; ++s) {
            const GRLaurent x = testing::random_series(R, -static_cast<int>(rng() % 3), 12, 10, rng);
            MonicSplit sp;
            try {
                sp = monic_part(x);
            } catch (const LaurentInverseError&) {
                continue;
            } catch (const PrecisionError&) {
                continue;
            }
            if (sp.plus.prec() < sp.plus.valuation() + 2) continue;
            if (!agrees(sp.plus * GRLaurent::from_poly(sp.unit), x) || !is_monic(sp.plus)) return false;
            if (!(sp.unit * poly_unit_inverse(sp.unit) == GRPoly::constant(GR::one(R)))) return false;
            if (!agrees(monic_part(sp.plus).plus, sp.plus)) return false;
            ++here;
        }
        ok += here;
    }
    return ok >= 500;
}

bool psi_isomorphism() {
    std::mt19937 rng(17);
    for (const auto& gc : testing::group_matrix()) {
        const GroupRing* R = testing::ring_of(gc);
        for (int s = 0; s < 200; ++s) {
            const GR x = testing::random_gr(R, rng), y = testing::random_gr(R, rng);
            const auto px = psi(x), py = psi(y), pxy = psi(x * y), ps = psi(x + y);
            for (std::size_t c = 0; c < px.size(); ++c)
                if (!(pxy[c] == px[c] * py[c]) || !(ps[c] == px[c] + py[c])) return false;
            if (!(psi_inverse(R, px) == x)) return false;
        }
    }
    return true;
}

/* B = F_q[G]^r with t acting by theta, written F_q-linearly */
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

bool gsize_properties() {
    std::mt19937 rng(5);
    for (const auto& gc : testing::group_matrix()) {
        const GroupRing* R = testing::ring_of(gc);
        for (int s = 0; s < 20; ++s) {
            auto random_free = [&](int r) {
                Matrix<GR> th(r, r, GR::zero(R));
                for (int i = 0; i < r; ++i)
                    for (int j = 0; j < r; ++j) th(i, j) = testing::random_gr(R, rng);
                return FiniteModule{R, th};
            };
            const FiniteModule a = random_free(1 + static_cast<int>(rng() % 3)), b = random_free(1 + static_cast<int>(rng() % 3));
            if (!(gsize(direct_sum(a, b)) == gsize(a) * gsize(b))) return false;
            if (R->tame() && !(gsize_by_characters(expand(a)) == gsize(a))) return false;
        }
    }
    return true;
}

bool nuclear_properties() {
    const ExtensionData X2 = trivial_extension(F2()), X3 = carlitz_cyclotomic(F3(), a_t(F3()));
    const TModuleSpec C2 = make_carlitz(F2()), D2 = make_drinfeld(F2(), {a_const(F2(), 1), a_const(F2(), 1)}), C3 = make_carlitz(F3());
    for (const auto& [E, X] : std::vector<std::pair<TModuleSpec, const ExtensionData*>>{{C2, &X2}, {D2, &X2}, {C3, &X3}}) {
        const TamingModule M = full_taming(E.F);
        const int i = nucleus_index(E, *X, M, 3);
        const GRLaurent d = nuclear_determinant(E, *X, M, 3, i);
        for (int k = 1; k <= 2; ++k)
            if (first_difference(d, nuclear_determinant(E, *X, M, 3, i + k), 4) >= 0) return false;
    }
    const int i = std::max(nucleus_index(C2, X2, full_taming(F2()), 3), nucleus_index(D2, X2, full_taming(F2()), 3));
    const Matrix<GRLaurent> A = nuclear_operator(C2, X2, full_taming(F2()), 3, i), B = nuclear_operator(D2, X2, full_taming(F2()), 3, i);
    const GRLaurent dAB = determinant(A) * determinant(B);
    return first_difference(determinant(A * B), dAB, 4) < 0 && first_difference(determinant(direct_sum(A, B)), dAB, 4) < 0;
}

bool exp_residuals() {
    const GF* F4 = GF::get(2, {1, 1, 1});
    const TModuleSpec R2 = make_drinfeld(F2(), {a_const(F2(), 1), a_const(F2(), 1)});
    const std::vector<TModuleSpec> mods = {make_carlitz(F2()),
                                           make_carlitz(F3()),
                                           make_carlitz(F4),
                                           R2,
                                           make_drinfeld(F2(), {a_from(F2(), {0, 0, 0, 1})}),
                                           carlitz_tensor(F2(), 2),
                                           carlitz_tensor(F3(), 2),
                                           drinfeld_twist(make_carlitz(F2()), 1),
                                           drinfeld_twist(make_carlitz(F2()), 2),
                                           drinfeld_twist(R2, 1)};
    /* tau-degrees 0..3 reach z^(q^3) */
    for (const auto& E : mods)
        if (exp_residual(E, exp_coeffs(E, 4)) != -1) return false;
    return true;
}

Outcome criterion7() {
    Outcome o;
    const auto t0 = Clock::now();
    timed(o, "field axioms q<=64", 600.0, field_axioms);
    timed(o, "monic_part >=500", 600.0, monic_round_trip);
    timed(o, "psi", 600.0, psi_isomorphism);
    timed(o, "gsize", 600.0, gsize_properties);
    timed(o, "nuclear", 600.0, nuclear_properties);
    timed(o, "exp residual", 600.0, exp_residuals);
    const double total = std::chrono::duration<double>(Clock::now() - t0).count();
    o.require(total <= 600.0, "suite over 600s");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"Carlitz zeta truncation", criterion1},
        {"trace formula", criterion2},
        {"ETNF, p not dividing |G|", criterion3},
        {"volume formula", criterion4},
        {"Brumer-Stark and Coates-Sinnott", criterion5},
        {"twist law", criterion6},
        {"property suites", criterion7},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const Outcome o = criteria[k].second();
        failed += !o.pass;
        std::cout << "criterion " << k + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[k].first << "  [" << o.detail << "]" << std::endl;
    }
    return failed ? 1 : 0;
}
