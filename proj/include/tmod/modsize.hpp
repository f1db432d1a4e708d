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

#ifndef TMOD_MODSIZE_HPP
#define TMOD_MODSIZE_HPP

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "grpring.hpp"

namespace tmod {

/**
 * Finite F_q[G]-module given on an F_q-basis: matrices for t and for each
 * cyclic generator of G.
 */
struct FqGModule {
    const GroupRing* R = nullptr;
    FqMat t;
    std::vector<FqMat> gens;

    int dim() const { return t.rows(); }

    /* matrix of the group element with index g */
    FqMat action(int g) const {
        const std::vector<int> e = R->G.elem(g);
        FqMat m = FqMat::identity(dim(), Fq(R->F, 0));
        for (int i = 0; i < R->G.rank(); ++i) m = m * gens[i].pow(static_cast<unsigned>(e[i]));
        return m;
    }
};

/**
 * Finite A[G]-module that is free over F_q[G]: the t-action on a basis.
 */
struct FiniteModule {
    const GroupRing* R = nullptr;
    Matrix<GR> theta;

    int rank() const { return theta.rows(); }

    static FiniteModule zero(const GroupRing* R) { return {R, Matrix<GR>(0, 0, GR::zero(R))}; }

    friend FiniteModule direct_sum(const FiniteModule& a, const FiniteModule& b) { return {a.R, direct_sum(a.theta, b.theta)}; }
};

struct ModuleError : AlgebraError {
    using AlgebraError::AlgebraError;
};

/**
 * Converts to an F_q[G]-basis presentation. The basis is found greedily from
 * the standard vectors, then by seeded random restarts.
 */
inline FiniteModule make_free(const FqGModule& M, unsigned seed = 20260101u) {
    const GroupRing* R = M.R;
    const int n = R->n, D = M.dim();
    const Fq z(R->F, 0);
    if (D % n != 0) throw ModuleError("module dimension " + std::to_string(D) + " is not a multiple of |G| = " + std::to_string(n));
    const int r = D / n;
    if (r == 0) return FiniteModule::zero(R);
    std::vector<FqMat> act;
    for (int g = 0; g < n; ++g) act.push_back(M.action(g));

    auto orbit = [&](const FqVec& v) {
        std::vector<FqVec> o;
        for (int g = 0; g < n; ++g) o.push_back(act[g].apply(v));
        return o;
    };
    std::mt19937 rng(seed);
    std::vector<FqVec> gens;
    for (int attempt = 0; attempt < 400 && static_cast<int>(gens.size()) < r; ++attempt) {
        Subspace span(D, z);
        gens.clear();
        int tries = 0;
        while (static_cast<int>(gens.size()) < r && tries < 8 * D) {
            FqVec v(D, z);
            if (attempt == 0 && tries < D) v[tries] = z.one_like();
            else
                for (auto& x : v) x = Fq(R->F, static_cast<std::uint32_t>(rng() % R->F->q));
            ++tries;
            Subspace trial = span;
            int grew = 0;
            for (const auto& w : orbit(v)) grew += trial.insert(w);
            if (grew == n) {
                span = std::move(trial);
                gens.push_back(v);
            }
        }
    }
    if (static_cast<int>(gens.size()) < r) throw ModuleError("no free F_q[G]-basis found");

    FqMat B(D, D, z);
    for (int i = 0; i < r; ++i) {
        std::vector<FqVec> o = orbit(gens[i]);
        for (int g = 0; g < n; ++g)
            for (int k = 0; k < D; ++k) B(k, i * n + g) = o[g][k];
    }
    const auto Binv = inverse(B);
    if (!Binv) throw ModuleError("orbit vectors are dependent");
    Matrix<GR> theta(r, r, GR::zero(R));
    for (int j = 0; j < r; ++j) {
        const FqVec y = Binv->apply(M.t.apply(gens[j]));
        for (int i = 0; i < r; ++i) {
            GR e = GR::zero(R);
            for (int g = 0; g < n; ++g) e.c[g] = y[i * n + g];
            theta(i, j) = e;
        }
    }
    return {R, theta};
}

/* the G-size: det(t - theta) over F_q[G][t] */
inline GRPoly gsize(const FiniteModule& B) { return berkowitz_charpoly(B.theta); }

/**
 * Characteristic polynomial of t on each chi-eigenspace over the host field,
 * one per Galois class of characters. Needs p not dividing |G|.
 */
inline std::vector<Poly<Fq>> character_charpolys(const FqGModule& M) {
    const GroupRing* R = M.R;
    if (!R->tame()) throw ModuleError("character route needs p not dividing |G|");
    const GF* B = R->emb.big;
    const Fq zb(B, 0);
    const int D = M.dim(), n = R->n;
    std::vector<FqMat> act;
    for (int g = 0; g < n; ++g) act.push_back(M.action(g).map([&](const Fq& a) { return R->emb.up(a); }));
    const FqMat T = M.t.map([&](const Fq& a) { return R->emb.up(a); });
    std::vector<Poly<Fq>> out;
    for (const auto& cc : R->classes) {
        /* projector onto the chi-eigenspace */
        FqMat e(D, D, zb);
        for (int g = 0; g < n; ++g) e = e + cc.value[R->to_D[g]].inverse() * act[g];
        Subspace img(D, zb);
        for (int j = 0; j < D; ++j) {
            FqVec col(D, zb);
            for (int i = 0; i < D; ++i) col[i] = e(i, j);
            img.insert(col);
        }
        const int k = img.dim();
        /* coordinates on the echelon basis are read off at the pivots */
        const auto& bas = img.basis();
        const auto& piv = img.pivots();
        FqMat Tk(k, k, zb);
        for (int j = 0; j < k; ++j) {
            const FqVec w = T.apply(bas[j]);
            for (int i = 0; i < k; ++i) Tk(i, j) = w[piv[i]];
        }
        out.push_back(berkowitz_charpoly(Tk));
    }
    return out;
}

/* G-size assembled from the chi-components; works for modules that are not F_q[G]-free */
inline GRPoly gsize_by_characters(const FqGModule& M) {
    const GroupRing* R = M.R;
    std::vector<GRPoly> comps;
    for (const auto& cp : character_charpolys(M))
        comps.push_back(cp.map_coeffs([&](const Fq& a) { return GR::constant(R->local, a); }));
    return psi_inverse(R, comps);
}

/* d divides a in F[G][t]; every component of d must have a unit leading coefficient */
inline bool gr_divides(const GRPoly& d, const GRPoly& a) {
    if (d.is_zero()) return a.is_zero();
    if (a.is_zero()) return true;
    std::vector<GRPoly> dc = psi(d), ac = psi(a);
    for (std::size_t i = 0; i < dc.size(); ++i) {
        if (dc[i].is_zero()) throw ModuleError("divisor vanishes in a character component");
        const GR lead = dc[i].lead();
        if (!lead.is_unit()) throw ModuleError("divisor has a non-unit leading coefficient in a character component");
        if (!ac[i].divmod(dc[i], lead.inverse()).second.is_zero()) return false;
    }
    return true;
}

/**
 * Reads a series as an element of F[G][t] after normalizing it to its monic
 * part. Throws PrecisionError when the series is not known to u^1, and
 * returns nullopt when its fractional part is nonzero.
 */
inline std::optional<GRPoly> as_polynomial(const GRLaurent& x) {
    if (x.prec() < 1) throw PrecisionError("precision too low to read the value as a polynomial");
    for (int k = std::max(1, x.val()); k <= x.top(); ++k)
        if (!x.raw(k).is_zero()) return std::nullopt;
    return x.to_poly();
}

/* candidate in the Fitting ideal of B, which is generated by f_B */
inline bool fitting_contains(const GRLaurent& candidate, const GRPoly& f_B) {
    const auto p = as_polynomial(monic_part(candidate).plus);
    if (!p) return false;
    return gr_divides(f_B, *p);
}
inline bool fitting_contains(const GRLaurent& candidate, const FiniteModule& B) { return fitting_contains(candidate, gsize(B)); }

/**
 * A[G]-lattice in k_inf[G]^r given by r basis vectors in common coordinates.
 */
struct LatticeBasis {
    const GroupRing* R = nullptr;
    std::vector<std::vector<GRLaurent>> vectors;
    bool free = true;

    int rank() const { return static_cast<int>(vectors.size()); }
    Matrix<GRLaurent> matrix() const {
        const int r = rank();
        Matrix<GRLaurent> m(r, r, GRLaurent(GR::zero(R)));
        for (int j = 0; j < r; ++j)
            for (int i = 0; i < r; ++i) m(i, j) = vectors[j][i];
        return m;
    }
};

/**
 * [L1 : L2]_G = det(X)^+ where X expresses the basis of L2 in that of L1,
 * computed as det(B2) / det(B1) and normalized to its monic part.
 */
inline GRLaurent lattice_index(const LatticeBasis& L1, const LatticeBasis& L2, int prec) {
    if (L1.rank() != L2.rank()) throw ModuleError("lattices of different rank");
    if (!L1.free || !L2.free) throw ModuleError("lattice index needs A[G]-free lattices");
    const GRLaurent d1 = determinant(L1.matrix()), d2 = determinant(L2.matrix());
    GRLaurent x;
    try {
        x = d2 * gr_inverse(d1, prec + std::max(0, -d1.valuation()));
    } catch (const LaurentInverseError& e) {
        throw ModuleError(std::string("singular change of basis: ") + e.what());
    }
    return monic_part(x.truncate(prec)).plus;
}

/* class components over the host field, assembled into F[G]((u)) */
inline GRLaurent assemble_components(const GroupRing* R, const std::vector<KLaurent>& comps) {
    std::vector<GRLaurent> c;
    for (const auto& x : comps) c.push_back(x.map([&](const Fq& a) { return GR::constant(R->local, a); }));
    return psi_inverse(R, c);
}

}  // namespace tmod

#endif
