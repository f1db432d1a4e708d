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

#ifndef TMOD_GRPRING_HPP
#define TMOD_GRPRING_HPP

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "apoly.hpp"
#include "matrix.hpp"

namespace tmod {

/**
 * Finite abelian group Z/n1 x ... x Z/nk. Elements are exponent vectors,
 * indexed in mixed radix with the first coordinate most significant, so
 * index order is lexicographic order.
 */
struct GroupSpec {
    std::vector<int> orders;

    GroupSpec() = default;
    explicit GroupSpec(std::vector<int> o) : orders(std::move(o)) {
        for (int n : orders)
            if (n < 1) throw AlgebraError("cyclic order must be positive");
    }

    int size() const {
        int s = 1;
        for (int n : orders) s *= n;
        return s;
    }
    int rank() const { return static_cast<int>(orders.size()); }
    bool trivial() const { return size() == 1; }

    std::vector<int> elem(int idx) const {
        std::vector<int> e(orders.size(), 0);
        for (int i = rank() - 1; i >= 0; --i) {
            e[i] = idx % orders[i];
            idx /= orders[i];
        }
        return e;
    }
    int index(const std::vector<int>& e) const {
        int idx = 0;
        for (int i = 0; i < rank(); ++i) idx = idx * orders[i] + ((e[i] % orders[i]) + orders[i]) % orders[i];
        return idx;
    }
    int mul(int a, int b) const {
        std::vector<int> x = elem(a), y = elem(b);
        for (int i = 0; i < rank(); ++i) x[i] += y[i];
        return index(x);
    }
    int inv(int a) const {
        std::vector<int> x = elem(a);
        for (auto& v : x) v = -v;
        return index(x);
    }
    /* order of the element with this index */
    int order_of(int a) const {
        std::vector<int> x = elem(a);
        int o = 1;
        for (int i = 0; i < rank(); ++i) o = std::lcm(o, orders[i] / std::gcd(orders[i], x[i]));
        return o;
    }
    std::string elem_str(int idx) const {
        std::vector<int> e = elem(idx);
        std::string s = "g(";
        for (int i = 0; i < rank(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
        return s + ")";
    }
    std::string str() const {
        if (orders.empty()) return "1";
        std::string s;
        for (int i = 0; i < rank(); ++i) s += (i ? " x " : "") + std::string("Z/") + std::to_string(orders[i]);
        return s;
    }
    friend bool operator==(const GroupSpec& a, const GroupSpec& b) { return a.orders == b.orders; }
    friend bool operator<(const GroupSpec& a, const GroupSpec& b) { return a.orders < b.orders; }
};

class GroupRing;

/**
 * Element of F[G], a dense coefficient vector over the group index.
 * A context-free element represents the scalar 0 or 1.
 */
struct GR {
    const GroupRing* R = nullptr;
    std::vector<Fq> c;
    int scalar = 0;  // value when R is null

    GR() = default;
    GR(const GroupRing* ring, std::vector<Fq> coeffs) : R(ring), c(std::move(coeffs)) {}

    static GR zero(const GroupRing* ring);
    static GR one(const GroupRing* ring);
    static GR constant(const GroupRing* ring, const Fq& a);
    static GR basis(const GroupRing* ring, int g);

    GR zero_like() const;
    GR one_like() const;
    bool is_zero() const;
    bool is_one() const;
    bool is_unit() const;
    GR inverse() const;
    /* sum of coefficients */
    Fq augmentation() const;
    Fq operator[](int g) const;

    friend GR operator+(const GR& a, const GR& b);
    friend GR operator-(const GR& a, const GR& b);
    GR operator-() const;
    friend GR operator*(const GR& a, const GR& b);
    friend bool operator==(const GR& a, const GR& b);
    friend bool operator!=(const GR& a, const GR& b) { return !(a == b); }
    friend bool operator<(const GR& a, const GR& b);
    GR& operator+=(const GR& b) { return *this = *this + b; }
    GR& operator-=(const GR& b) { return *this = *this - b; }
    GR& operator*=(const GR& b) { return *this = *this * b; }
    GR pow(unsigned e) const;
    /* coefficientwise Frobenius a -> a^e on the coefficient field */
    GR frob(unsigned long long e) const;

    std::string str() const;
};

inline const GR& pick_ctx(const GR& a, const GR& b) { return a.R ? a : b; }

/**
 * Group ring context F[G] with its Sylow splitting G = P x Delta and the
 * Galois classes of characters of Delta. Contexts are interned and live for
 * the whole program.
 */
class GroupRing {
public:
    struct CharClass {
        std::vector<int> k;            // exponents of the representative character
        std::vector<int> orbit;        // character indices k, qk, q^2 k, ...
        int m = 1;                     // degree of the value field over F
        std::vector<Fq> value;         // value[d] = chi(delta_d) in the host field
    };

    const GF* F = nullptr;
    GroupSpec G;
    GroupSpec P;      // p-part
    GroupSpec Delta;  // prime-to-p part
    int n = 1;
    std::vector<int> table;  // product table n x n
    std::vector<int> to_P, to_D;
    std::vector<std::vector<int>> from_PD;  // [p][d] -> g
    int host_degree = 1;                    // m = order of q modulo exp(Delta)
    FieldEmbedding emb;
    std::vector<CharClass> classes;
    const GroupRing* local = nullptr;  // host[P], the ring of every component

    static const GroupRing* get(const GF* F, const GroupSpec& G) {
        static std::mutex mtx;
        static std::map<std::pair<const GF*, GroupSpec>, std::unique_ptr<GroupRing>> cache;
        GroupRing* r = nullptr;
        {
            std::lock_guard<std::mutex> lock(mtx);
            auto& slot = cache[{F, G}];
            if (slot) return slot.get();
            slot.reset(new GroupRing());
            r = slot.get();
            r->F = F;
            r->G = G;
            r->build_tables();
        }
        /* the local ring is built outside the lock (recursive get) */
        if (r->Delta.trivial() && r->host_degree == 1) r->local = r;
        else r->local = get(r->emb.big, r->P);
        return r;
    }

    bool tame() const { return P.trivial(); }
    int num_classes() const { return static_cast<int>(classes.size()); }
    int delta_size() const { return Delta.size(); }

    /* all characters of Delta, indexed like Delta elements */
    Fq char_value(int chi, int d) const {
        const std::vector<int> k = Delta.elem(chi), e = Delta.elem(d);
        const GF* B = emb.big;
        const std::uint64_t Q1 = B->q - 1;
        std::uint64_t s = 0;
        for (int i = 0; i < Delta.rank(); ++i)
            s += static_cast<std::uint64_t>(k[i]) * e[i] % Delta.orders[i] * (Q1 / Delta.orders[i]);
        return Fq(B, B->exp_at(static_cast<std::uint32_t>(s % Q1)));
    }

    std::string str() const { return "F_" + std::to_string(F->q) + "[" + G.str() + "]"; }

private:
    GroupRing() = default;

    void build_tables() {
        n = G.size();
        table.assign(static_cast<std::size_t>(n) * n, 0);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a) * n + b] = G.mul(a, b);
        /* Sylow split per cyclic factor */
        const int p = F->p;
        std::vector<int> pp, dd;
        std::vector<int> pf(G.rank()), df(G.rank());
        for (int i = 0; i < G.rank(); ++i) {
            int ni = G.orders[i], a = 1;
            while (ni % p == 0) {
                ni /= p;
                a *= p;
            }
            pf[i] = a;
            df[i] = ni;
            if (a > 1) pp.push_back(a);
            if (ni > 1) dd.push_back(ni);
        }
        P = GroupSpec(pp);
        Delta = GroupSpec(dd);
        to_P.assign(n, 0);
        to_D.assign(n, 0);
        from_PD.assign(P.size(), std::vector<int>(Delta.size(), -1));
        for (int g = 0; g < n; ++g) {
            std::vector<int> e = G.elem(g), ep, ed;
            for (int i = 0; i < G.rank(); ++i) {
                if (pf[i] > 1) ep.push_back(e[i] % pf[i]);
                if (df[i] > 1) ed.push_back(e[i] % df[i]);
            }
            to_P[g] = P.index(ep);
            to_D[g] = Delta.index(ed);
            from_PD[to_P[g]][to_D[g]] = g;
        }
        /* host field for character values */
        int ex = 1;
        for (int d : Delta.orders) ex = std::lcm(ex, d);
        host_degree = 1;
        if (ex > 1) {
            std::uint64_t qq = F->q % ex;
            while (qq != 1) {
                qq = qq * F->q % ex;
                ++host_degree;
            }
        }
        emb = FieldEmbedding::make(F, host_degree);
        /* Galois classes, smallest representative first */
        const int nd = Delta.size();
        std::vector<bool> seen(nd, false);
        for (int chi = 0; chi < nd; ++chi) {
            if (seen[chi]) continue;
            CharClass cc;
            cc.k = Delta.elem(chi);
            int cur = chi;
            while (!seen[cur]) {
                seen[cur] = true;
                cc.orbit.push_back(cur);
                std::vector<int> k = Delta.elem(cur);
                for (int i = 0; i < Delta.rank(); ++i) k[i] = static_cast<int>(static_cast<long long>(k[i]) * F->q % Delta.orders[i]);
                cur = Delta.index(k);
            }
            cc.m = static_cast<int>(cc.orbit.size());
            cc.value.resize(nd);
            for (int d = 0; d < nd; ++d) cc.value[d] = char_value(chi, d);
            classes.push_back(std::move(cc));
        }
    }
};

/* ---------- GR implementation ---------- */

inline GR GR::zero(const GroupRing* ring) { return GR(ring, std::vector<Fq>(ring->n, Fq(ring->F, 0))); }
inline GR GR::one(const GroupRing* ring) {
    GR r = zero(ring);
    r.c[0] = Fq(ring->F, 1);
    return r;
}
inline GR GR::constant(const GroupRing* ring, const Fq& a) {
    GR r = zero(ring);
    r.c[0] = a;
    return r;
}
inline GR GR::basis(const GroupRing* ring, int g) {
    GR r = zero(ring);
    r.c[g] = Fq(ring->F, 1);
    return r;
}

inline GR GR::zero_like() const {
    if (!R) return GR();
    return zero(R);
}
inline GR GR::one_like() const {
    if (!R) {
        GR r;
        r.scalar = 1;
        return r;
    }
    return one(R);
}
inline bool GR::is_zero() const {
    if (!R) return scalar == 0;
    for (const auto& x : c)
        if (!x.is_zero()) return false;
    return true;
}
inline bool GR::is_one() const { return *this == one_like(); }
inline Fq GR::operator[](int g) const {
    if (!R) return Fq(nullptr, g == 0 ? static_cast<std::uint32_t>(scalar) : 0);
    return c[g];
}
inline Fq GR::augmentation() const {
    if (!R) return Fq(nullptr, static_cast<std::uint32_t>(scalar));
    Fq s(R->F, 0);
    for (const auto& x : c) s = s + x;
    return s;
}

namespace detail {
/* promote a context-free scalar to the ring of a partner */
inline GR promote(const GR& a, const GroupRing* R) {
    if (a.R || !R) return a;
    return a.scalar ? GR::one(R) : GR::zero(R);
}
}  // namespace detail

inline GR operator+(const GR& a0, const GR& b0) {
    const GroupRing* R = a0.R ? a0.R : b0.R;
    if (!R) {
        if (a0.scalar + b0.scalar > 1) throw AlgebraError("context-free group ring arithmetic");
        GR r;
        r.scalar = a0.scalar + b0.scalar;
        return r;
    }
    const GR a = detail::promote(a0, R), b = detail::promote(b0, R);
    GR r(R, a.c);
    for (int i = 0; i < R->n; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}
inline GR operator-(const GR& a0, const GR& b0) {
    const GroupRing* R = a0.R ? a0.R : b0.R;
    if (!R) {
        if (a0.scalar < b0.scalar) throw AlgebraError("context-free group ring arithmetic");
        GR r;
        r.scalar = a0.scalar - b0.scalar;
        return r;
    }
    const GR a = detail::promote(a0, R), b = detail::promote(b0, R);
    GR r(R, a.c);
    for (int i = 0; i < R->n; ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
}
inline GR GR::operator-() const {
    if (!R) {
        if (scalar) throw AlgebraError("context-free group ring arithmetic");
        return *this;
    }
    GR r = *this;
    for (auto& x : r.c) x = -x;
    return r;
}
inline GR operator*(const GR& a0, const GR& b0) {
    const GroupRing* R = a0.R ? a0.R : b0.R;
    if (!R) {
        GR r;
        r.scalar = a0.scalar * b0.scalar;
        return r;
    }
    const GR a = detail::promote(a0, R), b = detail::promote(b0, R);
    GR r = GR::zero(R);
    const int n = R->n;
    for (int i = 0; i < n; ++i) {
        if (a.c[i].is_zero()) continue;
        const int* row = &R->table[static_cast<std::size_t>(i) * n];
        for (int j = 0; j < n; ++j) {
            if (b.c[j].is_zero()) continue;
            r.c[row[j]] = r.c[row[j]] + a.c[i] * b.c[j];
        }
    }
    return r;
}
inline bool operator==(const GR& a0, const GR& b0) {
    const GroupRing* R = a0.R ? a0.R : b0.R;
    if (!R) return a0.scalar == b0.scalar;
    const GR a = detail::promote(a0, R), b = detail::promote(b0, R);
    for (int i = 0; i < R->n; ++i)
        if (a.c[i] != b.c[i]) return false;
    return true;
}
inline bool operator<(const GR& a0, const GR& b0) {
    const GroupRing* R = a0.R ? a0.R : b0.R;
    if (!R) return a0.scalar < b0.scalar;
    const GR a = detail::promote(a0, R), b = detail::promote(b0, R);
    return std::lexicographical_compare(a.c.begin(), a.c.end(), b.c.begin(), b.c.end());
}
inline GR GR::pow(unsigned e) const {
    GR r = one_like(), b = *this;
    while (e) {
        if (e & 1u) r = r * b;
        b = b * b;
        e >>= 1u;
    }
    return r;
}
inline GR GR::frob(unsigned long long e) const {
    if (!R) return *this;
    GR r = *this;
    for (auto& x : r.c) x = x.pow(e);
    return r;
}

/* components psi_chi(x) in host[P], one per character class */
inline std::vector<GR> psi(const GR& x0) {
    const GroupRing* R = x0.R;
    if (!R) throw AlgebraError("character decomposition needs a group ring context");
    std::vector<GR> out;
    const GroupRing* L = R->local;
    for (const auto& cc : R->classes) {
        GR y = GR::zero(L);
        for (int g = 0; g < R->n; ++g) {
            if (x0.c[g].is_zero()) continue;
            y.c[R->to_P[g]] = y.c[R->to_P[g]] + R->emb.up(x0.c[g]) * cc.value[R->to_D[g]];
        }
        out.push_back(std::move(y));
    }
    return out;
}

/* reconstruction from the class components via the Frobenius conjugates */
inline GR psi_inverse(const GroupRing* R, const std::vector<GR>& comps) {
    if (static_cast<int>(comps.size()) != R->num_classes()) throw AlgebraError("wrong number of character components");
    const GroupRing* L = R->local;
    const GF* B = R->emb.big;
    const int nd = R->delta_size(), np = R->P.size();
    std::vector<std::vector<Fq>> acc(np, std::vector<Fq>(nd, Fq(B, 0)));
    for (int ci = 0; ci < R->num_classes(); ++ci) {
        const auto& cc = R->classes[ci];
        const GR comp = detail::promote(comps[ci], L);
        unsigned long long e = 1;
        for (int j = 0; j < cc.m; ++j) {
            const int chi = cc.orbit[j];
            for (int pi = 0; pi < np; ++pi) {
                const Fq cv = comp.c[pi].pow(e);
                if (cv.is_zero()) continue;
                for (int d = 0; d < nd; ++d) acc[pi][d] = acc[pi][d] + cv * R->char_value(chi, d).inverse();
            }
            e *= R->F->q;
        }
    }
    const Fq ninv = Fq::from_int(B, nd).inverse();
    GR x = GR::zero(R);
    for (int pi = 0; pi < np; ++pi)
        for (int d = 0; d < nd; ++d) x.c[R->from_PD[pi][d]] = R->emb.down(acc[pi][d] * ninv);
    return x;
}

inline bool GR::is_unit() const {
    if (!R) return scalar != 0;
    for (const auto& cc : R->classes) {
        Fq s(R->emb.big, 0);
        for (int g = 0; g < R->n; ++g)
            if (!c[g].is_zero()) s = s + R->emb.up(c[g]) * cc.value[R->to_D[g]];
        if (s.is_zero()) return false;
    }
    return true;
}

inline GR GR::inverse() const {
    if (!R) {
        if (!scalar) throw AlgebraError("inverse of zero");
        return *this;
    }
    /* solve x * y = 1 as a linear system over F */
    const int n = R->n;
    FqMat m(n, n, Fq(R->F, 0));
    for (int h = 0; h < n; ++h) {
        const GR col = *this * basis(R, h);
        for (int g = 0; g < n; ++g) m(g, h) = col.c[g];
    }
    auto mi = tmod::inverse(m);
    if (!mi) throw AlgebraError("group ring element is not a unit");
    GR y = zero(R);
    for (int g = 0; g < n; ++g) y.c[g] = (*mi)(g, 0);
    return y;
}

inline std::string GR::str() const {
    if (!R) return std::to_string(scalar);
    bool only_id = true;
    for (int g = 1; g < R->n; ++g)
        if (!c[g].is_zero()) only_id = false;
    if (only_id) return c[0].str();
    std::string s;
    for (int g = 0; g < R->n; ++g) {
        if (c[g].is_zero()) continue;
        if (!s.empty()) s += " + ";
        std::string cs = c[g].str();
        if (c[g].is_one()) s += R->G.elem_str(g);
        else s += (c[g].compound() ? "(" + cs + ")" : cs) + "*" + R->G.elem_str(g);
    }
    return s;
}

/* ---------- series over F[G] and the monic decomposition ---------- */

using GRLaurent = Laurent<GR>;
using GRPoly = Poly<GR>;

inline std::vector<GRLaurent> psi(const GRLaurent& x) {
    const GroupRing* R = x.zero().R;
    if (!R) throw AlgebraError("character decomposition needs a group ring context");
    std::vector<GRLaurent> out;
    for (int ci = 0; ci < R->num_classes(); ++ci) out.emplace_back(GR::zero(R->local), x.prec());
    for (int k = x.val(); k <= x.top(); ++k) {
        const GR xk = x.raw(k);
        if (xk.is_zero()) continue;
        std::vector<GR> comp = psi(xk);
        for (int ci = 0; ci < R->num_classes(); ++ci) out[ci] += GRLaurent::monomial(comp[ci], k, x.prec());
    }
    return out;
}

inline GRLaurent psi_inverse(const GroupRing* R, const std::vector<GRLaurent>& comps) {
    int prec = GRLaurent::kExact, lo = 0, hi = -1;
    bool any = false;
    for (const auto& c : comps) {
        prec = std::min(prec, c.prec());
        if (c.is_zero()) continue;
        lo = any ? std::min(lo, c.val()) : c.val();
        hi = any ? std::max(hi, c.top()) : c.top();
        any = true;
    }
    if (prec < GRLaurent::kExact) hi = std::min(hi, prec - 1);
    std::vector<GR> coeffs;
    for (int k = lo; k <= hi; ++k) {
        std::vector<GR> ck;
        for (const auto& c : comps) ck.push_back(c.raw(k));
        coeffs.push_back(psi_inverse(R, ck));
    }
    return GRLaurent(GR::zero(R), lo, std::move(coeffs), prec);
}

inline std::vector<GRPoly> psi(const GRPoly& f) {
    const GroupRing* R = f.zero().R;
    std::vector<GRPoly> out(R->num_classes(), GRPoly(GR::zero(R->local)));
    for (int k = 0; k <= f.degree(); ++k) {
        std::vector<GR> comp = psi(f[k]);
        for (int ci = 0; ci < R->num_classes(); ++ci) out[ci].set(k, comp[ci]);
    }
    return out;
}

inline GRPoly psi_inverse(const GroupRing* R, const std::vector<GRPoly>& comps) {
    int deg = -1;
    for (const auto& c : comps) deg = std::max(deg, c.degree());
    GRPoly r(GR::zero(R));
    for (int k = 0; k <= deg; ++k) {
        std::vector<GR> ck;
        for (const auto& c : comps) ck.push_back(c[k]);
        r.set(k, psi_inverse(R, ck));
    }
    return r;
}

/* inverse of a polynomial unit over a local ring: unit constant term, nilpotent rest */
inline GRPoly local_poly_unit_inverse(const GRPoly& f) {
    const GR a0 = f[0];
    if (!a0.is_unit()) throw AlgebraError("polynomial is not a unit: constant term is not invertible");
    const GR ai = a0.inverse();
    const GRPoly w = GRPoly::constant(-ai) * (f - GRPoly::constant(a0));
    GRPoly term = GRPoly::constant(ai), sum = term;
    for (int j = 0; j < 256; ++j) {
        term = term * w;
        if (term.is_zero()) return sum;
        sum = sum + term;
    }
    throw AlgebraError("polynomial is not a unit: higher coefficients are not nilpotent");
}

/* inverse of a unit of F[G][t] */
inline GRPoly poly_unit_inverse(const GRPoly& f) {
    const GroupRing* R = f.zero().R;
    std::vector<GRPoly> comps = psi(f);
    for (auto& c : comps) c = local_poly_unit_inverse(c);
    return psi_inverse(R, comps);
}

struct MonicSplit {
    GRLaurent plus;
    GRPoly unit;
};

namespace detail {

struct LocalSplit {
    GRLaurent plus;
    GRPoly unit;
};

/* one component over the local ring host[P] */
inline LocalSplit local_monic_split(const GRLaurent& c) {
    int e0 = 0;
    bool found = false;
    for (int k = c.val(); k <= c.top(); ++k)
        if (c.raw(k).is_unit()) {
            e0 = k;
            found = true;
            break;
        }
    if (!found) {
        if (c.exact())
            throw LaurentInverseError(LaurentInverseError::Kind::non_unit, "element is not a unit: a character component has no invertible coefficient");
        throw LaurentInverseError(LaurentInverseError::Kind::insufficient_precision,
                                  "no invertible coefficient within precision " + std::to_string(c.prec()));
    }
    GRLaurent z = c.shift(-e0);
    GRPoly unit = GRPoly::constant(c.one());
    const GRPoly one = GRPoly::constant(c.one());
    for (int it = 0; it < 256; ++it) {
        if (z.prec() < 1) throw PrecisionError("precision exhausted while extracting the monic part");
        const GRPoly p = z.polar_part().to_poly();
        if (p == one) return {z.shift(e0), unit};
        z = z * GRLaurent::from_poly(local_poly_unit_inverse(p));
        unit = unit * p;
    }
    throw AlgebraError("monic part did not stabilize");
}

}  // namespace detail

/**
 * x = plus * unit with plus monic in every character component and unit a
 * polynomial unit of F[G][t].
 */
inline MonicSplit monic_part(const GRLaurent& x) {
    const GroupRing* R = x.zero().R;
    if (!R) throw AlgebraError("monic part needs a group ring context");
    std::vector<GRLaurent> comps = psi(x);
    std::vector<GRLaurent> plus;
    std::vector<GRPoly> units;
    for (const auto& c : comps) {
        detail::LocalSplit s = detail::local_monic_split(c);
        plus.push_back(std::move(s.plus));
        units.push_back(std::move(s.unit));
    }
    return {psi_inverse(R, plus), psi_inverse(R, units)};
}

inline bool is_monic(const GRLaurent& x) {
    const GroupRing* R = x.zero().R;
    if (!R) throw AlgebraError("monicity needs a group ring context");
    for (const auto& c : psi(x)) {
        bool unit = false;
        for (int k = c.val(); k <= c.top() && !unit; ++k) unit = c.raw(k).is_unit();
        if (!unit) {
            if (c.exact()) throw LaurentInverseError(LaurentInverseError::Kind::non_unit, "monicity of a non-unit");
            throw LaurentInverseError(LaurentInverseError::Kind::insufficient_precision, "no invertible coefficient within precision");
        }
        if (!c.exact() && c.prec() < c.valuation() + 2) throw PrecisionError("monicity needs one coefficient past the leading one");
        if (!c.lead().is_one()) return false;
    }
    return true;
}

/* inverse of a unit of F((u))[G], componentwise when the lead is not a unit */
inline GRLaurent gr_inverse(const GRLaurent& x, int prec_cap) {
    if (!x.is_zero() && x.lead().is_unit()) return laurent_inverse(x, prec_cap);
    const GroupRing* R = x.zero().R;
    std::vector<GRLaurent> comps = psi(x);
    for (auto& c : comps) {
        detail::LocalSplit s = detail::local_monic_split(c);
        c = laurent_inverse(s.plus, prec_cap) * GRLaurent::from_poly(local_poly_unit_inverse(s.unit));
    }
    return psi_inverse(R, comps);
}

/* embed a series over F into F[G] */
inline GRLaurent to_group(const GroupRing* R, const KLaurent& x) {
    return x.map([R](const Fq& a) { return GR::constant(R, a); });
}
inline GRPoly to_group(const GroupRing* R, const APoly& f) {
    return f.map_coeffs([R](const Fq& a) { return GR::constant(R, a); });
}

}  // namespace tmod

#endif
