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

#ifndef TMOD_GF_HPP
#define TMOD_GF_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tmod {

struct AlgebraError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* dense polynomials over F_p, ascending coefficients */
namespace fp {

using Vec = std::vector<int>;

inline void trim(Vec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Vec mod(Vec a, const Vec& m, int p) {
    trim(a);
    const int dm = static_cast<int>(m.size()) - 1;
    int inv_lead = 1;
    for (int k = 1; k < p; ++k)
        if ((m.back() * k) % p == 1) inv_lead = k;
    while (static_cast<int>(a.size()) - 1 >= dm) {
        const int shift = static_cast<int>(a.size()) - 1 - dm;
        const int c = (a.back() * inv_lead) % p;
        for (int i = 0; i <= dm; ++i) a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
        trim(a);
    }
    return a;
}

inline Vec mul(const Vec& a, const Vec& b, int p) {
    if (a.empty() || b.empty()) return {};
    Vec r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    trim(r);
    return r;
}

/* trial division by every monic polynomial of degree <= deg/2 */
inline bool is_irreducible(const Vec& m, int p) {
    Vec f = m;
    trim(f);
    const int d = static_cast<int>(f.size()) - 1;
    if (d < 1) return false;
    for (int e = 1; 2 * e <= d; ++e) {
        long count = 1;
        for (int i = 0; i < e; ++i) count *= p;
        for (long idx = 0; idx < count; ++idx) {
            Vec g(e + 1, 0);
            long x = idx;
            for (int i = 0; i < e; ++i) {
                g[i] = static_cast<int>(x % p);
                x /= p;
            }
            g[e] = 1;
            if (mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

/* first monic irreducible of degree d in lexicographic order of (c_{d-1},...,c_0) */
inline Vec first_irreducible(int p, int d) {
    long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long idx = 0; idx < count; ++idx) {
        Vec g(d + 1, 0);
        long x = idx;
        for (int i = 0; i < d; ++i) {
            g[i] = static_cast<int>(x % p);
            x /= p;
        }
        g[d] = 1;
        if (is_irreducible(g, p)) return g;
    }
    throw AlgebraError("no irreducible polynomial found");
}

}  // namespace fp

/**
 * Finite field GF(p^r) = F_p[x]/(modulus).
 *
 * Elements are indices in [0, q): the base-p digits of the index are the
 * coefficients of the residue polynomial, lowest degree first. Contexts are
 * interned and live for the lifetime of the process, so elements may hold a
 * plain pointer to their field.
 */
class GF {
public:
    int p = 0;
    int r = 0;
    std::uint32_t q = 0;
    fp::Vec modulus;  // monic, ascending, size r+1

    static const GF* get(int p, const fp::Vec& modulus) {
        static std::mutex mtx;
        static std::map<std::pair<int, fp::Vec>, std::unique_ptr<GF>> cache;
        fp::Vec m = modulus;
        fp::trim(m);
        std::lock_guard<std::mutex> lock(mtx);
        auto key = std::make_pair(p, m);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second.get();
        auto f = std::unique_ptr<GF>(new GF(p, m));
        const GF* raw = f.get();
        cache.emplace(key, std::move(f));
        return raw;
    }

    /* prime field F_p */
    static const GF* prime(int p) { return get(p, {0, 1}); }

    /* GF(p^d) with the first lexicographic irreducible modulus */
    static const GF* standard(int p, int d) { return get(p, fp::first_irreducible(p, d)); }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        if (p == 2) return a ^ b;
        if (!add_table_.empty()) return add_table_[a * q + b];
        return digit_op(a, b, 1);
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        if (p == 2) return a ^ b;
        return add(a, neg(b));
    }
    std::uint32_t neg(std::uint32_t a) const {
        if (p == 2) return a;
        return neg_table_[a];
    }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        std::uint32_t s = log_[a] + log_[b];
        if (s >= q - 1) s -= q - 1;
        return exp_[s];
    }
    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw AlgebraError("inverse of zero in GF(" + std::to_string(q) + ")");
        return exp_[(q - 1 - log_[a]) % (q - 1)];
    }
    std::uint32_t pow(std::uint32_t a, unsigned long long e) const {
        if (e == 0) return 1;
        if (a == 0) return 0;
        unsigned long long s = (static_cast<unsigned long long>(log_[a]) * (e % (q - 1))) % (q - 1);
        return exp_[s];
    }
    /* integer n reduced mod p, as a field element */
    std::uint32_t from_int(long long n) const {
        long long m = n % p;
        if (m < 0) m += p;
        return static_cast<std::uint32_t>(m);
    }
    std::uint32_t primitive() const { return exp_[1]; }
    std::uint32_t exp_at(std::uint32_t k) const { return exp_[k % (q - 1)]; }
    std::uint32_t log_of(std::uint32_t a) const { return log_[a]; }

    fp::Vec digits(std::uint32_t a) const {
        fp::Vec d(r, 0);
        for (int i = 0; i < r; ++i) {
            d[i] = static_cast<int>(a % p);
            a /= p;
        }
        return d;
    }
    std::uint32_t from_digits(const fp::Vec& d) const {
        std::uint32_t v = 0;
        for (int i = r - 1; i >= 0; --i) v = v * p + static_cast<std::uint32_t>(i < static_cast<int>(d.size()) ? d[i] : 0);
        return v;
    }

    std::string format(std::uint32_t a) const {
        fp::Vec d = digits(a);
        std::string s;
        for (int i = r - 1; i >= 0; --i) {
            if (d[i] == 0) continue;
            if (!s.empty()) s += "+";
            if (i == 0) {
                s += std::to_string(d[i]);
            } else {
                if (d[i] != 1) s += std::to_string(d[i]) + "*";
                s += "x";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s.empty() ? "0" : s;
    }

    std::string modulus_string() const {
        std::string s;
        for (int i = r; i >= 0; --i) {
            int c = modulus[i];
            if (c == 0) continue;
            if (!s.empty()) s += "+";
            if (i == 0) {
                s += std::to_string(c);
            } else {
                if (c != 1) s += std::to_string(c) + "*";
                s += "x";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

private:
    std::vector<std::uint32_t> exp_, log_, add_table_, neg_table_;

    GF(int p_, const fp::Vec& m) : p(p_), modulus(m) {
        if (p < 2) throw AlgebraError("characteristic must be prime");
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0) throw AlgebraError("characteristic " + std::to_string(p) + " is not prime");
        r = static_cast<int>(modulus.size()) - 1;
        if (r < 1 || modulus.back() != 1) throw AlgebraError("field modulus must be monic of degree >= 1");
        if (!fp::is_irreducible(modulus, p)) throw AlgebraError("field modulus is reducible over F_" + std::to_string(p));
        std::uint64_t qq = 1;
        for (int i = 0; i < r; ++i) qq *= static_cast<std::uint64_t>(p);
        if (qq > (1u << 20)) throw AlgebraError("field too large for table arithmetic");
        q = static_cast<std::uint32_t>(qq);
        neg_table_.resize(q);
        for (std::uint32_t a = 0; a < q; ++a) {
            fp::Vec d = digits(a);
            for (auto& c : d) c = (p - c) % p;
            neg_table_[a] = from_digits(d);
        }
        if (p != 2 && q <= 256) {
            add_table_.resize(static_cast<std::size_t>(q) * q);
            for (std::uint32_t a = 0; a < q; ++a)
                for (std::uint32_t b = 0; b < q; ++b) add_table_[a * q + b] = digit_op(a, b, 1);
        }
        build_log_tables();
    }

    std::uint32_t digit_op(std::uint32_t a, std::uint32_t b, int sign) const {
        std::uint32_t v = 0, base = 1;
        for (int i = 0; i < r; ++i) {
            int da = static_cast<int>(a % p), db = static_cast<int>(b % p);
            a /= p;
            b /= p;
            v += static_cast<std::uint32_t>(((da + sign * db) % p + p) % p) * base;
            base *= p;
        }
        return v;
    }

    std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const {
        fp::Vec prod = fp::mul(digits(a), digits(b), p);
        return from_digits(fp::mod(prod, modulus, p));
    }

    void build_log_tables() {
        exp_.assign(q, 0);
        log_.assign(q, 0);
        if (q == 2) {
            exp_[0] = 1;
            exp_[1] = 1;
            log_[1] = 0;
            return;
        }
        for (std::uint32_t g = 1; g < q; ++g) {
            std::uint32_t x = 1;
            std::uint32_t order = 0;
            do {
                x = slow_mul(x, g);
                ++order;
            } while (x != 1 && order < q);
            if (order != q - 1) continue;
            x = 1;
            for (std::uint32_t k = 0; k < q - 1; ++k) {
                exp_[k] = x;
                log_[x] = k;
                x = slow_mul(x, g);
            }
            exp_[q - 1] = 1;
            return;
        }
        throw AlgebraError("no primitive element found");
    }
};

/**
 * Element of a finite field. A default-constructed element has no field and
 * stands for the integer 0; it adopts the field of any partner operand.
 */
struct Fq {
    const GF* f = nullptr;
    std::uint32_t v = 0;

    Fq() = default;
    Fq(const GF* field, std::uint32_t value) : f(field), v(value) {}

    static Fq from_int(const GF* field, long long n) { return Fq(field, field->from_int(n)); }

    Fq zero_like() const { return Fq(f, 0); }
    Fq one_like() const { return Fq(f, 1); }
    bool is_zero() const { return v == 0; }
    bool is_one() const { return v == 1; }
    bool is_unit() const { return v != 0; }

    Fq inverse() const { return Fq(f, field()->inv(v)); }
    Fq pow(unsigned long long e) const { return Fq(f, field()->pow(v, e)); }
    const GF* field() const {
        if (!f) throw AlgebraError("field element without field context");
        return f;
    }

    friend Fq operator+(const Fq& a, const Fq& b) {
        const GF* g = a.f ? a.f : b.f;
        if (!g) {
            if (a.v + b.v > 1) throw AlgebraError("context-free field arithmetic");
            return Fq(nullptr, a.v + b.v);
        }
        return Fq(g, g->add(a.v, b.v));
    }
    friend Fq operator-(const Fq& a, const Fq& b) {
        const GF* g = a.f ? a.f : b.f;
        if (!g) return Fq();
        return Fq(g, g->sub(a.v, b.v));
    }
    Fq operator-() const { return f ? Fq(f, f->neg(v)) : Fq(); }
    friend Fq operator*(const Fq& a, const Fq& b) {
        const GF* g = a.f ? a.f : b.f;
        if (!g) return Fq(nullptr, a.v * b.v);
        return Fq(g, g->mul(a.v, b.v));
    }
    friend Fq operator/(const Fq& a, const Fq& b) { return a * b.inverse(); }
    Fq& operator+=(const Fq& b) { return *this = *this + b; }
    Fq& operator-=(const Fq& b) { return *this = *this - b; }
    Fq& operator*=(const Fq& b) { return *this = *this * b; }
    friend bool operator==(const Fq& a, const Fq& b) { return a.v == b.v; }
    friend bool operator!=(const Fq& a, const Fq& b) { return a.v != b.v; }
    friend bool operator<(const Fq& a, const Fq& b) { return a.v < b.v; }

    std::string str() const { return f ? f->format(v) : std::to_string(v); }
    /* true when the printed form needs parentheses as a coefficient */
    bool compound() const {
        if (!f || f->r == 1) return false;
        std::string s = str();
        return s.find('+') != std::string::npos;
    }
};

/* of two prototypes, the one that carries a field context */
inline const Fq& pick_ctx(const Fq& a, const Fq& b) { return a.f ? a : b; }

/**
 * An embedding of GF(q) into GF(q^m), sending x to the smallest root of the
 * small field's modulus. Used to host character values.
 */
struct FieldEmbedding {
    const GF* small = nullptr;
    const GF* big = nullptr;
    int degree = 1;  // m
    std::vector<std::uint32_t> image;
    std::map<std::uint32_t, std::uint32_t> preimage;

    static FieldEmbedding make(const GF* small, int m) {
        FieldEmbedding e;
        e.small = small;
        e.degree = m;
        if (m == 1) {
            e.big = small;
            e.image.resize(small->q);
            for (std::uint32_t a = 0; a < small->q; ++a) {
                e.image[a] = a;
                e.preimage[a] = a;
            }
            return e;
        }
        e.big = GF::standard(small->p, small->r * m);
        const GF* B = e.big;
        std::uint32_t root = 0;
        bool found = false;
        for (std::uint32_t c = 0; c < B->q && !found; ++c) {
            std::uint32_t acc = 0;
            for (int i = small->r; i >= 0; --i) acc = B->add(B->mul(acc, c), B->from_int(small->modulus[i]));
            if (acc == 0) {
                root = c;
                found = true;
            }
        }
        if (!found) throw AlgebraError("modulus has no root in extension field");
        e.image.resize(small->q);
        for (std::uint32_t a = 0; a < small->q; ++a) {
            fp::Vec d = small->digits(a);
            std::uint32_t acc = 0;
            for (int i = small->r - 1; i >= 0; --i) acc = B->add(B->mul(acc, root), B->from_int(d[i]));
            e.image[a] = acc;
            e.preimage[e.image[a]] = a;
        }
        return e;
    }

    Fq up(const Fq& a) const { return Fq(big, image[a.v]); }
    Fq down(const Fq& b) const {
        auto it = preimage.find(b.v);
        if (it == preimage.end()) throw AlgebraError("element does not lie in the subfield");
        return Fq(small, it->second);
    }
    bool in_subfield(const Fq& b) const { return preimage.count(b.v) != 0; }
};

}  // namespace tmod

#endif
