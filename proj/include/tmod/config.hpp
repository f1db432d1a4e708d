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

#ifndef TMOD_CONFIG_HPP
#define TMOD_CONFIG_HPP

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fields.hpp"
#include "tmodule.hpp"

namespace tmod {

struct ConfigError : std::runtime_error {
    int line = 0;
    ConfigError(const std::string& what, int ln = 0)
        : std::runtime_error(ln > 0 ? "line " + std::to_string(ln) + ": " + what : what), line(ln) {}
};

/**
 * Reads sums of products of powers in t, x and integers. The letter `var` is
 * the polynomial variable; x names the generator of F_q when q is not prime.
 */
class ExprParser {
public:
    ExprParser(const GF* F, char var, bool allow_x) : F_(F), var_(var), allow_x_(allow_x) {}

    APoly parse(const std::string& text) {
        s_ = text;
        pos_ = 0;
        APoly v = sum();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

private:
    const GF* F_;
    char var_;
    bool allow_x_;
    std::string s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) const { throw ConfigError("cannot read '" + s_ + "': " + why); }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    long long integer() {
        skip();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected a number");
        long long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_++] - '0');
            if (v > 1000000000LL) fail("number too large");
        }
        return v;
    }
    APoly sum() {
        bool neg = eat('-');
        APoly acc = product();
        if (neg) acc = -acc;
        for (;;) {
            if (eat('+')) acc = acc + product();
            else if (eat('-')) acc = acc - product();
            else return acc;
        }
    }
    APoly product() {
        APoly acc = power();
        while (eat('*')) acc = acc * power();
        return acc;
    }
    APoly power() {
        APoly b = atom();
        if (eat('^')) {
            const long long e = integer();
            if (e > 4096) fail("exponent too large");
            b = b.pow(static_cast<unsigned>(e));
        }
        return b;
    }
    APoly atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            APoly v = sum();
            if (!eat(')')) fail("missing ')'");
            return v;
        }
        if (c == var_) {
            ++pos_;
            return a_t(F_);
        }
        if (c == 'x') {
            if (!allow_x_) fail("x is not available here");
            if (F_->r == 1) fail("x names the generator of F_q and needs r > 1");
            ++pos_;
            return APoly::constant(Fq(F_, static_cast<std::uint32_t>(F_->p)));
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return a_const(F_, integer() % F_->p);
        fail("unexpected '" + std::string(1, c) + "'");
    }
};

/* element of A = F_q[t] in canonical text form */
inline APoly parse_a(const GF* F, const std::string& text) { return ExprParser(F, 't', true).parse(text); }

inline Fq parse_fq(const GF* F, const std::string& text) {
    const APoly p = parse_a(F, text);
    if (p.degree() > 0) throw ConfigError("'" + text + "' is not a constant");
    return p[0];
}

inline std::string trim_ws(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

/* [a, b, c] or a bare comma list; commas inside parentheses do not split */
inline std::vector<std::string> split_list(std::string v) {
    v = trim_ws(v);
    if (!v.empty() && v.front() == '[') {
        if (v.back() != ']') throw ConfigError("unterminated list '" + v + "'");
        v = v.substr(1, v.size() - 2);
    }
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : v) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(trim_ws(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim_ws(cur).empty() || !out.empty()) out.push_back(trim_ws(cur));
    for (const auto& x : out)
        if (x.empty()) throw ConfigError("empty entry in list '" + v + "'");
    return out;
}

inline int parse_int(const std::string& v, const std::string& key, int ln) {
    try {
        std::size_t used = 0;
        const int x = std::stoi(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(key + " must be an integer, got '" + v + "'", ln);
    }
}

/**
 * Parsed configuration. Text fields keep the canonical spelling so that the
 * configuration can be echoed and written back.
 */
struct RunConfig {
    int p = 0;
    int r = 1;
    std::string modulus;  // over F_p in x; empty selects the first irreducible

    std::string extension = "trivial";
    std::string conductor = "t";
    /* explicit extensions */
    int degree = 1;
    std::vector<int> group;
    std::vector<std::string> mult;    // d^3 entries, index (i*d + j)*d + k
    std::vector<std::string> action;  // d^2 entries per generator, row-major
    std::vector<int> ramification;
    std::vector<int> residue_degree;

    std::string module = "carlitz";
    std::vector<std::string> coeffs;  // tau^1 .. tau^r coefficients
    int m = 1;

    std::vector<std::string> taming;  // S; empty means M = O_K
    std::vector<std::string> gamma;   // D_1, D_2, ... of a synthetic volume instance

    int precision = 4;
    std::optional<int> max_prime_degree;
    std::string format = "text";
};

namespace detail {

inline const std::map<std::string, std::set<std::string>>& config_keys() {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"field", {"p", "r", "modulus"}},
        {"extension", {"kind", "conductor", "degree", "group", "mult", "action", "ramification", "residue_degree"}},
        {"module", {"kind", "coeffs", "m"}},
        {"taming", {"set"}},
        {"volume", {"gamma"}},
        {"run", {"precision", "max_prime_degree", "format"}},
    };
    return keys;
}

inline std::vector<int> int_list(const std::string& v, const std::string& key, int ln) {
    std::vector<int> out;
    for (const auto& x : split_list(v)) out.push_back(parse_int(x, key, ln));
    return out;
}

}  // namespace detail

inline const GF* config_field(const RunConfig& c) {
    if (c.p < 2) throw ConfigError("[field] p is required");
    for (int k = 2; k * k <= c.p; ++k)
        if (c.p % k == 0) throw ConfigError("p = " + std::to_string(c.p) + " is not prime");
    if (c.r < 1) throw ConfigError("[field] r must be positive");
    long long q = 1;
    for (int i = 0; i < c.r; ++i)
        if ((q *= c.p) > 4096) throw ConfigError("q = p^r above 4096 is not supported");
    if (c.modulus.empty()) return c.r == 1 ? GF::prime(c.p) : GF::standard(c.p, c.r);
    const APoly m = ExprParser(GF::prime(c.p), 'x', false).parse(c.modulus);
    if (m.degree() != c.r || !m.is_monic()) throw ConfigError("modulus must be monic of degree r = " + std::to_string(c.r));
    fp::Vec v;
    for (const auto& a : m.coeffs()) v.push_back(static_cast<int>(a.v));
    if (!fp::is_irreducible(v, c.p)) throw ConfigError("modulus " + c.modulus + " is reducible over F_" + std::to_string(c.p));
    return GF::get(c.p, v);
}

/* semantic checks that need no arithmetic beyond the field */
inline void validate_config(const RunConfig& c) {
    const GF* F = config_field(c);
    static const std::set<std::string> ext = {"trivial", "carlitz_cyclotomic", "explicit"};
    static const std::set<std::string> mod = {"drinfeld", "carlitz", "carlitz_tensor", "drinfeld_twist"};
    static const std::set<std::string> fmt = {"text", "jsonl"};
    if (!ext.count(c.extension)) throw ConfigError("unknown extension kind '" + c.extension + "'");
    if (!mod.count(c.module)) throw ConfigError("unknown module kind '" + c.module + "'");
    if (!fmt.count(c.format)) throw ConfigError("format must be text or jsonl");
    if (c.extension == "carlitz_cyclotomic" && F->q < 3) throw ConfigError("carlitz_cyclotomic needs q >= 3");
    if ((c.module == "drinfeld" || c.module == "drinfeld_twist") && c.coeffs.empty())
        throw ConfigError("module kind " + c.module + " needs coeffs");
    if (c.module == "carlitz" && !c.coeffs.empty()) throw ConfigError("carlitz takes no coeffs");
    if ((c.module == "carlitz_tensor" || c.module == "drinfeld_twist") && c.m < 1) throw ConfigError("m must be positive");
    if (c.precision < 1) throw ConfigError("precision must be at least 1");
    if (c.max_prime_degree && *c.max_prime_degree < 1) throw ConfigError("max_prime_degree must be at least 1");
    if (c.extension == "explicit") {
        const int d = c.degree;
        if (d < 1) throw ConfigError("explicit extension needs degree >= 1");
        if (static_cast<int>(c.mult.size()) != d * d * d) throw ConfigError("mult needs degree^3 entries");
        if (static_cast<int>(c.action.size()) != d * d * static_cast<int>(c.group.size()))
            throw ConfigError("action needs degree^2 entries per cyclic factor of the group");
        if (c.ramification.size() != c.residue_degree.size() || c.ramification.empty())
            throw ConfigError("ramification and residue_degree must be nonempty lists of equal length");
    }
}

inline RunConfig parse_config(const std::string& text) {
    RunConfig c;
    std::istringstream in(text);
    std::string raw, section;
    std::set<std::string> seen;
    int ln = 0;
    const auto& keys = detail::config_keys();
    while (std::getline(in, raw)) {
        ++ln;
        const auto hash = raw.find('#');
        const std::string line = trim_ws(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("malformed section header", ln);
            section = trim_ws(line.substr(1, line.size() - 2));
            if (!keys.count(section)) throw ConfigError("unknown section [" + section + "]", ln);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value", ln);
        if (section.empty()) throw ConfigError("key outside of a section", ln);
        const std::string key = trim_ws(line.substr(0, eq)), val = trim_ws(line.substr(eq + 1));
        if (!keys.at(section).count(key)) throw ConfigError("unknown key '" + key + "' in [" + section + "]", ln);
        if (!seen.insert(section + "." + key).second) throw ConfigError("duplicate key '" + key + "'", ln);
        if (val.empty()) throw ConfigError("empty value for '" + key + "'", ln);

        if (section == "field") {
            if (key == "p") c.p = parse_int(val, key, ln);
            else if (key == "r") c.r = parse_int(val, key, ln);
            else c.modulus = val;
        } else if (section == "extension") {
            if (key == "kind") c.extension = val;
            else if (key == "conductor") c.conductor = val;
            else if (key == "degree") c.degree = parse_int(val, key, ln);
            else if (key == "group") c.group = detail::int_list(val, key, ln);
            else if (key == "mult") c.mult = split_list(val);
            else if (key == "action") c.action = split_list(val);
            else if (key == "ramification") c.ramification = detail::int_list(val, key, ln);
            else c.residue_degree = detail::int_list(val, key, ln);
        } else if (section == "module") {
            if (key == "kind") c.module = val;
            else if (key == "coeffs") c.coeffs = split_list(val);
            else c.m = parse_int(val, key, ln);
        } else if (section == "taming") {
            c.taming = split_list(val);
        } else if (section == "volume") {
            c.gamma = split_list(val);
        } else {
            if (key == "precision") c.precision = parse_int(val, key, ln);
            else if (key == "max_prime_degree") c.max_prime_degree = parse_int(val, key, ln);
            else c.format = val;
        }
    }
    validate_config(c);
    /* canonical spellings */
    const GF* F = config_field(c);
    auto canon = [&](std::vector<std::string>& v) {
        for (auto& x : v) x = parse_a(F, x).str();
    };
    canon(c.coeffs);
    canon(c.taming);
    canon(c.gamma);
    canon(c.mult);
    canon(c.action);
    c.conductor = parse_a(F, c.conductor).str();
    if (!c.modulus.empty()) c.modulus = ExprParser(GF::prime(c.p), 'x', false).parse(c.modulus).str("x");
    return c;
}

namespace detail {
inline std::string join(const std::vector<std::string>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
    return s + "]";
}
inline std::string join(const std::vector<int>& v) {
    std::vector<std::string> s;
    for (int x : v) s.push_back(std::to_string(x));
    return join(s);
}
}  // namespace detail

/* canonical text; parse_config(serialize_config(c)) reproduces c */
inline std::string serialize_config(const RunConfig& c) {
    using detail::join;
    std::ostringstream o;
    o << "[field]\np = " << c.p << "\nr = " << c.r << "\n";
    if (!c.modulus.empty()) o << "modulus = " << c.modulus << "\n";
    o << "\n[extension]\nkind = " << c.extension << "\n";
    if (c.extension == "carlitz_cyclotomic") o << "conductor = " << c.conductor << "\n";
    if (c.extension == "explicit") {
        o << "degree = " << c.degree << "\ngroup = " << join(c.group) << "\nmult = " << join(c.mult) << "\naction = " << join(c.action)
          << "\nramification = " << join(c.ramification) << "\nresidue_degree = " << join(c.residue_degree) << "\n";
    }
    o << "\n[module]\nkind = " << c.module << "\n";
    if (!c.coeffs.empty()) o << "coeffs = " << join(c.coeffs) << "\n";
    if (c.module == "carlitz_tensor" || c.module == "drinfeld_twist") o << "m = " << c.m << "\n";
    if (!c.taming.empty()) o << "\n[taming]\nset = " << join(c.taming) << "\n";
    if (!c.gamma.empty()) o << "\n[volume]\ngamma = " << join(c.gamma) << "\n";
    o << "\n[run]\nprecision = " << c.precision << "\n";
    if (c.max_prime_degree) o << "max_prime_degree = " << *c.max_prime_degree << "\n";
    o << "format = " << c.format << "\n";
    return o.str();
}

/* the arithmetic objects a configuration describes */
struct Instance {
    const GF* F = nullptr;
    ExtensionData X;
    TModuleSpec E;
    std::vector<APoly> S;
    TamingModule M;
};

inline ExtensionData build_extension(const RunConfig& c, const GF* F) {
    if (c.extension == "trivial") return trivial_extension(F);
    if (c.extension == "carlitz_cyclotomic") return carlitz_cyclotomic(F, parse_a(F, c.conductor));
    const int d = c.degree;
    ExtensionData X;
    X.F = F;
    X.d = d;
    X.G = GroupSpec(c.group);
    X.kind = "explicit";
    X.mult.assign(d, std::vector<OKElem>(d, OKElem(d, a_zero(F))));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) X.mult[i][j][k] = parse_a(F, c.mult[(i * d + j) * d + k]);
    for (std::size_t g = 0; g < c.group.size(); ++g) {
        AMat s(d, d, a_zero(F));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) s(i, j) = parse_a(F, c.action[g * d * d + i * d + j]);
        X.sigma.push_back(s);
    }
    for (std::size_t i = 0; i < c.ramification.size(); ++i) X.places.push_back({c.ramification[i], c.residue_degree[i], ""});
    X.finish();
    X.validate();
    return X;
}

inline TModuleSpec build_module(const RunConfig& c, const GF* F) {
    std::vector<APoly> a;
    for (const auto& s : c.coeffs) a.push_back(parse_a(F, s));
    if (c.module == "carlitz") return make_carlitz(F);
    if (c.module == "carlitz_tensor") return carlitz_tensor(F, c.m);
    if (c.module == "drinfeld") return make_drinfeld(F, a);
    return drinfeld_twist(make_drinfeld(F, a), c.m);
}

inline Instance build_instance(const RunConfig& c) {
    validate_config(c);
    Instance I;
    I.F = config_field(c);
    I.X = build_extension(c, I.F);
    I.E = build_module(c, I.F);
    for (const auto& s : c.taming) I.S.push_back(parse_a(I.F, s));
    I.M = I.S.empty() ? full_taming(I.F) : xi_taming(I.X, I.S);
    return I;
}

}  // namespace tmod

#endif
