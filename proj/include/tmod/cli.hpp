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

#ifndef TMOD_CLI_HPP
#define TMOD_CLI_HPP

#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "nuclear.hpp"
#include "volume.hpp"

namespace tmod {

enum ExitCode : int { kPass = 0, kFail = 1, kConfigError = 2 };

/**
 * One report per command: a header echoing the configuration actually used,
 * audit rows, result fields and a status line. Text or one JSON object per
 * line.
 */
class Report {
public:
    using Fields = std::vector<std::pair<std::string, std::string>>;

    Report(std::ostream& out, bool jsonl) : out_(out), jsonl_(jsonl) {}

    void header(const std::string& command, const Fields& f) {
        if (jsonl_) {
            nlohmann::ordered_json j;
            j["type"] = "header";
            j["command"] = command;
            for (const auto& [k, v] : f) j[k] = v;
            out_ << j.dump() << "\n";
            return;
        }
        out_ << "# " << command << "\n";
        for (const auto& [k, v] : f) line(k, v);
    }

    void row(const std::string& kind, const Fields& f) {
        if (jsonl_) {
            nlohmann::ordered_json j;
            j["type"] = kind;
            for (const auto& [k, v] : f) j[k] = v;
            out_ << j.dump() << "\n";
            return;
        }
        out_ << kind;
        for (const auto& [k, v] : f) out_ << "  " << k << "=" << v;
        out_ << "\n";
    }

    void value(const std::string& k, const std::string& v) { result_.emplace_back(k, v); }

    int finish(int code) {
        const std::string status = code == kPass ? "PASS" : "FAIL";
        if (jsonl_) {
            nlohmann::ordered_json j;
            j["type"] = "result";
            for (const auto& [k, v] : result_) j[k] = v;
            j["status"] = status;
            out_ << j.dump() << "\n";
        } else {
            for (const auto& [k, v] : result_) line(k, v);
            line("status", status);
        }
        return code;
    }

private:
    std::ostream& out_;
    bool jsonl_;
    Fields result_;

    void line(const std::string& k, const std::string& v) { out_ << std::left << std::setw(20) << k << "= " << v << "\n"; }
};

struct RunOptions {
    int m = 1;  // twist for theta-m and cs-check
};

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> c = {"theta0",     "theta-s",    "theta-m", "gsize",    "monic",    "trace-check",
                                               "etnf-check", "hmodule",    "expinv",  "bs-check", "cs-check", "vol-check"};
    return c;
}

namespace detail {

inline std::string str_bool(bool b) { return b ? "yes" : "no"; }
inline std::string str_res(int r) { return r < 0 ? "0" : "nonzero at u^" + std::to_string(r); }

inline Report::Fields header_fields(const RunConfig& c, const Instance& I, const RunOptions& o, const std::string& command) {
    fp::Vec mod = I.F->modulus;
    std::vector<Fq> mc;
    for (int a : mod) mc.push_back(Fq(GF::prime(I.F->p), static_cast<std::uint32_t>(a)));
    Report::Fields f = {
        {"field", "F_" + std::to_string(I.F->q)},
        {"modulus", APoly(Fq(GF::prime(I.F->p), 0), mc).str("x")},
        {"group", I.X.G.str()},
        {"extension", I.X.str()},
        {"module", I.E.str()},
        {"taming", I.S.empty() ? "O_K" : I.M.str()},
        {"precision", std::to_string(c.precision)},
        {"cutoff", c.max_prime_degree ? std::to_string(*c.max_prime_degree) : std::to_string(default_cutoff(I.E, c.precision)) + " (default)"},
    };
    if (command == "theta-m" || command == "cs-check") f.emplace_back("m", std::to_string(o.m));
    return f;
}

inline void theta_rows(Report& rep, const ThetaValue& th) {
    for (const auto& f : th.log)
        rep.row("factor", {{"v", f.v.P.str()}, {"lie", f.lie.str()}, {"e", f.e.str()}, {"ratio", f.ratio.str()}});
}

inline void theta_values(Report& rep, const std::string& key, const ThetaValue& th) {
    rep.value(key, th.value.str());
    rep.value("primes_to_degree", std::to_string(th.D));
    rep.value("certified_by", "degree " + std::to_string(th.certified));
}

inline std::vector<APoly> require_set(const Instance& I) {
    if (I.S.empty()) throw ConfigError("theta-s needs a set S (--set or [taming] set)");
    return I.S;
}

inline int fitting_result(Report& rep, const FittingReport& f, bool tame) {
    rep.value("theta", f.etnf.theta.value.str());
    rep.value("index", f.etnf.lattice.index.str());
    rep.value("|H|_G", f.etnf.H.size.str());
    rep.value("etnf_residual", str_res(f.etnf.residual));
    rep.value("candidate", f.candidate.str());
    rep.value("contained", str_bool(f.contained));
    rep.value("mutual_divisibility", tame ? str_bool(f.mutual) : "not required");
    return f.contained && f.etnf.pass() && (!tame || f.mutual) ? kPass : kFail;
}

inline int volume_result(Report& rep, const VolumeReport& v) {
    rep.row("instance", {{"name", v.instance},
                         {"nucleus", std::to_string(v.nucleus)},
                         {"det", v.det.str()},
                         {"independent", str_bool(v.independent)},
                         {"vol1", v.vol1.str()},
                         {"vol2", v.vol2.str()},
                         {"residual", str_res(v.residual)},
                         {"theta_residual", str_res(v.theta_residual)},
                         {"reverse_residual", str_res(v.reverse_residual)}});
    return v.pass() ? kPass : kFail;
}

}  // namespace detail

/**
 * Runs one command. Exit code 0 on success or PASS, 1 when an identity
 * fails, 2 for configuration or input errors; messages for code 2 go to err.
 */
inline int run(const std::string& command, const RunConfig& cfg, std::ostream& out, std::ostream& err, const RunOptions& opt = {}) {
    const auto& cmds = commands();
    if (std::find(cmds.begin(), cmds.end(), command) == cmds.end()) {
        err << "error: unknown command '" << command << "'\n";
        return kConfigError;
    }
    Instance I;
    try {
        I = build_instance(cfg);
        if ((command == "theta-m" || command == "cs-check") && opt.m < 1) throw ConfigError("--m must be positive");
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }
    const int N = cfg.precision;
    const auto D = cfg.max_prime_degree;
    const bool tame = I.X.R->tame();
    std::ostringstream buf;
    Report rep(buf, cfg.format == "jsonl");
    int code = kPass;
    try {
        rep.header(command, detail::header_fields(cfg, I, opt, command));
        if (command == "theta0") {
            const ThetaValue th = theta0(I.E, I.X, I.M, N, D);
            detail::theta_rows(rep, th);
            detail::theta_values(rep, "theta0", th);
        } else if (command == "theta-s") {
            const ThetaValue th = theta_S(I.E, I.X, detail::require_set(I), N, D);
            detail::theta_rows(rep, th);
            detail::theta_values(rep, "theta_S", th);
        } else if (command == "theta-m") {
            const ThetaValue th = theta_m(I.E, I.X, I.S, opt.m, N, D);
            detail::theta_rows(rep, th);
            detail::theta_values(rep, "theta_m", th);
        } else if (command == "gsize") {
            const int maxd = D.value_or(2);
            bool agree = true;
            for (int deg = 1; deg <= maxd; ++deg)
                for (const auto& P : enumerate_monic_irreducibles(I.F, deg)) {
                    const Reduction red = reduction(I.E, I.X, I.M, {P});
                    const GRPoly lie = gsize(make_free(red.lie)), e = gsize(make_free(red.e));
                    Report::Fields row = {{"v", P.str()}, {"lie", lie.str()}, {"e", e.str()}};
                    if (tame) {
                        const bool ok = gsize_by_characters(red.lie) == lie && gsize_by_characters(red.e) == e;
                        row.emplace_back("characters", ok ? "agree" : "DIFFER");
                        agree = agree && ok;
                    }
                    rep.row("gsize", row);
                }
            rep.value("character_route", tame ? (agree ? "agrees" : "differs") : "not available (p divides |G|)");
            code = agree ? kPass : kFail;
        } else if (command == "monic") {
            const ExpInvLattice L = expinv_lattice(I.E, I.X, I.M, N);
            const GRLaurent x = assemble_components(I.X.R, L.components);
            const MonicSplit s = monic_part(x);
            const GRLaurent back = (s.plus * GRLaurent::from_poly(s.unit)).truncate(N + 1);
            const int res = first_difference(back, x.truncate(N + 1), N + 1);
            rep.value("det", x.str());
            rep.value("monic_part", s.plus.str());
            rep.value("unit", s.unit.str());
            rep.value("round_trip_residual", detail::str_res(res));
            code = res < 0 ? kPass : kFail;
        } else if (command == "trace-check") {
            const TraceReport r = trace_check(I.E, I.X, I.M, N, D);
            rep.value("nucleus", std::to_string(r.nucleus));
            rep.value("rank", std::to_string(r.dim));
            rep.value("det", r.det.str());
            rep.value("det_at_i+2", r.det_wider.str());
            rep.value("independent", detail::str_bool(r.independent));
            detail::theta_values(rep, "theta0", r.theta);
            rep.value("residual", detail::str_res(r.residual));
            code = r.pass() ? kPass : kFail;
        } else if (command == "etnf-check") {
            const EtnfReport r = etnf_check(I.E, I.X, I.M, N, D);
            detail::theta_values(rep, "theta0", r.theta);
            rep.value("|H|_G", r.H.size.str());
            rep.value("index", r.lattice.index.str());
            rep.value("index*|H|", r.rhs.str());
            rep.value("residual", detail::str_res(r.residual));
            code = r.pass() ? kPass : kFail;
        } else if (command == "hmodule") {
            const ClassModule H = class_module(I.E, I.X, I.M);
            rep.value("depth", std::to_string(H.depth));
            rep.value("dim_W", std::to_string(H.w_dim));
            rep.value("dim_exp_image", std::to_string(H.span_dim));
            rep.value("levels", std::to_string(H.levels));
            rep.value("dim_H", std::to_string(H.dim()));
            rep.value("|H|_G", H.size.str());
        } else if (command == "expinv") {
            const ExpInvLattice L = expinv_lattice(I.E, I.X, I.M, N);
            for (std::size_t c = 0; c < L.components.size(); ++c) {
                std::string degs;
                for (int d : L.degrees[c]) degs += (degs.empty() ? "" : ",") + std::to_string(d);
                rep.row("class", {{"index", std::to_string(c)}, {"levels", degs}, {"det", L.components[c].str()}});
            }
            rep.value("depth", std::to_string(L.depth));
            rep.value("working_precision", std::to_string(L.precision));
            rep.value("index", L.index.str());
            rep.value("exp_in_M", detail::str_bool(L.in_lattice));
            rep.value("d_stable", detail::str_bool(L.d_stable));
            code = L.in_lattice && L.d_stable ? kPass : kFail;
        } else if (command == "bs-check") {
            code = detail::fitting_result(rep, brumer_stark_check(I.E, I.X, I.M, N, D), tame);
        } else if (command == "cs-check") {
            code = detail::fitting_result(rep, coates_sinnott_check(I.E, I.X, I.S, opt.m, N, D), tame);
        } else if (command == "vol-check") {
            bool ok = detail::volume_result(rep, exp_volume_check(I.E, I.X, I.M, N, D)) == kPass;
            if (!cfg.gamma.empty()) {
                std::vector<APoly> Dg;
                for (const auto& s : cfg.gamma) Dg.push_back(parse_a(I.F, s));
                ok = detail::volume_result(rep, volume_formula_check(make_gamma(I.F, 1, Dg, "gamma"), I.X, I.M, N)) == kPass && ok;
            }
            code = ok ? kPass : kFail;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }
    code = rep.finish(code);
    out << buf.str();
    return code;
}

}  // namespace tmod

#endif
