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

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "tmod/cli.hpp"

namespace tmod {
namespace {

const char* kMinimal = R"(# smallest useful file
[field]
p = 2

[run]
precision = 4
)";

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string config_path(const std::string& name) { return std::string(TMOD_SOURCE_DIR) + "/configs/" + name + ".conf"; }

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run_text(const std::string& command, const std::string& text, const RunOptions& opt = {}) {
    std::ostringstream out, err;
    const int code = run(command, parse_config(text), out, err, opt);
    return {code, out.str(), err.str()};
}

TEST(Config, MinimalDefaults) {
    const RunConfig c = parse_config(kMinimal);
    EXPECT_EQ(c.p, 2);
    EXPECT_EQ(c.r, 1);
    EXPECT_EQ(c.extension, "trivial");
    EXPECT_EQ(c.module, "carlitz");
    EXPECT_EQ(c.precision, 4);
    EXPECT_EQ(c.format, "text");
    EXPECT_TRUE(c.taming.empty());
    EXPECT_FALSE(c.max_prime_degree.has_value());
}

TEST(Config, Errors) {
    auto line_of = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const ConfigError& e) {
            return e.line;
        }
        return -1;
    };
    EXPECT_EQ(line_of("[field]\np = 2\nprecision = 4\n"), 3);
    EXPECT_EQ(line_of("[field]\np = 2\n[nonsense]\n"), 3);
    EXPECT_EQ(line_of("[field]\np = 2\np = 3\n"), 3);
    EXPECT_EQ(line_of("[field]\np =\n"), 2);
    EXPECT_EQ(line_of("p = 2\n"), 1);
    EXPECT_THROW(parse_config("[field]\np = 2\n[extension]\nkind = carlitz_cyclotomic\n"), ConfigError);
    EXPECT_THROW(validate_config(parse_config("[field]\np = 4\n")), ConfigError);
    EXPECT_THROW(validate_config(parse_config("[field]\np = 2\nr = 13\n")), ConfigError);
    EXPECT_THROW(validate_config(parse_config("[field]\np = 2\nr = 2\nmodulus = x^2+1\n")), ConfigError);
    EXPECT_THROW(parse_config("[field]\np = 2\n[module]\nkind = drinfeld\ncoeffs = [x]\n"), ConfigError);
}

TEST(Config, CanonicalRoundTrip) {
    const std::vector<std::string> texts = {
        kMinimal,
        "[field]\np=3\n[extension]\nkind=carlitz_cyclotomic\nconductor = t + 0\n[module]\nkind = carlitz\n[run]\nprecision=3\n",
        "[field]\np = 2\n[module]\nkind = drinfeld\ncoeffs = [ t*t*t ]\n[taming]\nset = [t, 1+t]\n[volume]\ngamma = [1, 1 + t^2]\n",
        "[field]\np = 2\nr = 2\nmodulus = 1 + x + x^2\n[module]\nkind = drinfeld\ncoeffs = [x]\n[run]\nformat = jsonl\nmax_prime_degree = 3\n"};
    for (const auto& text : texts) {
        const std::string once = serialize_config(parse_config(text));
        EXPECT_EQ(serialize_config(parse_config(once)), once) << text;
    }
    const RunConfig c = parse_config(texts[2]);
    EXPECT_EQ(c.coeffs, std::vector<std::string>{"t^3"});
    EXPECT_EQ(c.taming, (std::vector<std::string>{"t", "t+1"}));
}

TEST(Config, ShippedFilesParse) {
    for (const char* name : {"carlitz_q2", "carlitz_q3", "drinfeld_rank2_q2", "carlitz_tensor2_q2", "carlitz_cyclotomic_q3", "carlitz_twist1_q2",
                             "class_group_q2", "carlitz_f4"}) {
        const RunConfig c = parse_config(read_file(config_path(name)));
        EXPECT_NO_THROW(validate_config(c)) << name;
        EXPECT_NO_THROW(build_instance(c)) << name;
    }
}

TEST(Run, Theta0Text) {
    const Outcome o = run_text("theta0", kMinimal);
    EXPECT_EQ(o.code, kPass);
    EXPECT_NE(o.out.find("1 + t^-2 + t^-3 + t^-4 + O(t^-5)"), std::string::npos);
    EXPECT_NE(o.out.find("status              = PASS"), std::string::npos);
    EXPECT_TRUE(o.err.empty());
}

TEST(Run, ChecksPass) {
    for (const char* cmd : {"trace-check", "etnf-check", "bs-check", "hmodule", "expinv", "monic", "gsize", "vol-check"})
        EXPECT_EQ(run_text(cmd, kMinimal).code, kPass) << cmd;
    EXPECT_EQ(run_text("cs-check", kMinimal, {1}).code, kPass);
}

TEST(Run, Errors) {
    const Outcome bad = run_text("no-such-command", kMinimal);
    EXPECT_EQ(bad.code, kConfigError);
    EXPECT_NE(bad.err.find("unknown command"), std::string::npos);
    EXPECT_TRUE(bad.out.empty());
    EXPECT_EQ(run_text("theta-m", kMinimal, {0}).code, kConfigError);
    /* theta-s without a taming set; nothing is printed on stdout */
    const Outcome noset = run_text("theta-s", kMinimal);
    EXPECT_EQ(noset.code, kConfigError);
    EXPECT_TRUE(noset.out.empty());
    EXPECT_FALSE(noset.err.empty());
}

TEST(Run, Jsonl) {
    RunConfig c = parse_config(kMinimal);
    c.format = "jsonl";
    std::ostringstream out, err;
    ASSERT_EQ(run("theta0", c, out, err), kPass);
    std::istringstream lines(out.str());
    std::string line;
    std::vector<nlohmann::json> rows;
    while (std::getline(lines, line)) rows.push_back(nlohmann::json::parse(line));
    ASSERT_GE(rows.size(), 3u);
    EXPECT_EQ(rows.front()["type"], "header");
    EXPECT_EQ(rows.front()["command"], "theta0");
    for (const char* key : {"field", "modulus", "group", "extension", "module", "taming", "precision", "cutoff"}) EXPECT_TRUE(rows.front().contains(key)) << key;
    EXPECT_EQ(rows[1]["type"], "factor");
    EXPECT_EQ(rows.back()["type"], "result");
    EXPECT_EQ(rows.back()["theta0"], "1 + t^-2 + t^-3 + t^-4 + O(t^-5)");
    EXPECT_EQ(rows.back()["status"], "PASS");
}

TEST(Run, Deterministic) {
    const Outcome a = run_text("etnf-check", kMinimal), b = run_text("etnf-check", kMinimal);
    EXPECT_EQ(a.out, b.out);
}

TEST(Run, ThetaSRemovesFactors) {
    const Outcome o = run_text("theta-s", std::string(kMinimal) + "[taming]\nset = [t]\n");
    EXPECT_EQ(o.code, kPass);
    /* (1 + u^2 + u^3 + u^4)(1 + u) over F_2 */
    EXPECT_NE(o.out.find("1 + t^-1 + t^-2 + O(t^-5)"), std::string::npos) << o.out;
}

Outcome run_binary(const std::string& args) {
    const std::string cmd = std::string(TMOD_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, "", "popen failed"};
    std::array<char, 4096> buf{};
    std::string out;
    while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) out += buf.data();
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, ""};
}

TEST(Binary, ExitCodes) {
    EXPECT_EQ(run_binary("theta0 --config " + config_path("carlitz_q2")).code, 0);
    EXPECT_EQ(run_binary("trace-check --config " + config_path("carlitz_cyclotomic_q3")).code, 0);
    EXPECT_EQ(run_binary("theta0 --config /nonexistent.conf").code, 2);
    EXPECT_EQ(run_binary("frobnicate --config " + config_path("carlitz_q2")).code, 2);
    EXPECT_EQ(run_binary("theta0").code, 2);
    EXPECT_EQ(run_binary("theta0 --config " + config_path("carlitz_q2") + " --format yaml").code, 2);
}

TEST(Binary, Overrides) {
    const Outcome o = run_binary("theta0 --config " + config_path("carlitz_q2") + " --precision 2 --format jsonl");
    ASSERT_EQ(o.code, 0);
    std::istringstream lines(o.out);
    std::string first, line, last;
    std::getline(lines, first);
    while (std::getline(lines, line)) last = line;
    EXPECT_EQ(nlohmann::json::parse(first)["precision"], "2");
    EXPECT_EQ(nlohmann::json::parse(last)["theta0"], "1 + t^-2 + O(t^-3)");
    const Outcome s = run_binary("theta-s --config " + config_path("carlitz_q2") + " --set t");
    EXPECT_EQ(s.code, 0);
    EXPECT_NE(s.out.find("(t)*O_K"), std::string::npos);
}

}  // namespace
}  // namespace tmod
