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

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tmod/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Equivariant special values of t-modules over F_q[t]"};
    app.require_subcommand(1, 1);
    std::string config_path, format, set;
    std::optional<int> precision, max_degree;
    int m = 1;
    for (const auto& name : tmod::commands()) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "configuration file")->required();
        sub->add_option("--precision", precision, "N: values are computed mod u^(N+1)");
        sub->add_option("--max-prime-degree", max_degree, "largest prime degree in the Euler product");
        sub->add_option("--set", set, "taming set S, comma separated");
        sub->add_option("--m", m, "twist m for theta-m and cs-check");
        sub->add_option("--format", format, "text or jsonl")->check(CLI::IsMember({"text", "jsonl"}));
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return tmod::kConfigError;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    tmod::RunConfig cfg;
    try {
        std::ifstream in(config_path);
        if (!in) throw tmod::ConfigError("cannot open " + config_path);
        std::stringstream text;
        text << in.rdbuf();
        cfg = tmod::parse_config(text.str());
        if (precision) cfg.precision = *precision;
        if (max_degree) cfg.max_prime_degree = *max_degree;
        if (!format.empty()) cfg.format = format;
        if (!set.empty()) {
            cfg.taming.clear();
            for (const auto& s : tmod::split_list(set)) cfg.taming.push_back(tmod::parse_a(tmod::config_field(cfg), s).str());
        }
        tmod::validate_config(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return tmod::kConfigError;
    }
    return tmod::run(command, cfg, std::cout, std::cerr, {m});
}
