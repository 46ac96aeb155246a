// Copyright 2026 The projlogic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// projlogic verify <suite> [--dim N] [--samples K] [--seed S] [--tol name=val]*
//                  [--family file] [--operators file...] [--report out]
//                  [--threads T] [--timestamp now|fixed|<text>]

#include "projlogic/suites.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <iostream>

namespace {

std::string iso_utc(std::time_t t) {
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Fixed unless asked otherwise, so reports stay byte-identical across runs.
std::string resolve_timestamp(const std::string& mode) {
    if (mode == "now") {
        return iso_utc(std::chrono::system_clock::to_time_t(std::chrono::system_clock::now()));
    }
    if (mode != "fixed") {
        return mode;
    }
    if (const char* sde = std::getenv("SOURCE_DATE_EPOCH")) {
        try {
            return iso_utc(static_cast<std::time_t>(std::stoll(sde)));
        } catch (const std::exception&) {
        }
    }
    return iso_utc(0);
}

void print_summary(const std::vector<projlogic::CheckRecord>& records, std::ostream& os) {
    std::size_t failed = 0;
    for (const auto& r : records) {
        failed += !r.passed;
        os << (r.passed ? "PASS " : "FAIL ") << r.name << "  [" << r.paper_ref << "]  max_error=" << r.max_error
           << " tol=" << r.tolerance << " trials=" << r.n_trials << "\n";
    }
    os << records.size() - failed << "/" << records.size() << " checks passed\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification suites for fuzzy events on complex projective phase space"};
    app.require_subcommand(1);

    projlogic::SuiteConfig cfg;
    std::string suite;
    std::vector<std::string> tol_args;
    std::string family;
    std::string report;
    std::string timestamp = "fixed";

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "suite name or 'all'")
        ->required()
        ->check(CLI::IsMember([] {
            auto names = projlogic::suite_names();
            names.push_back("all");
            return names;
        }()));
    verify->add_option("--dim", cfg.dim, "Hilbert-space dimension")->check(CLI::Range(2, 8));
    verify->add_option("--samples", cfg.n_samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
    verify->add_option("--seed", cfg.seed, "master seed");
    verify->add_option("--tol", tol_args, "tolerance override name=value")->allow_extra_args(false);
    verify->add_option("--family", family, "family document (JSON)");
    verify->add_option("--operators", cfg.operator_paths, "matrix documents (JSON)");
    verify->add_option("--report", report, "report output path (stdout if omitted)");
    verify->add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1u, 256u));
    verify->add_option("--timestamp", timestamp, "'fixed' (default), 'now' or literal text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        cfg.suites = {suite};
        for (const auto& arg : tol_args) {
            const auto eq = arg.find('=');
            if (eq == std::string::npos) {
                throw projlogic::InvalidArgument("--tol expects name=value, got '" + arg + "'");
            }
            std::size_t used = 0;
            const std::string text = arg.substr(eq + 1);
            const double value = std::stod(text, &used);
            if (used != text.size()) {
                throw projlogic::InvalidArgument("--tol value is not a number: '" + text + "'");
            }
            cfg.tol_overrides[arg.substr(0, eq)] = value;
        }
        if (!family.empty()) {
            cfg.family_path = family;
        }
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    std::vector<projlogic::CheckRecord> records;
    try {
        records = projlogic::run_suite(cfg);
    } catch (const projlogic::IngestionError& e) {
        std::cerr << "ingestion error: " << e.what() << "\n";
        return 2;
    } catch (const projlogic::InvalidArgument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    const std::string stamp = resolve_timestamp(timestamp);
    if (report.empty()) {
        std::cout << projlogic::serialize_report(projlogic::make_report(records, cfg, stamp));
        print_summary(records, std::cerr);
        return projlogic::exit_code(records);
    }
    const int rc = projlogic::emit_report(records, cfg, stamp, report);
    print_summary(records, std::cout);
    if (rc == 2) {
        std::cerr << "error: cannot write report to '" << report << "'\n";
    }
    return rc;
}
