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


#include "projlogic/suites.hpp"

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <set>

using namespace projlogic;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "projlogic_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const CheckRecord* find_record(const std::vector<CheckRecord>& recs, const std::string& name) {
    for (const auto& r : recs) {
        if (r.name == name) {
            return &r;
        }
    }
    return nullptr;
}

const std::string kData = PROJLOGIC_DATA_DIR;

}  // namespace

TEST_CASE("Config validation", "[cli]") {
    SuiteConfig c;
    CHECK_NOTHROW(c.validate());
    c.dim = 1;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c.dim = 9;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c.dim = 3;
    c.n_samples = 99;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c.n_samples = 100;
    c.tol_overrides["no_such_tolerance"] = 1.0;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c.tol_overrides = {{"star", 1e-8}};
    CHECK(c.effective_tolerances().star == 1e-8);
    CHECK_THROWS_AS(resolve_suites({"geometry", "nope"}), InvalidArgument);
    CHECK(resolve_suites({"all"}) == suite_names());
    CHECK(resolve_suites({"tnorm", "geometry"}) == std::vector<std::string>{"geometry", "tnorm"});
}

TEST_CASE("Empty and failing reports", "[cli]") {
    SuiteConfig c;
    const auto path = scratch("empty.json");
    CHECK(emit_report({}, c, "T", path) == 0);
    const Json doc = Json::parse(slurp(path));
    CHECK(doc.at("records").empty());
    CHECK(doc.at("header").at("artifact") == kArtifactName);
    CHECK(doc.at("header").at("version") == kArtifactVersion);
    CHECK(doc.at("header").at("config").at("dim") == 3);
    CHECK(doc.at("header").at("timestamp") == "T");

    const std::vector<CheckRecord> failing{{"x", "plumbing", 1, 2.0, 1.0, false, "too big"}};
    CHECK(emit_report(failing, c, "T", scratch("fail.json")) == 1);
    CHECK(emit_report(failing, c, "T", "/nonexistent-dir/sub/report.json") == 2);
    CHECK_FALSE(fs::exists(scratch("fail.json.tmp")));
}

TEST_CASE("Report round trip is lossless", "[cli]") {
    const std::vector<CheckRecord> recs{
        {"a", "Prop. 3", 1000, 3.3306690738754696e-16, 1e-9, true, "ok"},
        {"b", "§3", 7, 0.1 + 0.2, 0.3, false, "unicode ⋆ and \"quotes\""},
    };
    SuiteConfig c;
    const Json doc = Json::parse(serialize_report(make_report(recs, c, "T")));
    CHECK(records_from_report(doc) == recs);
    CHECK(doc.at("summary").at("failed") == 1);
}

TEST_CASE("Star suite exposes the contract check", "[cli]") {
    SuiteConfig c;
    c.dim = 2;
    c.suites = {"star"};
    const auto recs = run_suite(c);
    const auto* r = find_record(recs, "star_closed_vs_geometric");
    REQUIRE(r != nullptr);
    CHECK(r->paper_ref == "Prop. 3");
    CHECK(r->passed);
    CHECK(r->n_trials == 1000);
}

TEST_CASE("Logic suite on the spin family file reports the witness", "[cli]") {
    SuiteConfig c;
    c.dim = 2;
    c.suites = {"logic"};
    c.family_path = kData + "/spin2.json";
    const auto recs = run_suite(c);
    const auto* r = find_record(recs, "family_distributivity_witness");
    REQUIRE(r != nullptr);
    CHECK(r->passed);
    CHECK(r->details.find("(e1, +, -)") != std::string::npos);
    CHECK(exit_code(recs) == 0);
}

TEST_CASE("Ingestion errors", "[cli][io]") {
    SuiteConfig c;
    c.suites = {"logic"};
    c.family_path = kData + "/does-not-exist.json";
    CHECK_THROWS_AS(run_suite(c), IngestionError);

    c.family_path.reset();
    c.operator_paths = {kData + "/matrices/e1.json"};
    c.dim = 3;
    CHECK_THROWS_AS(run_suite(c), IngestionError);

    CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"dim": 2, "re": [[1, 0.5], [0, 1]]})")), IngestionError);
    CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"dim": 2, "re": [[1, 0]]})")), IngestionError);
    CHECK_THROWS_AS(family_from_json(Json::parse(R"({"entries": []})"), "."), IngestionError);
    CHECK_THROWS_AS(
        family_from_json(Json::parse(R"({"entries": [{"role": "bogus", "matrix": {"dim": 1, "re": [[1]]}}]})"), "."),
        IngestionError);
    CHECK_THROWS_AS(family_from_json(
                        Json::parse(R"({"entries": [{"role": "projector", "matrix": {"dim": 2, "re": [[0.5, 0], [0, 0.5]]}}]})"),
                        "."),
                    IngestionError);

    const auto h = matrix_from_json(Json::parse(R"({"dim": 2, "re": [[1, 0], [0, 0]], "im": [[0, 1e-9], [0, 0]]})"));
    CHECK(std::abs(h.matrix()(0, 1).imag() - 5e-10) < 1e-18);
    const auto back = matrix_from_json(matrix_to_json(h.matrix()));
    CHECK(back.matrix() == h.matrix());

    const auto fam = load_family(kData + "/spin2.json");
    REQUIRE(fam.size() == 4);
    CHECK(fam[2].label() == "+");
    CHECK(fam[2].is_projector());
}

TEST_CASE("Supplied operators join the geometry and star suites", "[cli][io]") {
    SuiteConfig c;
    c.dim = 2;
    c.suites = {"geometry", "star"};
    c.operator_paths = {kData + "/matrices/plus.json", kData + "/matrices/half_identity.json"};
    const auto recs = run_suite(c);
    const auto* r = find_record(recs, "operators_star_identity");
    REQUIRE(r != nullptr);
    CHECK(r->passed);
    CHECK(exit_code(recs) == 0);
}

TEST_CASE("Suites are deterministic and thread-count independent", "[cli][determinism]") {
    SuiteConfig c;
    c.seed = 7;
    c.suites = {"measure", "logic"};
    c.threads = 1;
    const std::string a = serialize_report(make_report(run_suite(c), c, "T"));
    c.threads = 3;
    const std::string b = serialize_report(make_report(run_suite(c), c, "T"));
    CHECK(a == b);
    c.seed = 8;
    CHECK(serialize_report(make_report(run_suite(c), c, "T")) != a);
}

TEST_CASE("Every record is consistent and anchored", "[cli]") {
    const std::set<std::string> anchors{ref::kTangent,        ref::kOmega,       ref::kMetric,    ref::kObservable,
                                        ref::kFrame,          ref::kDensities,   ref::kBasisSum,  ref::kReproducing,
                                        ref::kEventProbability, ref::kStar,      ref::kStarCompat, ref::kStarJoinMeet,
                                        ref::kOrderIso,       ref::kLogic,       ref::kStates,    ref::kFuzzy,
                                        ref::kTNormAxioms,    ref::kMinNorm,     ref::kFunctionFamilies,
                                        ref::kDeformed,       "plumbing"};
    SuiteConfig c;
    c.dim = 2;
    c.n_samples = 2000;
    const auto recs = run_suite(c);
    std::set<std::string> names;
    for (const auto& r : recs) {
        CHECK(anchors.count(r.paper_ref) == 1);
        CHECK(r.passed == (r.max_error <= r.tolerance));
        CHECK(std::isfinite(r.max_error));
        CHECK(names.insert(r.name).second);
    }
}
