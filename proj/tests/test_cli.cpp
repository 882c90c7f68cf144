#include "ydcat/scenario.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <sys/wait.h>

using namespace ydcat;

namespace {

const std::string kFixtures = YDCAT_FIXTURE_DIR;
const std::string kScenarios = YDCAT_SCENARIO_DIR;

json fixture_provider(const std::string& name) { return "finite:" + kFixtures + "/" + name + ".json"; }

/** Exit status of the CLI with the given arguments, output discarded. */
int cli(const std::string& args) {
    std::string cmd = std::string(YDCAT_BINARY) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(rc));
    return WEXITSTATUS(rc);
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("ydcat_test_" + name);
}

}  // namespace

TEST_CASE("empty pipeline passes with no steps", "[cli]") {
    ScenarioRunner R;
    ScenarioResult r = R.run(json{{"name", "empty"}, {"steps", json::array()}});
    CHECK(r.passed());
    CHECK(r.exit_code == kExitPass);
    CHECK(r.steps.empty());
}

TEST_CASE("scenario exit codes", "[cli]") {
    ScenarioRunner R;
    SECTION("unknown operation is rejected before any step") {
        json s = {{"steps", {{{"op", "validate_hopf"}, {"provider", fixture_provider("z2")}}, {{"op", "frobnicate"}}}}};
        ScenarioResult r = R.run(s);
        CHECK(r.exit_code == kExitUnknownOp);
        CHECK(r.steps.empty());
    }
    SECTION("missing fixture") {
        json s = {{"steps", {{{"op", "validate_hopf"}, {"provider", "finite:" + kFixtures + "/missing.json"}}}}};
        CHECK(R.run(s).exit_code == kExitParse);
    }
    SECTION("malformed provider") {
        json s = {{"steps", {{{"op", "irreps"}, {"provider", "suq2:q=2,L=1"}}}}};
        CHECK(R.run(s).exit_code == kExitParse);
    }
    SECTION("truncation") {
        json step = {{"op", "poisson_finite"}, {"provider", "suq2:q=1/2,L=1"}, {"measure", {{"1/2", 1}}}};
        CHECK(R.run(json{{"steps", {step}}}).exit_code == kExitTruncation);
        step["expect_truncation"] = true;
        CHECK(R.run(json{{"steps", {step}}}).exit_code == kExitPass);
    }
    SECTION("failed expectation") {
        json s = {{"steps", {{{"op", "irreps"}, {"provider", fixture_provider("s3")}, {"expect", {{"dims", {1, 2, 2}}}}}}}};
        CHECK(R.run(s).exit_code == kExitFail);
    }
}

TEST_CASE("inline roundtrip scenario on adjoint C[S3]", "[cli]") {
    ScenarioRunner R;
    json s = {{"name", "roundtrip"},
              {"tol", 1e-8},
              {"steps", {{{"op", "roundtrip"}, {"provider", fixture_provider("s3")}, {"algebra", "adjoint"}}}}};
    ScenarioResult r = R.run(s);
    REQUIRE(r.steps.size() == 1);
    CHECK(r.passed());
    CHECK(r.steps[0].report.max_residual() <= 1e-8);
}

TEST_CASE("reports are byte-identical across runs", "[cli]") {
    for (const char* name : {"criterion02.json", "criterion07.json", "criterion09.json"}) {
        ScenarioRunner a, b;
        std::string first = scenario_to_json(a.run_file(kScenarios + "/" + name), false).dump();
        std::string second = scenario_to_json(b.run_file(kScenarios + "/" + name), false).dump();
        CHECK(first == second);
    }
}

TEST_CASE("report round trip through JSON", "[cli]") {
    ScenarioRunner R;
    ScenarioResult r = R.run_file(kScenarios + "/criterion06.json");
    REQUIRE(r.passed());
    for (const auto& st : r.steps) {
        json j = encode_report(st.report);
        CHECK(encode_report(decode_report(j)) == j);
    }
}

TEST_CASE("command line exit codes", "[cli]") {
    const std::string z2 = kFixtures + "/z2.json";
    CHECK(cli("validate --fixture " + z2) == kExitPass);
    CHECK(cli("irreps --provider finite:" + kFixtures + "/s3.json --fusion u2xu2") == kExitPass);
    CHECK(cli("frobnicate") == kExitUnknownOp);
    CHECK(cli("validate --fixture " + kFixtures + "/missing.json") == kExitParse);
    auto bad = temp_file("bad.json");
    {
        std::ofstream out(bad);
        out << "{\"format\": ";
    }
    CHECK(cli("validate --fixture " + bad.string()) == kExitParse);
    CHECK(cli("poisson --provider 'suq2:q=1/2,L=1' --measure 1/2=1") == kExitTruncation);
    CHECK(cli("coideal --fixture " + kFixtures + "/kac_paljutkin.json") == kExitPass);
    CHECK(cli("run " + kScenarios + "/criterion06.json") == kExitPass);
}

TEST_CASE("command line writes a JSON report", "[cli]") {
    auto path = temp_file("report.json");
    std::filesystem::remove(path);
    REQUIRE(cli("roundtrip --fixture " + kFixtures + "/z2.json --algebra adjoint --seed 3 --report " + path.string()) ==
            kExitPass);
    json j = io::read_json_file(path.string());
    CHECK(j["op"] == "roundtrip");
    CHECK(j["status"] == "pass");
    CHECK(j.contains("report"));
}
