#include "fmea/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args, const std::string& stdin_text = {}) {
    std::istringstream in(stdin_text);
    std::ostringstream out;
    std::ostringstream err;
    const int code = fmea::cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

const std::string kFixture = std::string(FMEA_SOURCE_DIR) + "/data/microgrid_fmea.csv";
const std::string kFixtureJson = std::string(FMEA_SOURCE_DIR) + "/data/microgrid_fmea.json";

std::string temp_file(const std::string& name, const std::string& contents) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path, std::ios::binary) << contents;
    return path.string();
}

}  // namespace

TEST_CASE("analyze --format json") {
    const auto r = invoke({"analyze", kFixture, "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(r.err.empty());
    const auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc["results"].is_array());
    CHECK(doc["results"].size() == 15);
    CHECK(doc["results"][0]["rpn"] == 560);
    CHECK(doc["bands"] == nlohmann::json::array({100, 200, 500}));
    CHECK(doc["collisions"].size() == 2);
    CHECK(doc["discrepancies"].size() == 7);
}

TEST_CASE("usage errors exit 2 with no payload") {
    auto r = invoke({"frobnicate"});
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(r.err.find("Usage") != std::string::npos);

    r = invoke({});
    CHECK(r.code == 2);
    r = invoke({"analyze", kFixture, "--bogus"});
    CHECK(r.code == 2);
    r = invoke({"analyze", kFixture, "--bands", "200,100,500"});
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    r = invoke({"analyze", kFixture, "--bands", "100,200"});
    CHECK(r.code == 2);
    r = invoke({"analyze", kFixture, "--bands", "a,b,c"});
    CHECK(r.code == 2);
    r = invoke({"analyze", kFixture, "--format", "svg"});
    CHECK(r.code == 2);
    r = invoke({"matrix", kFixture});
    CHECK(r.code == 2);
    r = invoke({"simulate", kFixture, "--trials", "0"});
    CHECK(r.code == 2);
    r = invoke({"simulate"});
    CHECK(r.code == 2);
    r = invoke({"simulate", kFixture, "--rating", "4"});
    CHECK(r.code == 2);
    r = invoke({"simulate", "--rating", "11"});
    CHECK(r.code == 2);
}

TEST_CASE("data failures exit 1 with located diagnostics") {
    const auto bad = temp_file("fmea_cli_bad.csv",
                               "component,failure_mode,severity,occurrence,detection\n"
                               "A,m,5,5,5\nB,m,5,5,5\nC,m,x,5,5\n");
    auto r = invoke({"validate", bad});
    CHECK(r.code == 1);
    CHECK(r.out.empty());
    CHECK(r.err.find("row 4") != std::string::npos);
    CHECK(r.err.find("severity") != std::string::npos);

    const auto bad3 = temp_file("fmea_cli_bad3.csv",
                                "component,failure_mode,severity,occurrence,detection\n"
                                "A,m,5,5,5\nC,m,x,5,5\n");
    r = invoke({"validate", bad3});
    CHECK(r.code == 1);
    CHECK(r.err.find("row 3, column \"severity\"") != std::string::npos);

    r = invoke({"analyze", "/nonexistent/worksheet.csv"});
    CHECK(r.code == 1);
    CHECK(r.out.empty());

    r = invoke({"analyze", temp_file("fmea_cli.txt", "x")});
    CHECK(r.code == 1);

    r = invoke({"validate", temp_file("fmea_cli_bad.json", "{\"entries\": [1,]}")});
    CHECK(r.code == 1);
    CHECK(r.err.find("line 1") != std::string::npos);
}

TEST_CASE("validate accepts the fixture") {
    for (const auto& path : {kFixture, kFixtureJson}) {
        const auto r = invoke({"validate", path});
        CHECK(r.code == 0);
        CHECK(r.out.find("valid, 15 entries") != std::string::npos);
    }
}

TEST_CASE("dataset piped into analyze matches analyzing the shipped file") {
    const auto dataset = invoke({"dataset"});
    REQUIRE(dataset.code == 0);
    const auto piped = invoke({"analyze", "-"}, dataset.out);
    const auto direct = invoke({"analyze", kFixture});
    REQUIRE(piped.code == 0);
    CHECK(piped.out == direct.out);
    // JSON input carries a title but analyze output does not depend on it.
    CHECK(invoke({"analyze", kFixtureJson}).out == direct.out);
}

TEST_CASE("other subcommands") {
    auto r = invoke({"matrix", kFixture, "--axes", "s-o", "--format", "svg"});
    CHECK(r.code == 0);
    CHECK(r.out.starts_with("<svg"));

    r = invoke({"report", kFixture});
    CHECK(r.code == 0);
    CHECK(r.out.starts_with("# FMEA report"));

    r = invoke({"simulate", kFixture, "--trials", "1000000", "--seed", "9", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.starts_with("component,rating_in,trials,failures,empirical_rate,rating_out,agrees\n"));

    r = invoke({"simulate", "--rating", "10", "--trials", "1000", "--seed", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("rating_in") == 0);
    CHECK(r.out == invoke({"simulate", "--rating", "10", "--trials", "1000", "--seed", "1"}).out);

    r = invoke({"dataset", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["entries"].size() == 15);

    r = invoke({"scales", "--scale", "d"});
    CHECK(r.code == 0);
    CHECK(r.out.find("detection,1,Almost certain,") != std::string::npos);

    r = invoke({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("analyze") != std::string::npos);
}
