// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include "fmea/analysis.hpp"
#include "fmea/cli.hpp"
#include "fmea/ingest.hpp"
#include "fmea/scales.hpp"
#include "fmea/simulate.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"

using namespace fmea;

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
    bool ok = true;
    std::string detail;

    void expect(bool condition, const std::string& what) {
        if (!condition && ok) {
            ok = false;
            detail = what;
        }
    }
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::size_t index_of(const Worksheet& ws, std::string_view component) {
    for (std::size_t i = 0; i < ws.entries.size(); ++i) {
        if (ws.entries[i].component == component) {
            return i;
        }
    }
    return ws.entries.size();
}

const std::string kSource = FMEA_SOURCE_DIR;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Check rpn_reproduction() {
    Check c;
    const auto start = Clock::now();
    const std::map<std::string, int> published{
        {"Database", 96},
        {"Server", 168},
        {"Intelligent electronic device (IED)", 140},
        {"Generator controller", 120},
        {"Automatic transfer switch (ATS)", 80},
        {"Renewable energy controller", 120},
        {"Remote terminal unit (RTU)", 210},
        {"Phasor measurement unit (PMU)", 120},
        {"Disconnect switch", 112},
        {"PHEV", 180},
        {"PHEV supply equipment", 160},
        {"Relay", 192},
        {"Energy Management System (EMS)", 560},
        {"Human-machine interface (HMI)", 336},
        {"Smart meter", 210},
    };
    const auto& ws = paper_fixture();
    c.expect(ws.entries.size() == 15, "fixture does not have 15 entries");
    for (const auto& [component, value] : published) {
        const auto i = index_of(ws, component);
        c.expect(i < ws.entries.size(), component + " missing");
        if (i < ws.entries.size()) {
            const int got = rpn(ws.entries[i].triple).value();
            c.expect(got == value, component + ": RPN " + std::to_string(got) + " != " +
                                       std::to_string(value));
        }
    }
    const double elapsed = seconds_since(start);
    c.expect(elapsed < 1.0, "took " + std::to_string(elapsed) + " s");
    return c;
}

Check top_three() {
    Check c;
    const auto& ws = paper_fixture();
    const auto results = rank(ws, ClassBands::defaults());
    const char* expected[] = {"Energy Management System (EMS)", "Human-machine interface (HMI)",
                              "Smart meter"};
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& got = ws.entries[results.at(i).entry_index].component;
        c.expect(got == expected[i] && results[i].rank == i + 1,
                 "rank " + std::to_string(i + 1) + " is " + got);
    }
    return c;
}

Check collision_detection() {
    Check c;
    const auto& ws = paper_fixture();
    const auto groups = collisions(ws);
    c.expect(groups.size() == 2, "expected 2 collision groups, got " +
                                     std::to_string(groups.size()));
    if (groups.size() == 2) {
        c.expect(groups[0].rpn.value() == 210 && groups[0].members.size() == 2,
                 "first group is not RPN 210 with 2 members");
        c.expect(groups[1].rpn.value() == 120 && groups[1].members.size() == 3,
                 "second group is not RPN 120 with 3 members");
    }
    // All-pairs oracle.
    std::map<int, std::set<std::size_t>, std::greater<>> oracle;
    for (std::size_t i = 0; i < ws.entries.size(); ++i) {
        for (std::size_t j = i + 1; j < ws.entries.size(); ++j) {
            const auto& a = ws.entries[i].triple;
            const auto& b = ws.entries[j].triple;
            if (a.severity * a.occurrence * a.detection == b.severity * b.occurrence * b.detection) {
                oracle[a.severity * a.occurrence * a.detection].insert({i, j});
            }
        }
    }
    c.expect(oracle.size() == groups.size(), "oracle group count differs");
    auto it = oracle.begin();
    for (const auto& g : groups) {
        if (it == oracle.end()) {
            break;
        }
        c.expect(it->first == g.rpn.value() &&
                     it->second == std::set<std::size_t>(g.members.begin(), g.members.end()),
                 "group at RPN " + std::to_string(g.rpn.value()) + " differs from oracle");
        ++it;
    }
    return c;
}

Check discrepancy_report() {
    Check c;
    const auto& ws = paper_fixture();
    const auto flagged = discrepancies(ws, ClassBands{100, 200, 500});
    std::set<std::string> got;
    for (const auto& r : flagged) {
        got.insert(ws.entries[r.entry_index].component);
    }
    // Hand classification against (100, 200, 500) compared with the published column.
    std::set<std::string> oracle;
    const std::map<std::string, std::pair<int, const char*>> published{
        {"Database", {96, "Marginal"}},
        {"Server", {168, "Marginal"}},
        {"Intelligent electronic device (IED)", {140, "Critical"}},
        {"Generator controller", {120, "Critical"}},
        {"Automatic transfer switch (ATS)", {80, "Marginal"}},
        {"Renewable energy controller", {120, "Marginal"}},
        {"Remote terminal unit (RTU)", {210, "Critical"}},
        {"Phasor measurement unit (PMU)", {120, "Marginal"}},
        {"Disconnect switch", {112, "Marginal"}},
        {"PHEV", {180, "Catastrophic"}},
        {"PHEV supply equipment", {160, "Critical"}},
        {"Relay", {192, "Marginal"}},
        {"Energy Management System (EMS)", {560, "Catastrophic"}},
        {"Human-machine interface (HMI)", {336, "Critical"}},
        {"Smart meter", {210, "Marginal"}},
    };
    for (const auto& [name, row] : published) {
        const int v = row.first;
        const std::string band = v >= 500   ? "Catastrophic"
                                 : v >= 200 ? "Critical"
                                 : v >= 100 ? "Marginal"
                                            : "Negligible";
        if (band != row.second) {
            oracle.insert(name);
        }
    }
    const std::set<std::string> named{"Database", "Automatic transfer switch (ATS)",
                                      "Intelligent electronic device (IED)",
                                      "Generator controller", "Smart meter", "PHEV",
                                      "PHEV supply equipment"};
    c.expect(flagged.size() == 7, "expected 7 discrepancies, got " + std::to_string(flagged.size()));
    c.expect(got == oracle, "discrepancies differ from the hand oracle");
    c.expect(got == named, "discrepancies differ from the named list");
    return c;
}

Check matrix_conservation() {
    Check c;
    const auto& ws = paper_fixture();
    const auto sd = risk_matrix(ws, MatrixAxes::SeverityVsDetection);
    const auto so = risk_matrix(ws, MatrixAxes::SeverityVsOccurrence);
    c.expect(sd.total() == 15, "S x D total " + std::to_string(sd.total()));
    c.expect(so.total() == 15, "S x O total " + std::to_string(so.total()));
    c.expect(so.at(5, 4).count == 2, "(S=5,O=4) = " + std::to_string(so.at(5, 4).count));
    c.expect(sd.at(7, 4).count == 3, "(S=7,D=4) = " + std::to_string(sd.at(7, 4).count));
    return c;
}

Check scale_round_trip() {
    Check c;
    for (int r = 1; r <= 10; ++r) {
        const int back = rating_from_rate(occurrence_rate(Rating{r}).probability()).value();
        c.expect(back == r, "rating " + std::to_string(r) + " came back as " +
                                std::to_string(back));
    }
    return c;
}

Check simulation_recovery() {
    Check c;
    const auto start = Clock::now();
    for (int r = 1; r <= 10; ++r) {
        const std::uint64_t trials = r <= 2 ? 100'000'000 : 1'000'000;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const auto result = simulate_occurrence(Rating{r}, {trials, seed * 7919});
            c.expect(result.rating_out.value() == r,
                     "rating " + std::to_string(r) + " seed " + std::to_string(seed * 7919) +
                         " recovered as " + std::to_string(result.rating_out.value()));
        }
    }
    const double elapsed = seconds_since(start);
    c.expect(elapsed < 30.0, "took " + std::to_string(elapsed) + " s");
    return c;
}

Check ingest_round_trip() {
    Check c;
    const auto fixture = parse_json(emit_json(paper_fixture()));
    c.expect(ok(fixture) && std::get<Worksheet>(fixture) == paper_fixture(),
             "fixture does not round-trip");
    testing::Generator gen(8);
    for (int i = 0; i < 100; ++i) {
        const auto ws = gen.worksheet();
        const auto back = parse_json(emit_json(ws));
        c.expect(ok(back) && std::get<Worksheet>(back) == ws,
                 "random worksheet " + std::to_string(i) + " does not round-trip");
    }
    return c;
}

Check determinism_goldens() {
    Check c;
    const std::string fixture = kSource + "/data/microgrid_fmea.csv";
    const std::vector<std::pair<std::vector<std::string>, std::string>> cases{
        {{"analyze", fixture}, "analyze_fixture.md"},
        {{"analyze", fixture, "--format", "csv"}, "analyze_fixture.csv"},
        {{"analyze", fixture, "--format", "json"}, "analyze_fixture.json"},
        {{"report", fixture}, "report_fixture.md"},
        {{"matrix", fixture, "--axes", "s-d"}, "matrix_s-d.txt"},
        {{"matrix", fixture, "--axes", "s-o"}, "matrix_s-o.txt"},
        {{"matrix", fixture, "--axes", "s-d", "--format", "csv"}, "matrix_s-d.csv"},
        {{"matrix", fixture, "--axes", "s-o", "--format", "csv"}, "matrix_s-o.csv"},
        {{"matrix", fixture, "--axes", "s-d", "--format", "svg"}, "matrix_s-d.svg"},
        {{"matrix", fixture, "--axes", "s-o", "--format", "svg"}, "matrix_s-o.svg"},
    };
    for (const auto& [args, golden] : cases) {
        std::string runs[2];
        for (auto& run : runs) {
            std::istringstream in;
            std::ostringstream out;
            std::ostringstream err;
            c.expect(cli::run(args, in, out, err) == 0, golden + ": command failed");
            run = out.str();
        }
        c.expect(runs[0] == runs[1], golden + ": output differs between runs");
        c.expect(runs[0] == slurp(kSource + "/tests/golden/" + golden),
                 golden + ": output differs from golden file");
    }
    return c;
}

Check property_suite() {
    Check c;
    testing::Generator gen(10);
    for (int i = 0; i < 10000 && c.ok; ++i) {
        const auto t = gen.triple();
        const int v = rpn(t).value();
        c.expect(v >= 1 && v <= 1000, "RPN out of bounds");
        if (t.severity < 10) c.expect(rpn({t.severity + 1, t.occurrence, t.detection}).value() > v, "S not monotone");
        if (t.occurrence < 10) c.expect(rpn({t.severity, t.occurrence + 1, t.detection}).value() > v, "O not monotone");
        if (t.detection < 10) c.expect(rpn({t.severity, t.occurrence, t.detection + 1}).value() > v, "D not monotone");
    }
    for (int i = 0; i < 10000 && c.ok; ++i) {
        const auto ws = gen.worksheet(20, false);
        const auto results = rank(ws, ClassBands::defaults());
        std::vector<std::size_t> ranks;
        std::vector<std::size_t> indices;
        for (const auto& r : results) {
            ranks.push_back(r.rank);
            indices.push_back(r.entry_index);
        }
        std::vector<std::size_t> expected(ws.entries.size());
        std::iota(expected.begin(), expected.end(), std::size_t{0});
        std::ranges::sort(indices);
        c.expect(indices == expected, "rank output is not a permutation");
        std::ranges::transform(expected, expected.begin(), [](std::size_t k) { return k + 1; });
        c.expect(ranks == expected, "ranks are not 1..n");
        for (auto axes : {MatrixAxes::SeverityVsDetection, MatrixAxes::SeverityVsOccurrence}) {
            c.expect(risk_matrix(ws, axes).total() == ws.entries.size(), "matrix loses entries");
        }
    }
    return c;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Check()>>> criteria{
        {"AC1  RPN reproduction (15 published values, exact, < 1 s)", rpn_reproduction},
        {"AC2  top three: EMS, HMI, Smart meter", top_three},
        {"AC3  collisions: RPN 210 x2 and RPN 120 x3, all-pairs oracle", collision_detection},
        {"AC4  discrepancies: 7 entries under bands (100,200,500)", discrepancy_report},
        {"AC5  matrix conservation and spot cells", matrix_conservation},
        {"AC6  occurrence scale round trip", scale_round_trip},
        {"AC7  simulation recovery, 20 seeds per rating, < 30 s", simulation_recovery},
        {"AC8  JSON round trip: fixture + 100 random worksheets", ingest_round_trip},
        {"AC9  determinism and golden files", determinism_goldens},
        {"AC10 property suite over 10^4 triples and worksheets", property_suite},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Check result;
        try {
            result = run();
        } catch (const std::exception& e) {
            result.ok = false;
            result.detail = std::string("exception: ") + e.what();
        }
        std::cout << (result.ok ? "PASS  " : "FAIL  ") << name;
        if (!result.ok) {
            std::cout << "  -- " << result.detail;
            ++failures;
        }
        std::cout << '\n';
    }
    std::cout << (failures == 0 ? "all acceptance criteria passed\n"
                                : std::to_string(failures) + " acceptance criteria failed\n");
    return failures == 0 ? 0 : 1;
}
