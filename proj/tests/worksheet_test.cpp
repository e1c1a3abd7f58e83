#include "fmea/worksheet.hpp"

#include <stdexcept>
#include <string>

#include "doctest.h"

using namespace fmea;

namespace {

const FmeaEntry& find(const Worksheet& ws, std::string_view component) {
    for (const auto& e : ws.entries) {
        if (e.component == component) {
            return e;
        }
    }
    FAIL("component not in fixture: " << component);
    throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("class labels parse case-insensitively") {
    CHECK(parse_class_label("critical") == ClassLabel::Critical);
    CHECK(parse_class_label(" CATASTROPHIC ") == ClassLabel::Catastrophic);
    CHECK(parse_class_label("Marginal") == ClassLabel::Marginal);
    CHECK(parse_class_label("negligible") == ClassLabel::Negligible);
    CHECK_FALSE(parse_class_label("severe").has_value());
    CHECK_FALSE(parse_class_label("").has_value());
    CHECK(to_string(ClassLabel::Critical) == "Critical");
}

TEST_CASE("validate_entry") {
    const auto& ems = paper_fixture().entries.front();
    CHECK(validate_entry(ems).empty());

    auto bad = ems;
    bad.triple.severity = 0;
    auto v = validate_entry(bad);
    REQUIRE(v.size() == 1);
    CHECK(v[0].field == "severity");

    bad = ems;
    bad.component.clear();
    v = validate_entry(bad);
    REQUIRE(v.size() == 1);
    CHECK(v[0].field == "component");

    bad.component = "   ";
    bad.triple = {11, 0, 4};
    v = validate_entry(bad);
    REQUIRE(v.size() == 3);
    CHECK(v[0].field == "component");
    CHECK(v[1].field == "severity");
    CHECK(v[2].field == "occurrence");
}

TEST_CASE("validate_worksheet") {
    CHECK(validate_worksheet(paper_fixture()).empty());
    CHECK(validate_worksheet(Worksheet{}).empty());

    Worksheet ws;
    ws.entries.push_back({.component = "RTU", .failure_mode = "spoofing", .triple = {5, 7, 6}});
    ws.entries.push_back({.component = "PMU", .failure_mode = "spoofing", .triple = {5, 4, 6}});
    ws.entries.push_back({.component = "RTU", .failure_mode = "spoofing", .triple = {4, 4, 4}});
    auto v = validate_worksheet(ws);
    REQUIRE(v.size() == 1);
    CHECK(v[0].related == std::vector<std::size_t>{0, 2});
    CHECK(v[0].entry_index == 2);

    // Same component, different failure mode is allowed.
    ws.entries[2].failure_mode = "jamming";
    CHECK(validate_worksheet(ws).empty());

    ws.entries[1].triple.detection = 42;
    v = validate_worksheet(ws);
    REQUIRE(v.size() == 1);
    CHECK(v[0].entry_index == 1);
    CHECK(v[0].field == "detection");
    CHECK(describe(v[0]).find("entry 1") != std::string::npos);
}

TEST_CASE("fixture contents") {
    const auto& ws = paper_fixture();
    CHECK(ws.entries.size() == 15);

    const auto& ems = find(ws, "Energy Management System (EMS)");
    CHECK(ems.triple == RatingTriple{10, 7, 8});
    CHECK(ems.declared_classification == ClassLabel::Catastrophic);
    CHECK(ems.prevention_controls.find("intrusion detection systems") != std::string::npos);

    const auto& relay = find(ws, "Relay");
    CHECK(relay.triple == RatingTriple{8, 6, 4});
    CHECK(relay.declared_classification == ClassLabel::Marginal);

    // Published ratings and classes, one row per component.
    struct Expected {
        const char* component;
        RatingTriple triple;
        ClassLabel declared;
    };
    const Expected table[] = {
        {"Database", {4, 6, 4}, ClassLabel::Marginal},
        {"Server", {7, 6, 4}, ClassLabel::Marginal},
        {"Intelligent electronic device (IED)", {7, 5, 4}, ClassLabel::Critical},
        {"Generator controller", {6, 5, 4}, ClassLabel::Critical},
        {"Automatic transfer switch (ATS)", {5, 4, 4}, ClassLabel::Marginal},
        {"Renewable energy controller", {6, 5, 4}, ClassLabel::Marginal},
        {"Remote terminal unit (RTU)", {5, 7, 6}, ClassLabel::Critical},
        {"Phasor measurement unit (PMU)", {5, 4, 6}, ClassLabel::Marginal},
        {"Disconnect switch", {7, 4, 4}, ClassLabel::Marginal},
        {"PHEV", {9, 5, 4}, ClassLabel::Catastrophic},
        {"PHEV supply equipment", {8, 5, 4}, ClassLabel::Critical},
        {"Relay", {8, 6, 4}, ClassLabel::Marginal},
        {"Energy Management System (EMS)", {10, 7, 8}, ClassLabel::Catastrophic},
        {"Human-machine interface (HMI)", {8, 6, 7}, ClassLabel::Critical},
        {"Smart meter", {7, 5, 6}, ClassLabel::Marginal},
    };
    for (const auto& row : table) {
        CAPTURE(row.component);
        const auto& e = find(ws, row.component);
        CHECK(e.triple == row.triple);
        CHECK(e.declared_classification == row.declared);
        CHECK_FALSE(e.failure_mode.empty());
    }
}
