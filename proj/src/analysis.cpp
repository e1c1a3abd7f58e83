#include "fmea/analysis.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace fmea {

namespace {

void require_valid(const Worksheet& ws) {
    const auto violations = validate_worksheet(ws);
    if (!violations.empty()) {
        throw std::invalid_argument("worksheet is invalid: " + describe(violations.front()));
    }
}

std::size_t label_index(ClassLabel label) noexcept { return static_cast<std::size_t>(label); }

}  // namespace

Rpn::Rpn(int value) : value_(value) {
    if (value < kMin || value > kMax) {
        throw std::out_of_range("RPN " + std::to_string(value) + " is outside [1, 1000]");
    }
}

ClassBands::ClassBands(int b1, int b2, int b3) : cuts_{b1, b2, b3} {
    if (!(1 < b1 && b1 < b2 && b2 < b3 && b3 <= Rpn::kMax)) {
        throw std::invalid_argument("class bands must satisfy 1 < b1 < b2 < b3 <= 1000, got " +
                                    std::to_string(b1) + "," + std::to_string(b2) + "," +
                                    std::to_string(b3));
    }
}

std::string describe(const ClassBands& bands) {
    const auto& [b1, b2, b3] = bands.thresholds();
    return "Negligible < " + std::to_string(b1) + " <= Marginal < " + std::to_string(b2) +
           " <= Critical < " + std::to_string(b3) + " <= Catastrophic";
}

const MatrixCell& RiskMatrix::at(int severity, int second) const {
    if (severity < 1 || severity > 10 || second < 1 || second > 10) {
        throw std::out_of_range("risk matrix cell (" + std::to_string(severity) + ", " +
                                std::to_string(second) + ") is outside 1..10");
    }
    return cells[static_cast<std::size_t>(severity - 1)][static_cast<std::size_t>(second - 1)];
}

std::size_t RiskMatrix::total() const noexcept {
    std::size_t n = 0;
    for (const auto& row : cells) {
        for (const auto& cell : row) {
            n += cell.count;
        }
    }
    return n;
}

std::size_t RiskMatrix::max_count() const noexcept {
    std::size_t n = 0;
    for (const auto& row : cells) {
        for (const auto& cell : row) {
            n = std::max(n, cell.count);
        }
    }
    return n;
}

std::string_view second_axis_name(MatrixAxes axes) noexcept {
    return axes == MatrixAxes::SeverityVsDetection ? "Detection" : "Occurrence";
}

Rpn rpn(const RatingTriple& triple) {
    if (!triple.valid()) {
        throw std::invalid_argument("rating triple (" + std::to_string(triple.severity) + "," +
                                    std::to_string(triple.occurrence) + "," +
                                    std::to_string(triple.detection) + ") is outside [1, 10]");
    }
    return Rpn{triple.severity * triple.occurrence * triple.detection};
}

ClassLabel classify(Rpn value, const ClassBands& bands) noexcept {
    const auto& [b1, b2, b3] = bands.thresholds();
    const int v = value.value();
    if (v >= b3) {
        return ClassLabel::Catastrophic;
    }
    if (v >= b2) {
        return ClassLabel::Critical;
    }
    if (v >= b1) {
        return ClassLabel::Marginal;
    }
    return ClassLabel::Negligible;
}

std::vector<RpnResult> rank(const Worksheet& ws, const ClassBands& bands) {
    require_valid(ws);
    std::vector<std::size_t> order(ws.entries.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto key = [&](std::size_t i) {
        const auto& e = ws.entries[i];
        const auto& t = e.triple;
        // Negated numbers sort descending; names ascending.
        return std::tuple(-rpn(t).value(), -t.severity, -t.occurrence, -t.detection,
                          std::string_view(e.component), std::string_view(e.failure_mode), i);
    };
    std::ranges::sort(order, {}, key);

    std::vector<RpnResult> results;
    results.reserve(order.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const auto& e = ws.entries[order[pos]];
        RpnResult r;
        r.entry_index = order[pos];
        r.rpn = rpn(e.triple);
        r.rank = pos + 1;
        r.computed_class = classify(r.rpn, bands);
        r.declared_class = e.declared_classification;
        r.discrepancy = r.declared_class.has_value() && *r.declared_class != r.computed_class;
        results.push_back(r);
    }
    return results;
}

std::vector<CollisionGroup> collisions(const Worksheet& ws) {
    require_valid(ws);
    std::map<int, std::vector<std::size_t>, std::greater<>> by_rpn;
    for (std::size_t i = 0; i < ws.entries.size(); ++i) {
        by_rpn[rpn(ws.entries[i].triple).value()].push_back(i);
    }
    std::vector<CollisionGroup> groups;
    for (auto& [value, members] : by_rpn) {
        if (members.size() >= 2) {
            groups.push_back({Rpn{value}, std::move(members)});
        }
    }
    return groups;
}

std::vector<RpnResult> discrepancies(const Worksheet& ws, const ClassBands& bands) {
    auto results = rank(ws, bands);
    std::erase_if(results, [](const RpnResult& r) { return !r.discrepancy; });
    return results;
}

RiskMatrix risk_matrix(const Worksheet& ws, MatrixAxes axes) {
    require_valid(ws);
    RiskMatrix m;
    m.axes = axes;
    for (std::size_t i = 0; i < ws.entries.size(); ++i) {
        const auto& t = ws.entries[i].triple;
        const int second = axes == MatrixAxes::SeverityVsDetection ? t.detection : t.occurrence;
        auto& cell =
            m.cells[static_cast<std::size_t>(t.severity - 1)][static_cast<std::size_t>(second - 1)];
        ++cell.count;
        cell.members.push_back(i);
    }
    return m;
}

std::string RpnStatistics::mean_fixed2(std::size_t count) const {
    if (count == 0) {
        return "n/a";
    }
    // Round half up in hundredths using integer arithmetic only.
    const auto n = static_cast<std::int64_t>(count);
    const std::int64_t hundredths = (sum * 200 + n) / (2 * n);
    std::string frac = std::to_string(hundredths % 100);
    if (frac.size() < 2) {
        frac.insert(0, "0");
    }
    return std::to_string(hundredths / 100) + "." + frac;
}

Summary summary_stats(const Worksheet& ws, const ClassBands& bands) {
    require_valid(ws);
    Summary s;
    s.count = ws.entries.size();
    for (const auto& e : ws.entries) {
        const Rpn value = rpn(e.triple);
        if (!s.stats) {
            s.stats = RpnStatistics{value.value(), value.value(), 0};
        }
        s.stats->min = std::min(s.stats->min, value.value());
        s.stats->max = std::max(s.stats->max, value.value());
        s.stats->sum += value.value();
        ++s.computed[label_index(classify(value, bands))];
        if (e.declared_classification) {
            ++s.declared[label_index(*e.declared_classification)];
        } else {
            ++s.undeclared;
        }
    }
    return s;
}

}  // namespace fmea
