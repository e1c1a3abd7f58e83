#include "fmea/worksheet.hpp"

#include "fmea/scales.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <utility>

namespace fmea {

bool RatingTriple::valid() const noexcept {
    return Rating::in_range(severity) && Rating::in_range(occurrence) &&
           Rating::in_range(detection);
}

std::string_view to_string(ClassLabel label) noexcept {
    switch (label) {
        case ClassLabel::Negligible:
            return "Negligible";
        case ClassLabel::Marginal:
            return "Marginal";
        case ClassLabel::Critical:
            return "Critical";
        case ClassLabel::Catastrophic:
            break;
    }
    return "Catastrophic";
}

std::optional<ClassLabel> parse_class_label(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return std::nullopt;
    }
    text = text.substr(first, text.find_last_not_of(" \t\r\n") - first + 1);
    for (auto label : {ClassLabel::Negligible, ClassLabel::Marginal, ClassLabel::Critical,
                       ClassLabel::Catastrophic}) {
        const auto name = to_string(label);
        if (std::ranges::equal(text, name, [](char a, char b) {
                return std::tolower(static_cast<unsigned char>(a)) ==
                       std::tolower(static_cast<unsigned char>(b));
            })) {
            return label;
        }
    }
    return std::nullopt;
}

std::string describe(const Violation& violation) {
    std::string out;
    if (violation.entry_index) {
        out += "entry " + std::to_string(*violation.entry_index) + ": ";
    }
    out += violation.field + ": " + violation.message;
    return out;
}

std::vector<Violation> validate_entry(const FmeaEntry& entry) {
    std::vector<Violation> out;
    if (entry.component.find_first_not_of(" \t\r\n") == std::string::npos) {
        out.push_back({std::nullopt, "component", "component name is empty", {}});
    }
    const std::pair<const char*, int> ratings[] = {
        {"severity", entry.triple.severity},
        {"occurrence", entry.triple.occurrence},
        {"detection", entry.triple.detection},
    };
    for (const auto& [field, value] : ratings) {
        if (!Rating::in_range(value)) {
            out.push_back({std::nullopt, field,
                           "rating " + std::to_string(value) + " is outside [1, 10]", {}});
        }
    }
    return out;
}

std::vector<Violation> validate_worksheet(const Worksheet& ws) {
    std::vector<Violation> out;
    std::map<std::pair<std::string_view, std::string_view>, std::vector<std::size_t>> seen;
    for (std::size_t i = 0; i < ws.entries.size(); ++i) {
        const auto& entry = ws.entries[i];
        for (auto& v : validate_entry(entry)) {
            v.entry_index = i;
            out.push_back(std::move(v));
        }
        seen[{entry.component, entry.failure_mode}].push_back(i);
    }
    std::vector<Violation> duplicates;
    for (const auto& [key, indices] : seen) {
        if (indices.size() < 2) {
            continue;
        }
        std::string listing;
        for (auto idx : indices) {
            listing += (listing.empty() ? "" : ", ") + std::to_string(idx);
        }
        duplicates.push_back({indices.back(), "component,failure_mode",
                              "duplicate (component, failure_mode) pair (\"" +
                                  std::string(key.first) + "\", \"" + std::string(key.second) +
                                  "\") at entries " + listing,
                              indices});
    }
    std::ranges::sort(duplicates, {}, [](const Violation& v) { return v.related.front(); });
    out.insert(out.end(), std::make_move_iterator(duplicates.begin()),
               std::make_move_iterator(duplicates.end()));
    return out;
}

}  // namespace fmea
