#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fmea {

/// Severity, occurrence and detection ratings of one failure mode.
/// The fields are raw integers so that out-of-range worksheet data can be
/// held and reported; `valid()` checks the 1..10 scale.
struct RatingTriple {
    int severity = 1;
    int occurrence = 1;
    int detection = 1;

    [[nodiscard]] bool valid() const noexcept;

    friend bool operator==(const RatingTriple&, const RatingTriple&) = default;
};

enum class ClassLabel { Negligible, Marginal, Critical, Catastrophic };

[[nodiscard]] std::string_view to_string(ClassLabel label) noexcept;

/// Case-insensitive; surrounding whitespace is ignored.
[[nodiscard]] std::optional<ClassLabel> parse_class_label(std::string_view text);

struct FmeaEntry {
    std::string component;
    std::string failure_mode;
    RatingTriple triple;
    std::string effect;
    std::string end_effect;
    std::string cause;
    std::string prevention_controls;
    std::string detection_controls;
    std::optional<ClassLabel> declared_classification;

    friend bool operator==(const FmeaEntry&, const FmeaEntry&) = default;
};

struct Worksheet {
    std::string title;
    std::vector<FmeaEntry> entries;

    friend bool operator==(const Worksheet&, const Worksheet&) = default;
};

struct Violation {
    std::optional<std::size_t> entry_index;
    std::string field;
    std::string message;
    /// Other entries involved, e.g. the earlier duplicate of a
    /// (component, failure_mode) pair.
    std::vector<std::size_t> related;

    friend bool operator==(const Violation&, const Violation&) = default;
};

[[nodiscard]] std::string describe(const Violation& violation);

[[nodiscard]] std::vector<Violation> validate_entry(const FmeaEntry& entry);

/// Per-entry violations (tagged with their index) followed by one
/// uniqueness violation per repeated (component, failure_mode) pair.
[[nodiscard]] std::vector<Violation> validate_worksheet(const Worksheet& ws);

/// The 15-component microgrid cyber-physical worksheet.
[[nodiscard]] const Worksheet& paper_fixture();

}  // namespace fmea
