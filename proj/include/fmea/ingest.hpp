#pragma once

#include "fmea/worksheet.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fmea {

enum class SourceKind { Csv, Json };

/// A located diagnostic.
///
/// CSV: `row` is the 1-based record number with the header as row 1 (so
/// it matches spreadsheet row numbers), `field` the column name.
/// JSON syntax errors: `row`/`column` are line and column.
/// JSON content errors: `row` is the 0-based entry index and `field` the
/// member name (`row` is empty for document-level members).
struct ParseError {
    SourceKind source = SourceKind::Csv;
    std::optional<std::size_t> row;
    std::optional<std::size_t> column;
    std::string field;
    std::string message;

    friend bool operator==(const ParseError&, const ParseError&) = default;
};

[[nodiscard]] std::string describe(const ParseError& error);

using ParseResult = std::variant<Worksheet, std::vector<ParseError>>;

[[nodiscard]] inline bool ok(const ParseResult& result) noexcept {
    return std::holds_alternative<Worksheet>(result);
}

/// Column order of the CSV header and of emitted JSON entries.
inline constexpr std::array<std::string_view, 11> kColumns{
    "component",  "failure_mode", "severity",           "occurrence",
    "detection",  "effect",       "end_effect",         "cause",
    "prevention_controls", "detection_controls", "declared_classification"};

/// Comma separated, double-quote quoting with doubled quotes, header row
/// required. All problems in the input are collected.
[[nodiscard]] ParseResult parse_csv(std::string_view bytes, std::string title = {});

/// Expects {"title": ..., "entries": [{...}, ...]} with entry members named
/// as the CSV columns; ratings are JSON integers.
[[nodiscard]] ParseResult parse_json(std::string_view bytes);

[[nodiscard]] std::string emit_json(const Worksheet& ws);

/// Header plus one record per entry, LF line endings.
[[nodiscard]] std::string emit_csv(const Worksheet& ws);

/// Quotes `value` when it holds a delimiter, quote, line break or edge
/// whitespace.
[[nodiscard]] std::string csv_field(std::string_view value);

}  // namespace fmea
