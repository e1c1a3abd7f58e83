#pragma once

#include "fmea/analysis.hpp"
#include "fmea/scales.hpp"
#include "fmea/simulate.hpp"
#include "fmea/worksheet.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fmea {

enum class Format { Markdown, Csv, Text, Svg, Json };

[[nodiscard]] std::string_view to_string(Format format) noexcept;

class UnsupportedFormat : public std::invalid_argument {
public:
    UnsupportedFormat(std::string_view what, Format format);
};

struct RenderOptions {
    Format format = Format::Markdown;
    bool include_narratives = false;
};

// Every renderer is pure: identical inputs give identical bytes, LF line
// endings, no locale-dependent number formatting.

/// Ranked table (Rank, Component, Failure Mode, S, O, D, RPN, Computed
/// Class, Declared Class, Discrepancy). Markdown, CSV or Text.
[[nodiscard]] std::string render_ranked(std::span<const RpnResult> results, const Worksheet& ws,
                                        const RenderOptions& opts);

/// Markdown, one section per entry in rank order with the full worksheet
/// column set.
[[nodiscard]] std::string render_fmea_report(const Worksheet& ws,
                                             std::span<const RpnResult> results);

/// Severity 10 on the top row, second axis 1..10 left to right, "." for
/// empty cells.
[[nodiscard]] std::string render_matrix_text(const RiskMatrix& matrix);
[[nodiscard]] std::string render_matrix_csv(const RiskMatrix& matrix);

/// Standalone heatmap: 100 <rect class="cell"> elements filled from white to
/// a single hue, linear in count relative to the busiest cell.
[[nodiscard]] std::string render_matrix_svg(const RiskMatrix& matrix);

/// Text, CSV or SVG.
[[nodiscard]] std::string render_matrix(const RiskMatrix& matrix, Format format);

/// Full `analyze` output: bands header, ranked table, collisions,
/// discrepancies and summary. Markdown, CSV or JSON.
[[nodiscard]] std::string render_analysis(const Worksheet& ws, const ClassBands& bands,
                                          Format format);

/// Columns rating_in, trials, failures, empirical_rate, rating_out, agrees;
/// when `ws` is given each row is prefixed with the entry's component.
[[nodiscard]] std::string render_simulation(std::span<const SimResult> results,
                                            const Worksheet* ws, Format format);

/// CSV dump of one scale, or all three when `kind` is empty.
[[nodiscard]] std::string render_scales(std::optional<ScaleKind> kind);

}  // namespace fmea
