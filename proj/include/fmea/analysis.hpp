#pragma once

#include "fmea/worksheet.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fmea {

/// Risk priority number, the product of the three ratings (1..1000).
class Rpn {
public:
    static constexpr int kMin = 1;
    static constexpr int kMax = 1000;

    /// Throws std::out_of_range outside [1, 1000].
    explicit Rpn(int value);

    [[nodiscard]] constexpr int value() const noexcept { return value_; }

    friend constexpr auto operator<=>(Rpn, Rpn) = default;

private:
    int value_;
};

/// Cut points b1 < b2 < b3 splitting [1, 1000] into Negligible [1, b1),
/// Marginal [b1, b2), Critical [b2, b3) and Catastrophic [b3, 1000].
class ClassBands {
public:
    /// Throws std::invalid_argument unless 1 < b1 < b2 < b3 <= 1000.
    ClassBands(int b1, int b2, int b3);

    [[nodiscard]] static ClassBands defaults() { return {100, 200, 500}; }

    [[nodiscard]] const std::array<int, 3>& thresholds() const noexcept { return cuts_; }

    friend bool operator==(const ClassBands&, const ClassBands&) = default;

private:
    std::array<int, 3> cuts_;
};

/// One-line human description, e.g. "Negligible < 100 <= Marginal < 200 <= ...".
[[nodiscard]] std::string describe(const ClassBands& bands);

struct RpnResult {
    std::size_t entry_index = 0;
    Rpn rpn{1};
    std::size_t rank = 0;
    ClassLabel computed_class = ClassLabel::Negligible;
    std::optional<ClassLabel> declared_class;
    bool discrepancy = false;

    friend bool operator==(const RpnResult&, const RpnResult&) = default;
};

struct CollisionGroup {
    Rpn rpn{1};
    std::vector<std::size_t> members;

    friend bool operator==(const CollisionGroup&, const CollisionGroup&) = default;
};

enum class MatrixAxes { SeverityVsDetection, SeverityVsOccurrence };

struct MatrixCell {
    std::size_t count = 0;
    std::vector<std::size_t> members;
};

/// 10x10 grid indexed [severity - 1][second - 1], where the second axis is
/// detection or occurrence depending on `axes`.
struct RiskMatrix {
    MatrixAxes axes = MatrixAxes::SeverityVsDetection;
    std::array<std::array<MatrixCell, 10>, 10> cells{};

    [[nodiscard]] const MatrixCell& at(int severity, int second) const;
    [[nodiscard]] std::size_t total() const noexcept;
    [[nodiscard]] std::size_t max_count() const noexcept;
};

[[nodiscard]] std::string_view second_axis_name(MatrixAxes axes) noexcept;

/// Throws std::invalid_argument for an invalid triple.
[[nodiscard]] Rpn rpn(const RatingTriple& triple);

/// Boundary values fall in the upper band.
[[nodiscard]] ClassLabel classify(Rpn value, const ClassBands& bands) noexcept;

/// Results in rank order: RPN descending, then S, O, D descending, then
/// component and failure mode ascending.
/// The analysis functions below throw std::invalid_argument if `ws` does
/// not pass validate_worksheet.
[[nodiscard]] std::vector<RpnResult> rank(const Worksheet& ws, const ClassBands& bands);

/// Groups of entries sharing an RPN, highest RPN first, members in
/// worksheet order.
[[nodiscard]] std::vector<CollisionGroup> collisions(const Worksheet& ws);

[[nodiscard]] std::vector<RpnResult> discrepancies(const Worksheet& ws, const ClassBands& bands);

[[nodiscard]] RiskMatrix risk_matrix(const Worksheet& ws, MatrixAxes axes);

struct RpnStatistics {
    int min = 0;
    int max = 0;
    std::int64_t sum = 0;

    /// Mean RPN rounded half-up to two decimals, e.g. "197.60".
    [[nodiscard]] std::string mean_fixed2(std::size_t count) const;
    [[nodiscard]] double mean(std::size_t count) const noexcept {
        return static_cast<double>(sum) / static_cast<double>(count);
    }
};

/// Per-class tallies, indexed by ClassLabel.
using ClassCounts = std::array<std::size_t, 4>;

struct Summary {
    std::size_t count = 0;
    /// Empty for an empty worksheet.
    std::optional<RpnStatistics> stats;
    ClassCounts computed{};
    ClassCounts declared{};
    std::size_t undeclared = 0;
};

[[nodiscard]] Summary summary_stats(const Worksheet& ws, const ClassBands& bands);

}  // namespace fmea
