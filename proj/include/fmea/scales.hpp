#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace fmea {

/// A rating on the classical 1..10 FMEA scale. Construction outside the
/// range throws std::out_of_range naming the offending value.
class Rating {
public:
    static constexpr int kMin = 1;
    static constexpr int kMax = 10;

    explicit Rating(int value);

    [[nodiscard]] constexpr int value() const noexcept { return value_; }

    [[nodiscard]] static constexpr bool in_range(int value) noexcept {
        return value >= kMin && value <= kMax;
    }

    friend constexpr auto operator<=>(Rating, Rating) = default;

private:
    int value_;
};

struct ScaleRow {
    int rating;
    std::string_view label;
    std::string_view criteria;
};

using Scale = std::array<ScaleRow, 10>;

enum class ScaleKind { Severity, Occurrence, Detection };

/// Rows in ascending rating order (index 0 is rating 1).
[[nodiscard]] const Scale& scale(ScaleKind kind) noexcept;

[[nodiscard]] std::string_view scale_name(ScaleKind kind) noexcept;

[[nodiscard]] const ScaleRow& severity_label(Rating rating) noexcept;
[[nodiscard]] const ScaleRow& occurrence_label(Rating rating) noexcept;
[[nodiscard]] const ScaleRow& detection_label(Rating rating) noexcept;

/// "1 in N" failure probability per opportunity.
struct OccurrenceRate {
    std::uint64_t numerator = 1;
    std::uint64_t denominator = 1;

    [[nodiscard]] double probability() const noexcept {
        return static_cast<double>(numerator) / static_cast<double>(denominator);
    }

    friend constexpr bool operator==(const OccurrenceRate&, const OccurrenceRate&) = default;
};

/// Point rate for an occurrence rating. The open-ended extremes of the
/// scale ("at least 1 in 2", "at most 1 in 1,500,000") are pinned to their
/// boundary values.
[[nodiscard]] OccurrenceRate occurrence_rate(Rating rating) noexcept;

/// Inverse of occurrence_rate. Adjacent ratings are separated at the
/// geometric mean of their point rates; a probability on a separator maps
/// to the higher rating. Throws std::domain_error unless 0 < p <= 1.
[[nodiscard]] Rating rating_from_rate(double probability);

/// Exact variant of rating_from_rate for an empirical rate failures/trials.
/// failures == 0 maps to rating 1. Throws std::domain_error if trials == 0
/// or failures > trials.
[[nodiscard]] Rating rating_from_counts(std::uint64_t failures, std::uint64_t trials);

}  // namespace fmea
