#include "fmea/scales.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fmea {

namespace {

// Table text is kept verbatim; lookups are expected to be byte-exact.
constexpr Scale kSeverity{{
    {1, "None", "No effect"},
    {2, "Very minor", "System performance and satisfaction with slight effect"},
    {3, "Minor", "System performance and satisfaction with minor effect"},
    {4, "Very low",
     "Performance of system or product is less affected, and the maintenance may not be needed"},
    {5, "Low",
     "Performance of system or product is affected seriously, and the maintenance is needed"},
    {6, "Moderate",
     "Operation of system or product is continued, and performance of system or product is "
     "degraded"},
    {7, "High",
     "Operation of system or product may be continued, but performance of system or product is "
     "affected"},
    {8, "Very high", "Operation of system or product is broken down without compromising safe"},
    {9, "Hazardous with warning",
     "Higher severity ranking of a failure mode, occurring with warning and the consequence is "
     "hazardous"},
    {10, "Hazardous without warning",
     "Highest severity ranking of a failure mode, occurring without warning and the consequence "
     "is hazardous"},
}};

constexpr Scale kOccurrence{{
    {1, "Nearly impossible", "≤ 1 in 1,500,000"},
    {2, "Remote", "1 in 150,000"},
    {3, "Low", "1 in 15,000"},
    {4, "Relatively low", "1 in 2000"},
    {5, "Moderate", "1 in 400"},
    {6, "Moderately high", "1 in 80"},
    {7, "High", "1 in 20"},
    {8, "Repeated failures", "1 in 8"},
    {9, "Very high", "1 in 3"},
    {10, "Extremely high (inevitable failure)", "≥ 1 in 2"},
}};

constexpr Scale kDetection{{
    {1, "Almost certain",
     "Design control will almost certainly detect a potential cause of failure or subsequent "
     "failure mode"},
    {2, "Very high",
     "Very high chance the design control will detect a potential cause of failure or subsequent "
     "failure mode"},
    {3, "High",
     "High chance the design control will detect a potential cause of failure or subsequent "
     "failure mode"},
    {4, "Moderately high",
     "Moderately high chance the design control will detect a potential cause of the failure or "
     "subsequent failure mode"},
    {5, "Moderate",
     "Moderate chance the design control will detect a potential cause of failure or subsequent "
     "failure mode"},
    {6, "Low",
     "Low chance the design control will detect a potential cause of failure or subsequent "
     "failure mode"},
    {7, "Very low",
     "Meager chance the design control will detect a potential cause of failure or subsequent "
     "failure mode"},
    {8, "Remote",
     "Remote chance the design control will detect a potential cause of failure or subsequent "
     "failure mode"},
    {9, "Very remote",
     "Very remote chance the design control will detect a potential cause of the failure or "
     "subsequent failure mode"},
    {10, "Absolutely impossible",
     "Design control does not detect a potential cause of failure or subsequent failure mode or "
     "there is no design control"},
}};

// Denominators of the "1 in N" rates, index 0 is rating 1.
constexpr std::array<std::uint64_t, 10> kRateDenominators{
    1'500'000, 150'000, 15'000, 2'000, 400, 80, 20, 8, 3, 2};

// Separators closer than this (relative) are treated as exactly on them.
constexpr long double kBoundaryTolerance = 1e-12L;

}  // namespace

Rating::Rating(int value) : value_(value) {
    if (!in_range(value)) {
        throw std::out_of_range("rating " + std::to_string(value) + " is outside the scale [" +
                                std::to_string(kMin) + ", " + std::to_string(kMax) + "]");
    }
}

const Scale& scale(ScaleKind kind) noexcept {
    switch (kind) {
        case ScaleKind::Severity:
            return kSeverity;
        case ScaleKind::Occurrence:
            return kOccurrence;
        case ScaleKind::Detection:
            break;
    }
    return kDetection;
}

std::string_view scale_name(ScaleKind kind) noexcept {
    switch (kind) {
        case ScaleKind::Severity:
            return "severity";
        case ScaleKind::Occurrence:
            return "occurrence";
        case ScaleKind::Detection:
            break;
    }
    return "detection";
}

const ScaleRow& severity_label(Rating rating) noexcept {
    return kSeverity[static_cast<std::size_t>(rating.value() - 1)];
}

const ScaleRow& occurrence_label(Rating rating) noexcept {
    return kOccurrence[static_cast<std::size_t>(rating.value() - 1)];
}

const ScaleRow& detection_label(Rating rating) noexcept {
    return kDetection[static_cast<std::size_t>(rating.value() - 1)];
}

OccurrenceRate occurrence_rate(Rating rating) noexcept {
    return {1, kRateDenominators[static_cast<std::size_t>(rating.value() - 1)]};
}

Rating rating_from_rate(double probability) {
    if (!(probability > 0.0) || probability > 1.0) {
        throw std::domain_error("probability " + std::to_string(probability) +
                                " is outside (0, 1]");
    }
    // p is at or above the separator of ratings r and r+1 iff p^2 * Nr * Nr+1 >= 1.
    const long double p = probability;
    int rating = Rating::kMin;
    for (std::size_t i = 0; i + 1 < kRateDenominators.size(); ++i) {
        const long double product = p * p * static_cast<long double>(kRateDenominators[i]) *
                                    static_cast<long double>(kRateDenominators[i + 1]);
        if (product >= 1.0L - kBoundaryTolerance) {
            rating = static_cast<int>(i) + 2;
        } else {
            break;
        }
    }
    return Rating{rating};
}

Rating rating_from_counts(std::uint64_t failures, std::uint64_t trials) {
    if (trials == 0) {
        throw std::domain_error("trials must be positive");
    }
    if (failures > trials) {
        throw std::domain_error("failures exceed trials");
    }
    if (failures == 0) {
        return Rating{Rating::kMin};
    }
    __extension__ using u128 = unsigned __int128;
    const u128 f2 = static_cast<u128>(failures) * failures;
    const u128 t2 = static_cast<u128>(trials) * trials;
    // f^2 * Na * Nb must not overflow; the largest product of adjacent
    // denominators is below 2^38, leaving 2^90 for f^2.
    constexpr u128 kSafeSquare = static_cast<u128>(1) << 90;
    if (f2 >= kSafeSquare) {
        return rating_from_rate(static_cast<double>(static_cast<long double>(failures) /
                                                    static_cast<long double>(trials)));
    }
    int rating = Rating::kMin;
    for (std::size_t i = 0; i + 1 < kRateDenominators.size(); ++i) {
        const u128 lhs = f2 * kRateDenominators[i] * kRateDenominators[i + 1];
        if (lhs >= t2) {
            rating = static_cast<int>(i) + 2;
        } else {
            break;
        }
    }
    return Rating{rating};
}

}  // namespace fmea
