#pragma once

#include "fmea/scales.hpp"
#include "fmea/worksheet.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace fmea {

struct SimConfig {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 0;
};

struct SimResult {
    Rating rating_in{1};
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double empirical_rate = 0.0;
    Rating rating_out{1};
    bool agrees = false;

    friend bool operator==(const SimResult&, const SimResult&) = default;
};

/// Draws the number of failures in `cfg.trials` independent opportunities
/// with the occurrence rate of `rating` and maps the empirical rate back to
/// a rating (no failures maps to rating 1).
///
/// Counts come from std::binomial_distribution driven by std::mt19937_64
/// seeded with splitmix64(cfg.seed); the result is fixed for a given build.
/// Throws std::invalid_argument if cfg.trials == 0.
[[nodiscard]] SimResult simulate_occurrence(Rating rating, const SimConfig& cfg);

/// Seed used for entry `index` of a worksheet run.
[[nodiscard]] std::uint64_t entry_seed(std::uint64_t seed, std::size_t index) noexcept;

/// One result per entry, simulated with entry_seed(cfg.seed, index), so
/// output does not depend on `threads` or on scheduling. `threads` == 0
/// picks the hardware concurrency.
[[nodiscard]] std::vector<SimResult> simulate_worksheet(const Worksheet& ws, const SimConfig& cfg,
                                                        unsigned threads = 1);

}  // namespace fmea
