#include "fmea/simulate.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <thread>

namespace fmea {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

void check_config(const SimConfig& cfg) {
    if (cfg.trials == 0) {
        throw std::invalid_argument("simulation needs at least one trial");
    }
}

}  // namespace

std::uint64_t entry_seed(std::uint64_t seed, std::size_t index) noexcept {
    return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(index) + 1));
}

SimResult simulate_occurrence(Rating rating, const SimConfig& cfg) {
    check_config(cfg);
    std::mt19937_64 engine(splitmix64(cfg.seed));
    std::binomial_distribution<std::uint64_t> draw(cfg.trials,
                                                   occurrence_rate(rating).probability());
    const std::uint64_t failures = std::min(draw(engine), cfg.trials);

    SimResult r;
    r.rating_in = rating;
    r.trials = cfg.trials;
    r.failures = failures;
    r.empirical_rate = static_cast<double>(failures) / static_cast<double>(cfg.trials);
    r.rating_out = rating_from_counts(failures, cfg.trials);
    r.agrees = r.rating_in == r.rating_out;
    return r;
}

std::vector<SimResult> simulate_worksheet(const Worksheet& ws, const SimConfig& cfg,
                                          unsigned threads) {
    check_config(cfg);
    std::vector<Rating> ratings;
    ratings.reserve(ws.entries.size());
    for (const auto& e : ws.entries) {
        ratings.emplace_back(e.triple.occurrence);
    }

    std::vector<SimResult> results(ratings.size());
    auto run = [&](std::size_t i) {
        results[i] = simulate_occurrence(ratings[i], {cfg.trials, entry_seed(cfg.seed, i)});
    };
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, ratings.size()));
    if (threads <= 1) {
        for (std::size_t i = 0; i < ratings.size(); ++i) {
            run(i);
        }
        return results;
    }
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < ratings.size(); i += threads) {
                    run(i);
                }
            });
        }
    }
    return results;
}

}  // namespace fmea
