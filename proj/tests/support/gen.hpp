#pragma once

// Seeded generators for the property tests. Every test builds its own Gen
// with a literal seed so failures replay exactly.

#include <cmath>
#include <cstdint>
#include <random>

#include "cfmm/model.hpp"

namespace cfmm::test {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    /// Log-uniform on [lo, hi].
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    Reserves reserves(double lo = 1e-2, double hi = 1e2) {
        return {log_uniform(lo, hi), log_uniform(lo, hi)};
    }

private:
    std::mt19937_64 rng_;
};

inline double rel_err(double got, double want) {
    const double d = std::abs(got - want);
    return want == 0.0 ? d : d / std::abs(want);
}

}  // namespace cfmm::test
