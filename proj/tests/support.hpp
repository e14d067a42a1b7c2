#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rsl/params.hpp"
#include "rsl/shooting.hpp"

namespace rsl::test {

/// Seeded value generator for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(integer(0, static_cast<int>(v.size()) - 1))];
    }

    /// rho strictly inside one of the two steady existence regimes, away from
    /// the distinguished values.
    double existence_rho(int n) {
        const double m = n - 1;
        if (integer(0, 1) == 0) return uniform(-2.0, 1.0 / (2.0 * m) - 0.02);
        return uniform(1.0 / m + 0.02, 2.0);
    }

private:
    std::mt19937_64 engine_;
};

/// Relative distance with an absolute floor of 1.
inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

/// Constructions are shared by the tests of one binary.
inline const Construction& constructed(int n, double rho) {
    struct Entry {
        int n;
        double rho;
        Construction c;
    };
    static std::vector<Entry> cache;
    for (const auto& e : cache)
        if (e.n == n && e.rho == rho) return e.c;
    ConstructOptions opts;
    opts.normalize = true;
    cache.push_back({n, rho, construct_steady(SolitonParams{n, rho, 0.0, 1}, opts)});
    return cache.back().c;
}

}  // namespace rsl::test
