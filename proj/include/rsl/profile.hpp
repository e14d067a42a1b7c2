#pragma once

#include <string>
#include <vector>

#include "rsl/params.hpp"

namespace rsl {

enum class Normalization { raw, R_at_origin_one };

const char* to_string(Normalization n);
Normalization normalization_from_string(const std::string& s);

/// Sampled warped-product soliton dr^2 + omega(r)^2 g_can with potential f(r).
struct RadialProfile {
    SolitonParams params;
    Normalization normalization = Normalization::raw;
    std::vector<double> r;
    std::vector<double> omega;
    std::vector<double> omega_p;
    std::vector<double> omega_pp;
    std::vector<double> f;
    std::vector<double> f_p;

    std::size_t size() const { return r.size(); }
    void reserve(std::size_t n);
    void push_back(double r_, double omega_, double omega_p_, double omega_pp_, double f_, double f_p_);

    /// Throws InvalidParameters unless all arrays are aligned, finite, and r is strictly increasing.
    void validate() const;
};

/// Homothety g -> c^2 g: r -> c r, omega -> c omega, second derivatives and f'
/// divided by c, lambda -> lambda / c^2.
RadialProfile scale_profile(const RadialProfile& prof, double c);

}  // namespace rsl
