#pragma once

#include <span>
#include <vector>

namespace rsl {

/// Fornberg's recursion: weights[k][j] approximate the k-th derivative at x0
/// from values at nodes[j], for k = 0..max_order.
std::vector<std::vector<double>> fornberg_weights(double x0, std::span<const double> nodes, int max_order);

/// Derivative of sampled data on a nonuniform grid with five-point stencils,
/// centred in the interior and one-sided at the two ends.
std::vector<double> differentiate(std::span<const double> x, std::span<const double> v, int order);

}  // namespace rsl
