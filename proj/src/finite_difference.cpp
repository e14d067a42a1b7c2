#include "rsl/finite_difference.hpp"

#include <algorithm>

#include "rsl/errors.hpp"

namespace rsl {

std::vector<std::vector<double>> fornberg_weights(double x0, std::span<const double> nodes, int max_order) {
    const int n = static_cast<int>(nodes.size());
    std::vector<std::vector<double>> c(max_order + 1, std::vector<double>(n, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, max_order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

std::vector<double> differentiate(std::span<const double> x, std::span<const double> v, int order) {
    constexpr std::size_t width = 5;
    const std::size_t n = x.size();
    if (v.size() != n) throw InvalidParameters("differentiate: size mismatch");
    if (n < width) throw InvalidParameters("differentiate: need at least five samples");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(i) - 2, 0,
                                                          static_cast<std::ptrdiff_t>(n - width));
        const auto w = fornberg_weights(x[i], x.subspan(lo, width), order);
        double s = 0.0;
        for (std::size_t j = 0; j < width; ++j) s += w[order][j] * v[lo + j];
        out[i] = s;
    }
    return out;
}

}  // namespace rsl
