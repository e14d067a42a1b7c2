#include <doctest.h>

#include <cmath>
#include <vector>

#include "rsl/finite_difference.hpp"
#include "support.hpp"

using namespace rsl;

TEST_CASE("Fornberg weights of the centred three-point stencil") {
    const std::vector<double> nodes{-1.0, 0.0, 1.0};
    const auto w = fornberg_weights(0.0, nodes, 2);
    CHECK(w[1][0] == doctest::Approx(-0.5));
    CHECK(w[1][1] == doctest::Approx(0.0));
    CHECK(w[1][2] == doctest::Approx(0.5));
    CHECK(w[2][0] == doctest::Approx(1.0));
    CHECK(w[2][1] == doctest::Approx(-2.0));
    CHECK(w[2][2] == doctest::Approx(1.0));
}

TEST_CASE("five-point stencils are exact on quartics over random grids") {
    rsl::test::Gen g(31);
    for (int i = 0; i < 50; ++i) {
        std::vector<double> x{0.0};
        for (int k = 0; k < 30; ++k) x.push_back(x.back() + g.uniform(0.05, 0.3));
        const double c[] = {g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1)};
        std::vector<double> v, d1, d2;
        for (double t : x) {
            v.push_back(c[0] + t * (c[1] + t * (c[2] + t * (c[3] + t * c[4]))));
            d1.push_back(c[1] + t * (2 * c[2] + t * (3 * c[3] + t * 4 * c[4])));
            d2.push_back(2 * c[2] + t * (6 * c[3] + t * 12 * c[4]));
        }
        const auto n1 = differentiate(x, v, 1);
        const auto n2 = differentiate(x, v, 2);
        for (std::size_t k = 0; k < x.size(); ++k) {
            CHECK(n1[k] == doctest::Approx(d1[k]).epsilon(1e-8).scale(1.0));
            CHECK(n2[k] == doctest::Approx(d2[k]).epsilon(1e-6).scale(1.0));
        }
    }
}
