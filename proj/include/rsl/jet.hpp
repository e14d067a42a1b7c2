#pragma once

#include <array>
#include <cstddef>

namespace rsl {

/// Truncated Taylor expansion of a scalar function of f, carried to fixed
/// order. Arithmetic propagates derivatives exactly up to that order.
class Jet {
public:
    static constexpr int max_order = 4;

    Jet() = default;
    Jet(double constant);  // NOLINT: implicit so constants mix freely

    /// The independent variable f at the given point.
    static Jet variable(double at);

    double value() const { return t_[0]; }
    /// k-th derivative, k <= order().
    double derivative(int k) const;
    /// Number of derivatives that are still exact.
    int order() const { return order_; }

    /// d/df, losing one order.
    Jet derive() const;

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(const Jet& o);
    Jet& operator/=(const Jet& o);

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
    friend Jet operator/(Jet a, const Jet& b) { return a /= b; }
    friend Jet operator-(Jet a);

    friend Jet exp(const Jet& a);
    friend Jet log(const Jet& a);
    friend Jet sin(const Jet& a);
    friend Jet cos(const Jet& a);
    friend Jet pow(const Jet& a, double p);

private:
    // Normalised Taylor coefficients f^(k)/k!.
    std::array<double, max_order + 1> t_{};
    int order_ = max_order;
};

}  // namespace rsl
