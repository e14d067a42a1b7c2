#include "rsl/jet.hpp"

#include <algorithm>
#include <cmath>

#include "rsl/errors.hpp"

namespace rsl {

namespace {

constexpr int N = Jet::max_order;

double factorial(int k) {
    double r = 1.0;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

}  // namespace

Jet::Jet(double constant) { t_[0] = constant; }

Jet Jet::variable(double at) {
    Jet j(at);
    j.t_[1] = 1.0;
    return j;
}

double Jet::derivative(int k) const {
    if (k < 0 || k > order_) throw OutOfRange("jet derivative beyond the carried order");
    return t_[static_cast<std::size_t>(k)] * factorial(k);
}

Jet Jet::derive() const {
    if (order_ == 0) throw OutOfRange("jet has no derivative left");
    Jet d;
    for (int k = 0; k < N; ++k) d.t_[k] = (k + 1) * t_[k + 1];
    d.t_[N] = 0.0;
    d.order_ = order_ - 1;
    return d;
}

Jet& Jet::operator+=(const Jet& o) {
    for (int k = 0; k <= N; ++k) t_[k] += o.t_[k];
    order_ = std::min(order_, o.order_);
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    for (int k = 0; k <= N; ++k) t_[k] -= o.t_[k];
    order_ = std::min(order_, o.order_);
    return *this;
}

Jet& Jet::operator*=(const Jet& o) {
    std::array<double, N + 1> r{};
    for (int k = 0; k <= N; ++k)
        for (int i = 0; i <= k; ++i) r[k] += t_[i] * o.t_[k - i];
    t_ = r;
    order_ = std::min(order_, o.order_);
    return *this;
}

Jet& Jet::operator/=(const Jet& o) {
    std::array<double, N + 1> q{};
    for (int k = 0; k <= N; ++k) {
        double s = t_[k];
        for (int i = 1; i <= k; ++i) s -= o.t_[i] * q[k - i];
        q[k] = s / o.t_[0];
    }
    t_ = q;
    order_ = std::min(order_, o.order_);
    return *this;
}

Jet operator-(Jet a) {
    for (auto& v : a.t_) v = -v;
    return a;
}

// The elementary functions use g' = G(g) f' written on Taylor coefficients.
Jet exp(const Jet& a) {
    Jet e;
    e.order_ = a.order_;
    e.t_[0] = std::exp(a.t_[0]);
    for (int k = 1; k <= N; ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += j * a.t_[j] * e.t_[k - j];
        e.t_[k] = s / k;
    }
    return e;
}

Jet log(const Jet& a) {
    Jet l;
    l.order_ = a.order_;
    l.t_[0] = std::log(a.t_[0]);
    for (int k = 1; k <= N; ++k) {
        double s = k * a.t_[k];
        for (int j = 1; j < k; ++j) s -= j * l.t_[j] * a.t_[k - j];
        l.t_[k] = s / (k * a.t_[0]);
    }
    return l;
}

namespace {

using Coeffs = std::array<double, N + 1>;

void sin_cos(const Coeffs& at, Coeffs& st, Coeffs& ct) {
    st[0] = std::sin(at[0]);
    ct[0] = std::cos(at[0]);
    for (int k = 1; k <= N; ++k) {
        double ss = 0.0, cc = 0.0;
        for (int j = 1; j <= k; ++j) {
            ss += j * at[j] * ct[k - j];
            cc -= j * at[j] * st[k - j];
        }
        st[k] = ss / k;
        ct[k] = cc / k;
    }
}

}  // namespace

Jet sin(const Jet& a) {
    Jet s, c;
    sin_cos(a.t_, s.t_, c.t_);
    s.order_ = a.order_;
    return s;
}

Jet cos(const Jet& a) {
    Jet s, c;
    sin_cos(a.t_, s.t_, c.t_);
    c.order_ = a.order_;
    return c;
}

Jet pow(const Jet& a, double p) {
    Jet r;
    r.order_ = a.order_;
    r.t_[0] = std::pow(a.t_[0], p);
    // a r' = p r a'
    for (int k = 1; k <= N; ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += (p * j - (k - j)) * a.t_[j] * r.t_[k - j];
        r.t_[k] = s / (k * a.t_[0]);
    }
    return r;
}

}  // namespace rsl
