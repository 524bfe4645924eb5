#pragma once

#include <array>
#include <cstddef>

namespace isoquad {

/// Forward-mode dual scalar carrying the value and its four partial
/// derivatives with respect to the shape parameters (alpha, beta, gamma, delta).
struct DualScalar {
  static constexpr std::size_t kParams = 4;

  double value = 0.0;
  std::array<double, kParams> partials{};

  constexpr DualScalar() = default;
  constexpr DualScalar(double v) : value(v) {}  // NOLINT: implicit lift of constants
  constexpr DualScalar(double v, const std::array<double, kParams>& d)
      : value(v), partials(d) {}

  /// Independent variable number `index` with unit seed.
  static constexpr DualScalar variable(double v, std::size_t index) {
    DualScalar d(v);
    d.partials[index] = 1.0;
    return d;
  }

  constexpr DualScalar& operator+=(const DualScalar& o) {
    value += o.value;
    for (std::size_t i = 0; i < kParams; ++i) partials[i] += o.partials[i];
    return *this;
  }
  constexpr DualScalar& operator-=(const DualScalar& o) {
    value -= o.value;
    for (std::size_t i = 0; i < kParams; ++i) partials[i] -= o.partials[i];
    return *this;
  }
  constexpr DualScalar& operator*=(const DualScalar& o) {
    for (std::size_t i = 0; i < kParams; ++i)
      partials[i] = partials[i] * o.value + value * o.partials[i];
    value *= o.value;
    return *this;
  }
  constexpr DualScalar& operator/=(const DualScalar& o) {
    const double q = value / o.value;
    for (std::size_t i = 0; i < kParams; ++i)
      partials[i] = (partials[i] - q * o.partials[i]) / o.value;
    value = q;
    return *this;
  }
};

constexpr DualScalar operator-(DualScalar a) {
  a.value = -a.value;
  for (auto& p : a.partials) p = -p;
  return a;
}
constexpr DualScalar operator+(DualScalar a, const DualScalar& b) { return a += b; }
constexpr DualScalar operator-(DualScalar a, const DualScalar& b) { return a -= b; }
constexpr DualScalar operator*(DualScalar a, const DualScalar& b) { return a *= b; }
constexpr DualScalar operator/(DualScalar a, const DualScalar& b) { return a /= b; }

inline double value_of(double x) { return x; }
inline double value_of(const DualScalar& x) { return x.value; }

}  // namespace isoquad
