#pragma once

#include <array>
#include <cmath>
#include <string>

#include "isoquad/dual.hpp"
#include "isoquad/error.hpp"

namespace isoquad {

template <typename T>
struct BasicPoint {
  T x{};
  T y{};
};

using Point = BasicPoint<double>;

/// Vertices in the order V1, V2, V3, V4 of the reference correspondence:
/// (0,0) -> V1, (1,0) -> V2, (0,1) -> V3, (1,1) -> V4.
template <typename T>
using BasicVertexList = std::array<BasicPoint<T>, 4>;
using VertexList = BasicVertexList<double>;

/// Quadrilateral with V1 = (0,0), V2 = (1,0) nailed and V3 = (alpha, beta),
/// V4 = (gamma, delta) free.
struct Quadrilateral {
  double alpha = 0.0;
  double beta = 1.0;
  double gamma = 1.0;
  double delta = 1.0;

  static constexpr Quadrilateral unit_square() { return {0.0, 1.0, 1.0, 1.0}; }

  VertexList vertices() const {
    return {Point{0.0, 0.0}, Point{1.0, 0.0}, Point{alpha, beta}, Point{gamma, delta}};
  }

  /// Vertices as dual numbers seeded on (alpha, beta, gamma, delta).
  BasicVertexList<DualScalar> dual_vertices() const {
    return {BasicPoint<DualScalar>{0.0, 0.0}, BasicPoint<DualScalar>{1.0, 0.0},
            BasicPoint<DualScalar>{DualScalar::variable(alpha, 0), DualScalar::variable(beta, 1)},
            BasicPoint<DualScalar>{DualScalar::variable(gamma, 2), DualScalar::variable(delta, 3)}};
  }

  std::array<double, 4> params() const { return {alpha, beta, gamma, delta}; }
  static Quadrilateral from_params(const std::array<double, 4>& p) {
    return {p[0], p[1], p[2], p[3]};
  }

  friend bool operator==(const Quadrilateral&, const Quadrilateral&) = default;
};

/// Bilinear map theta(x,y) = origin + ex*x + ey*y + exy*x*y from the unit
/// square onto the quadrilateral. All partial derivatives are exact.
template <typename T>
struct BilinearMap {
  BasicPoint<T> origin;
  BasicPoint<T> ex;
  BasicPoint<T> ey;
  BasicPoint<T> exy;

  static BilinearMap from_vertices(const BasicVertexList<T>& v) {
    BilinearMap m;
    m.origin = v[0];
    m.ex = {v[1].x - v[0].x, v[1].y - v[0].y};
    m.ey = {v[2].x - v[0].x, v[2].y - v[0].y};
    m.exy = {v[3].x - v[2].x - v[1].x + v[0].x, v[3].y - v[2].y - v[1].y + v[0].y};
    return m;
  }

  BasicPoint<T> operator()(double x, double y) const {
    return {origin.x + ex.x * x + ey.x * y + exy.x * (x * y),
            origin.y + ex.y * x + ey.y * y + exy.y * (x * y)};
  }

  // theta_1 = first component, theta_2 = second component.
  T d1_dx(double y) const { return ex.x + exy.x * y; }
  T d1_dy(double x) const { return ey.x + exy.x * x; }
  T d2_dx(double y) const { return ex.y + exy.y * y; }
  T d2_dy(double x) const { return ey.y + exy.y * x; }
  const T& d1_dxdy() const { return exy.x; }
  const T& d2_dxdy() const { return exy.y; }

  T sigma(double x, double y) const { return d1_dx(y) * d2_dy(x) - d1_dy(x) * d2_dx(y); }
};

/// Values of the variable coefficients f1..f5 of the pulled-back operator.
template <typename T>
struct BasicCoefficientBundle {
  T f1{}, f2{}, f3{}, f4{}, f5{};
};
using CoefficientBundle = BasicCoefficientBundle<double>;

inline constexpr double kDegenerateSigma = 1e-12;

/// Coefficients of the transformed operator at (x, y), written term for term:
///   f1 = -(t1y^2 + t2y^2)/s^2,  f2 = 2(t1x t1y + t2x t2y)/s^2,
///   f3 = -(t1x^2 + t2x^2)/s^2,
///   f4 = f2/s (t1y t2xy - t2y t1xy),  f5 = f2/s (t2x t1xy - t1x t2xy).
template <typename T>
BasicCoefficientBundle<T> coefficients(const BilinearMap<T>& map, double x, double y) {
  const T t1x = map.d1_dx(y);
  const T t1y = map.d1_dy(x);
  const T t2x = map.d2_dx(y);
  const T t2y = map.d2_dy(x);
  const T& t1xy = map.d1_dxdy();
  const T& t2xy = map.d2_dxdy();
  const T s = t1x * t2y - t1y * t2x;
  if (!(std::abs(value_of(s)) >= kDegenerateSigma)) {
    throw Error(ErrorKind::kDegenerateJacobian,
                "sigma = " + std::to_string(value_of(s)) + " at (" + std::to_string(x) + ", " +
                    std::to_string(y) + ")");
  }
  const T s2 = s * s;
  BasicCoefficientBundle<T> f;
  f.f1 = -(t1y * t1y + t2y * t2y) / s2;
  f.f2 = T(2.0) * (t1x * t1y + t2x * t2y) / s2;
  f.f3 = -(t1x * t1x + t2x * t2x) / s2;
  f.f4 = f.f2 / s * (t1y * t2xy - t2y * t1xy);
  f.f5 = f.f2 / s * (t2x * t1xy - t1x * t2xy);
  return f;
}

Point map_point(const Quadrilateral& q, Point p);
double jacobian_sigma(const Quadrilateral& q, Point p);
CoefficientBundle coefficients(const Quadrilateral& q, Point p);

/// Shoelace area over (V1, V2, V4, V3).
double area(const VertexList& v);
double area(const Quadrilateral& q);
/// Sum of the side lengths of (V1, V2, V4, V3).
double perimeter(const VertexList& v);
double perimeter(const Quadrilateral& q);

/// Homothety centred at the origin: every vertex multiplied by sqrt(c).
/// Throws NonPositiveFactor when c <= 0.
VertexList scale(const Quadrilateral& q, double c);
VertexList scale(const VertexList& v, double c);

/// Throws InvalidQuadrilateral naming the first reference corner at which the
/// Jacobian of the bilinear map is not strictly positive.
void validate(const VertexList& v);
void validate(const Quadrilateral& q);
bool is_valid(const Quadrilateral& q) noexcept;

std::string describe(const Quadrilateral& q);

}  // namespace isoquad

namespace isoquad::presets {

/// V3 = (-0.2, 1.1), V4 = (1.2, 1.3): the starting domain of the experiments.
inline constexpr Quadrilateral kSkewed{-0.2, 1.1, 1.2, 1.3};
/// V3 = (0.2, 1.1), V4 = (1.2, 1.3): second starting domain of the deformation study.
inline constexpr Quadrilateral kSkewedAlt{0.2, 1.1, 1.2, 1.3};
inline constexpr Quadrilateral kUnitSquare = Quadrilateral::unit_square();

}  // namespace isoquad::presets
