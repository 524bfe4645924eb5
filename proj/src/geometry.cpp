#include "isoquad/geometry.hpp"

#include <cmath>

#include <fmt/format.h>

namespace isoquad {

namespace {

constexpr std::array<Point, 4> kCorners{Point{0.0, 0.0}, Point{1.0, 0.0}, Point{0.0, 1.0},
                                        Point{1.0, 1.0}};

// Cyclic boundary order V1, V2, V4, V3.
constexpr std::array<std::size_t, 4> kBoundaryOrder{0, 1, 3, 2};

}  // namespace

Point map_point(const Quadrilateral& q, Point p) {
  const auto map = BilinearMap<double>::from_vertices(q.vertices());
  return map(p.x, p.y);
}

double jacobian_sigma(const Quadrilateral& q, Point p) {
  return BilinearMap<double>::from_vertices(q.vertices()).sigma(p.x, p.y);
}

CoefficientBundle coefficients(const Quadrilateral& q, Point p) {
  return coefficients(BilinearMap<double>::from_vertices(q.vertices()), p.x, p.y);
}

double area(const VertexList& v) {
  double twice = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const Point& a = v[kBoundaryOrder[i]];
    const Point& b = v[kBoundaryOrder[(i + 1) % 4]];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

double area(const Quadrilateral& q) { return area(q.vertices()); }

double perimeter(const VertexList& v) {
  double sum = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const Point& a = v[kBoundaryOrder[i]];
    const Point& b = v[kBoundaryOrder[(i + 1) % 4]];
    sum += std::hypot(b.x - a.x, b.y - a.y);
  }
  return sum;
}

double perimeter(const Quadrilateral& q) { return perimeter(q.vertices()); }

VertexList scale(const VertexList& v, double c) {
  if (!(c > 0.0)) throw Error(ErrorKind::kNonPositiveFactor, fmt::format("c = {}", c));
  const double s = std::sqrt(c);
  VertexList out = v;
  for (auto& p : out) {
    p.x *= s;
    p.y *= s;
  }
  return out;
}

VertexList scale(const Quadrilateral& q, double c) { return scale(q.vertices(), c); }

void validate(const VertexList& v) {
  for (const auto& p : v) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw Error(ErrorKind::kInvalidQuadrilateral, "non-finite vertex coordinate");
  }
  const auto map = BilinearMap<double>::from_vertices(v);
  for (const Point& corner : kCorners) {
    const double s = map.sigma(corner.x, corner.y);
    if (!(s > 0.0)) {
      throw Error(ErrorKind::kInvalidQuadrilateral,
                  fmt::format("sigma({}, {}) = {} is not positive", corner.x, corner.y, s));
    }
  }
}

void validate(const Quadrilateral& q) { validate(q.vertices()); }

bool is_valid(const Quadrilateral& q) noexcept {
  try {
    validate(q);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::string describe(const Quadrilateral& q) {
  return fmt::format("(alpha={}, beta={}, gamma={}, delta={})", q.alpha, q.beta, q.gamma, q.delta);
}

}  // namespace isoquad
