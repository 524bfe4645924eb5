#include "isoquad/discretization.hpp"

#include <fmt/format.h>

namespace isoquad {

namespace {

void check_kappa(double kappa) {
  if (!(kappa > 0.0 && kappa < 0.5))
    throw Error(ErrorKind::kKappaOutOfRange, fmt::format("kappa = {} not in (0, 1/2)", kappa));
}

using Block = std::array<std::array<double, 2>, 2>;

// Lift of a 1D operator on the two interior nodes to the 4 tensor unknowns,
// index = i + 2 j with i the x node and j the y node.
Matrix4<double> kron(const Block& along_y, const Block& along_x) {
  Matrix4<double> out;
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t jj = 0; jj < 2; ++jj)
        for (std::size_t ii = 0; ii < 2; ++ii)
          out(i + 2 * j, ii + 2 * jj) = along_y[j][jj] * along_x[i][ii];
  return out;
}

constexpr Block kIdentity{{{1.0, 0.0}, {0.0, 1.0}}};

Matrix4<double> from_rows(const std::array<std::array<double, 4>, 4>& rows, double factor) {
  Matrix4<double> out;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) out(r, c) = factor * rows[r][c];
  return out;
}

}  // namespace

std::string_view to_string(Scheme s) noexcept {
  return s == Scheme::kFiniteDifference ? "fd" : "sp";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "fd") return Scheme::kFiniteDifference;
  if (name == "sp") return Scheme::kSpectral;
  throw Error(ErrorKind::kInvalidScheme, fmt::format("unknown scheme '{}'", name));
}

Grid build_grid(double kappa) {
  check_kappa(kappa);
  Grid g;
  g.kappa = kappa;
  g.coords = {0.0, kappa, 1.0 - kappa, 1.0};
  g.interior = {Point{kappa, kappa}, Point{1.0 - kappa, kappa}, Point{kappa, 1.0 - kappa},
                Point{1.0 - kappa, 1.0 - kappa}};
  return g;
}

DiffMatrices fd_matrices() {
  DiffMatrices d;
  d.dxx = from_rows({{{-2, 1, 0, 0}, {1, -2, 0, 0}, {0, 0, -2, 1}, {0, 0, 1, -2}}}, 9.0);
  d.dxy = from_rows({{{0, 0, 0, 1}, {0, 0, -1, 0}, {0, -1, 0, 0}, {1, 0, 0, 0}}}, 9.0 / 4.0);
  d.dyy = from_rows({{{-2, 0, 1, 0}, {0, -2, 0, 1}, {1, 0, -2, 0}, {0, 1, 0, -2}}}, 9.0);
  d.dx = from_rows({{{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}}}, 1.5);
  d.dy = from_rows({{{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}}}, 1.5);
  return d;
}

LagrangeDerivatives lagrange_derivatives(double kappa) {
  check_kappa(kappa);
  const double den = kappa * (kappa - 1.0) * (2.0 * kappa - 1.0);
  // x (x-1) (x-r) = x^3 - (1+r) x^2 + r x
  const auto d1 = [](double r, double x) { return 3.0 * x * x - 2.0 * (1.0 + r) * x + r; };
  const auto d2 = [](double r, double x) { return 6.0 * x - 2.0 * (1.0 + r); };
  // l1 vanishes at 0, 1-kappa, 1; l2 (with a minus sign) at 0, kappa, 1.
  const double r1 = 1.0 - kappa;
  const double r2 = kappa;
  const std::array<double, 2> nodes{kappa, 1.0 - kappa};

  LagrangeDerivatives out;
  for (std::size_t i = 0; i < 2; ++i) {
    out.d1[i][0] = d1(r1, nodes[i]) / den;
    out.d1[i][1] = -d1(r2, nodes[i]) / den;
    out.d2[i][0] = d2(r1, nodes[i]) / den;
    out.d2[i][1] = -d2(r2, nodes[i]) / den;
  }
  return out;
}

DiffMatrices spectral_matrices(double kappa) {
  const auto l = lagrange_derivatives(kappa);
  DiffMatrices d;
  d.dxx = kron(kIdentity, l.d2);
  d.dyy = kron(l.d2, kIdentity);
  d.dx = kron(kIdentity, l.d1);
  d.dy = kron(l.d1, kIdentity);
  d.dxy = kron(l.d1, l.d1);
  return d;
}

DiffMatrices scheme_matrices(Scheme scheme, double kappa) {
  if (scheme == Scheme::kFiniteDifference) {
    if (std::abs(kappa - kUniformKappa) > 1e-12)
      throw Error(ErrorKind::kKappaOutOfRange,
                  fmt::format("finite differences are defined only for kappa = 1/3, got {}", kappa));
    return fd_matrices();
  }
  return spectral_matrices(kappa);
}

Matrix4<double> assemble(const VertexList& v, Scheme scheme, double kappa, FirstOrderSign sign) {
  const auto d = scheme_matrices(scheme, kappa);
  return assemble_matrix(v, d, build_grid(kappa), sign);
}

DiscreteOperator assemble(const Quadrilateral& q, Scheme scheme, double kappa,
                          FirstOrderSign sign) {
  return DiscreteOperator{assemble(q.vertices(), scheme, kappa, sign), scheme, kappa, q};
}

}  // namespace isoquad
