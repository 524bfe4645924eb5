#pragma once

#include <array>
#include <cmath>
#include <string_view>

#include "isoquad/geometry.hpp"
#include "isoquad/matrix4.hpp"

namespace isoquad {

enum class Scheme { kFiniteDifference, kSpectral };

std::string_view to_string(Scheme s) noexcept;
/// Accepts "fd" or "sp"; throws InvalidScheme otherwise.
Scheme parse_scheme(std::string_view name);

inline constexpr double kUniformKappa = 1.0 / 3.0;
/// Nodes 2k-1 and 1-2k are the zeros of the derivative of the Legendre P3.
inline double legendre_kappa() { return 0.5 - 0.5 / std::sqrt(5.0); }

/// 4x4 tensor grid with coordinates (0, kappa, 1-kappa, 1). Interior nodes
/// are ordered (k,k), (1-k,k), (k,1-k), (1-k,1-k): x runs fastest.
struct Grid {
  double kappa = kUniformKappa;
  std::array<double, 4> coords{};
  std::array<Point, 4> interior{};
};

Grid build_grid(double kappa);

/// Differentiation matrices acting on interior nodal values.
struct DiffMatrices {
  Matrix4<double> dxx, dxy, dyy, dx, dy;
};

/// Centred finite differences on the uniform grid h = 1/3.
DiffMatrices fd_matrices();

/// First and second derivatives of the two interior Lagrange cubics (nodes
/// 0, kappa, 1-kappa, 1) at the interior nodes: d1[i][j] = l_j'(node_i).
struct LagrangeDerivatives {
  std::array<std::array<double, 2>, 2> d1{};
  std::array<std::array<double, 2>, 2> d2{};
};

LagrangeDerivatives lagrange_derivatives(double kappa);

/// Collocation matrices of the tensor cubic basis l_i(x) l_j(y).
DiffMatrices spectral_matrices(double kappa);

/// Sign with which the first-order terms F4*Dx + F5*Dy enter the assembly.
/// kReported reproduces the published spectra; kConsistent is the exact
/// pull-back of -Laplacian with the coefficients as written.
enum class FirstOrderSign { kReported, kConsistent };

/// Everything that selects a discrete operator besides the geometry.
struct Discretization {
  Scheme scheme = Scheme::kSpectral;
  double kappa = kUniformKappa;
  FirstOrderSign sign = FirstOrderSign::kReported;
};

/// Differentiation matrices for a scheme; fd requires kappa == 1/3.
DiffMatrices scheme_matrices(Scheme scheme, double kappa);

/// L = F1 Dxx + F2 Dxy + F3 Dyy +/- (F4 Dx + F5 Dy), with F_i = diag(f_i at
/// the interior nodes). Valid for double and DualScalar vertices.
template <typename T>
Matrix4<T> assemble_matrix(const BasicVertexList<T>& v, const DiffMatrices& d, const Grid& grid,
                           FirstOrderSign sign = FirstOrderSign::kReported) {
  VertexList plain;
  for (std::size_t i = 0; i < 4; ++i) plain[i] = {value_of(v[i].x), value_of(v[i].y)};
  validate(plain);

  const auto map = BilinearMap<T>::from_vertices(v);
  const double s = sign == FirstOrderSign::kReported ? -1.0 : 1.0;
  Matrix4<T> out;
  for (std::size_t r = 0; r < 4; ++r) {
    const auto f = coefficients(map, grid.interior[r].x, grid.interior[r].y);
    const T f4 = T(s) * f.f4;
    const T f5 = T(s) * f.f5;
    for (std::size_t c = 0; c < 4; ++c) {
      out(r, c) = f.f1 * T(d.dxx(r, c)) + f.f2 * T(d.dxy(r, c)) + f.f3 * T(d.dyy(r, c)) +
                  f4 * T(d.dx(r, c)) + f5 * T(d.dy(r, c));
    }
  }
  return out;
}

struct DiscreteOperator {
  Matrix4<double> entries;
  Scheme scheme = Scheme::kSpectral;
  double kappa = kUniformKappa;
  Quadrilateral source;
};

DiscreteOperator assemble(const Quadrilateral& q, Scheme scheme, double kappa = kUniformKappa,
                          FirstOrderSign sign = FirstOrderSign::kReported);

/// Operator on an arbitrary vertex list (e.g. a homothetic image).
Matrix4<double> assemble(const VertexList& v, Scheme scheme, double kappa = kUniformKappa,
                         FirstOrderSign sign = FirstOrderSign::kReported);

}  // namespace isoquad
