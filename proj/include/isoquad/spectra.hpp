#pragma once

#include <array>
#include <vector>

#include "isoquad/discretization.hpp"
#include "isoquad/dual.hpp"
#include "isoquad/matrix4.hpp"

namespace isoquad {

using Eigenvalues = std::array<double, 4>;
/// xi[k] = e_{4-k}(lambda_1..lambda_4); xi[3] is the trace, xi[0] the determinant.
using Invariants = std::array<double, 4>;

struct Spectrum {
  Eigenvalues lambdas{};
  Invariants xi{};
};

/// Relative bound on imaginary parts before a spectrum is rejected.
inline constexpr double kImaginaryTolerance = 1e-8;

/// Characteristic-polynomial invariants by the Faddeev-LeVerrier recursion
/// (traces only, no eigen-decomposition). Works over double and DualScalar.
template <typename T>
std::array<T, 4> charpoly_invariants(const Matrix4<T>& a) {
  // det(zI - A) = z^4 + c3 z^3 + c2 z^2 + c1 z + c0 and xi_k = (-1)^(4-k) c_k.
  std::array<T, 5> c{};
  c[4] = T(1.0);
  Matrix4<T> m;  // M_0 = 0
  for (int k = 1; k <= 4; ++k) {
    m = a * m;
    for (std::size_t i = 0; i < 4; ++i) m(i, i) += c[5 - k];
    c[4 - k] = -(a * m).trace() / T(static_cast<double>(k));
  }
  return {c[0], -c[1], c[2], -c[3]};
}

Invariants charpoly_invariants(const DiscreteOperator& op);

/// Four ascending real eigenvalues. Throws ComplexSpectrum when any imaginary
/// part exceeds kImaginaryTolerance * max|lambda|.
Eigenvalues eigenvalues(const Matrix4<double>& a);
Eigenvalues eigenvalues(const DiscreteOperator& op);

Spectrum spectrum(const DiscreteOperator& op);
Spectrum spectrum(const Quadrilateral& q, Scheme scheme, double kappa = kUniformKappa,
                  FirstOrderSign sign = FirstOrderSign::kReported);

/// Elementary symmetric functions of the eigenvalues in xi ordering.
Invariants elementary_symmetric(const Eigenvalues& lambdas);

/// q(z) = z^4 - xi3 z^3 + xi2 z^2 - xi1 z + xi0; its roots are the eigenvalues.
double charpoly_eval(const Invariants& xi, double z);

struct CharpolyGradient {
  Invariants xi{};
  /// d_xi[k][p] = d xi_k / d (alpha, beta, gamma, delta)[p].
  std::array<std::array<double, 4>, 4> d_xi{};
};

/// Runs the full assembly pipeline over dual numbers so the partials are the
/// exact derivatives of xi_k with respect to the four shape parameters.
CharpolyGradient charpoly_with_gradient(const Quadrilateral& q, Scheme scheme,
                                        double kappa = kUniformKappa,
                                        FirstOrderSign sign = FirstOrderSign::kReported);

/// Smallest `count` values of pi^2 (m^2 + n^2), m, n >= 1, with multiplicity.
std::vector<double> continuous_square_eigenvalues(int count);

}  // namespace isoquad
