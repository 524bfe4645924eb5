#include "isoquad/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

namespace isoquad {

Invariants charpoly_invariants(const DiscreteOperator& op) {
  return charpoly_invariants(op.entries);
}

Eigenvalues eigenvalues(const Matrix4<double>& a) {
  Eigen::Matrix4d m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = a(r, c);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (!std::isfinite(m(r, c)))
        throw Error(ErrorKind::kComplexSpectrum, "operator has non-finite entries");

  Eigen::EigenSolver<Eigen::Matrix4d> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::kComplexSpectrum, "eigenvalue iteration did not converge");
  const auto& ev = solver.eigenvalues();

  double scale = 0.0;
  for (int i = 0; i < 4; ++i) scale = std::max(scale, std::abs(ev(i)));
  Eigenvalues out{};
  for (int i = 0; i < 4; ++i) {
    if (std::abs(ev(i).imag()) > kImaginaryTolerance * scale) {
      throw Error(ErrorKind::kComplexSpectrum,
                  fmt::format("eigenvalue {}{:+}i", ev(i).real(), ev(i).imag()));
    }
    out[static_cast<std::size_t>(i)] = ev(i).real();
  }
  std::sort(out.begin(), out.end());
  return out;
}

Eigenvalues eigenvalues(const DiscreteOperator& op) { return eigenvalues(op.entries); }

Spectrum spectrum(const DiscreteOperator& op) {
  return Spectrum{eigenvalues(op), charpoly_invariants(op)};
}

Spectrum spectrum(const Quadrilateral& q, Scheme scheme, double kappa, FirstOrderSign sign) {
  return spectrum(assemble(q, scheme, kappa, sign));
}

Invariants elementary_symmetric(const Eigenvalues& l) {
  const double e1 = l[0] + l[1] + l[2] + l[3];
  const double e2 = l[0] * l[1] + l[0] * l[2] + l[0] * l[3] + l[1] * l[2] + l[1] * l[3] +
                    l[2] * l[3];
  const double e3 = l[0] * l[1] * l[2] + l[0] * l[1] * l[3] + l[0] * l[2] * l[3] +
                    l[1] * l[2] * l[3];
  const double e4 = l[0] * l[1] * l[2] * l[3];
  return {e4, e3, e2, e1};
}

double charpoly_eval(const Invariants& xi, double z) {
  return (((z - xi[3]) * z + xi[2]) * z - xi[1]) * z + xi[0];
}

CharpolyGradient charpoly_with_gradient(const Quadrilateral& q, Scheme scheme, double kappa,
                                        FirstOrderSign sign) {
  const auto d = scheme_matrices(scheme, kappa);
  const auto l = assemble_matrix(q.dual_vertices(), d, build_grid(kappa), sign);
  const auto xi = charpoly_invariants(l);
  CharpolyGradient out;
  for (std::size_t k = 0; k < 4; ++k) {
    out.xi[k] = xi[k].value;
    out.d_xi[k] = xi[k].partials;
  }
  return out;
}

std::vector<double> continuous_square_eigenvalues(int count) {
  if (count < 1) throw Error(ErrorKind::kInvalidArgument, "count must be >= 1");
  std::vector<int> sums;
  for (int m = 1; m <= count; ++m)
    for (int n = 1; n <= count; ++n) sums.push_back(m * m + n * n);
  std::sort(sums.begin(), sums.end());
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  const double pi2 = std::numbers::pi * std::numbers::pi;
  for (int i = 0; i < count; ++i) out.push_back(pi2 * sums[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace isoquad
