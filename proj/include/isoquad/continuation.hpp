#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isoquad/discretization.hpp"
#include "isoquad/spectra.hpp"

namespace isoquad {

enum class Param { kAlpha = 0, kBeta = 1, kGamma = 2, kDelta = 3 };

std::string_view to_string(Param p) noexcept;
Param parse_param(std::string_view name);

/// Point (alpha, beta, gamma, delta, c) of the five-dimensional parameter space.
struct CurvePoint {
  double alpha = 0.0;
  double beta = 1.0;
  double gamma = 1.0;
  double delta = 1.0;
  double c = 1.0;

  static CurvePoint from(const Quadrilateral& q, double c = 1.0) {
    return {q.alpha, q.beta, q.gamma, q.delta, c};
  }
  Quadrilateral quad() const { return {alpha, beta, gamma, delta}; }
  std::array<double, 5> coords() const { return {alpha, beta, gamma, delta, c}; }
  static CurvePoint from_coords(const std::array<double, 5>& v) {
    return {v[0], v[1], v[2], v[3], v[4]};
  }
};

enum class TraceMethod { kExact, kFiniteDifference };
enum class Difference { kForward, kCentral };

std::string_view to_string(TraceMethod m) noexcept;
TraceMethod parse_method(std::string_view name);

struct TraceConfig {
  Param explicit_param = Param::kBeta;
  double T = 0.06;
  int M = 100;
  TraceMethod method = TraceMethod::kExact;
  double fd_increment = 1e-6;
  Difference fd_difference = Difference::kForward;
  /// Threshold on |det| / prod(row norms) of the tangent system.
  double singular_tol = 1e-16;
  Discretization disc;
};

/// F_k = xi_k(alpha, beta, gamma, delta) - c^(4-k) xi*_k.
std::array<double, 4> residuals(const CurvePoint& p, const Invariants& xi_star,
                                const Discretization& disc = {});

/// ||F|| / ||xi*||.
double relative_residual(const CurvePoint& p, const Invariants& xi_star,
                         const Discretization& disc = {});

/// Linear tangent system A y = b in the unknowns (the three implicit shape
/// parameters in alpha, beta, gamma, delta order, then c).
struct TangentSystem {
  Matrix4<double> matrix;
  Vector4<double> rhs{};
  std::array<Param, 3> implicit_params{};
};

TangentSystem exact_tangent_system(const CurvePoint& p, const Invariants& xi_star,
                                   Param explicit_param, const Discretization& disc = {});

/// det A / prod_i ||row_i(A)|| (signed).
double scaled_determinant(const Matrix4<double>& a);

/// d/dt of all five coordinates with d(explicit)/dt = 1.
struct Tangent {
  std::array<double, 5> dphi{};
  double scaled_det = 0.0;
};

/// Solves the system by partial-pivoting elimination. Throws
/// BifurcationDetected when |scaled_determinant| < singular_tol.
Tangent solve_tangent(const TangentSystem& sys, Param explicit_param, double singular_tol);

Tangent tangent_exact(const CurvePoint& p, const Invariants& xi_star, Param explicit_param,
                      const Discretization& disc = {}, double singular_tol = 1e-16);

/// d lambda_i / d (alpha, beta, gamma, delta) by difference quotients of the
/// sorted eigenvalues: out[i][param]. Throws InvalidArgument for increment <= 0.
std::array<std::array<double, 4>, 4> eigen_derivatives_fd(
    const CurvePoint& p, double increment, const Discretization& disc = {},
    Difference diff = Difference::kForward);

TangentSystem fd_tangent_system(const CurvePoint& p, Param explicit_param, double increment,
                                const Discretization& disc = {},
                                Difference diff = Difference::kForward);

Tangent tangent_fd(const CurvePoint& p, Param explicit_param, double increment,
                   const Discretization& disc = {}, Difference diff = Difference::kForward,
                   double singular_tol = 1e-16);

struct TraceSample {
  double t = 0.0;
  CurvePoint point;
  double residual_norm = 0.0;
  /// Scaled determinant of the tangent system at this point (NaN if unavailable).
  double det = 0.0;
};

struct TraceBranch {
  int sign = 1;
  /// Samples m = 0..last, in order of increasing |t|.
  std::vector<TraceSample> samples;
  bool truncated = false;
  std::string truncation_reason;
  int last_valid_index() const { return static_cast<int>(samples.size()) - 1; }
};

struct Trace {
  TraceBranch negative;
  TraceBranch positive;

  bool truncated() const { return negative.truncated || positive.truncated; }
  /// Both branches merged in ascending t; t = 0 appears once.
  std::vector<TraceSample> ascending() const;
};

/// Explicit first-order stepping Phi_{m+1} = Phi_m + dt Psi_m with dt = T/M,
/// run separately for t > 0 and t < 0. Exact tangents from dual numbers.
Trace trace_exact(const CurvePoint& start, const Invariants& xi_star, const TraceConfig& cfg);

/// Same stepping with tangents from finite-difference eigenvalue derivatives.
Trace trace_fd(const CurvePoint& start, const Eigenvalues& lambda_star, const TraceConfig& cfg);

/// Dispatches on cfg.method with reference data computed from `start`.
Trace trace(const CurvePoint& start, const TraceConfig& cfg);

struct SingularityReport {
  double determinant = 0.0;         // scaled by the product of row norms
  double raw_determinant = 0.0;
  int rank = 0;
  std::array<double, 4> singular_values{};
};

/// Rank counts singular values above 1e-10 times the largest.
SingularityReport diagnose_singularity(const CurvePoint& p, const Invariants& xi_star,
                                       Param explicit_param, const Discretization& disc = {});

struct DeformationStep {
  int j = 0;
  double s = 0.0;
  double T = 0.0;
  Quadrilateral quad;
  std::optional<Trace> trace;
  std::string error;  // set when the step could not be traced at all
};

struct DeformationStudy {
  std::vector<DeformationStep> steps;
};

/// Intermediate domains V_{3,j} = (1-s_j) V3* + s_j (0,1), V_{4,j} likewise
/// towards (1,1), s_j = j/S, each traced on [-T_j, T_j] with
/// T_j = T0 / (1 + 2 s_j), j = 0..S-1. Each step is referenced to its own
/// spectrum. cfg.T is ignored; cfg.M is used for every step.
DeformationStudy deformation_study(const Quadrilateral& q_star, int S, double T0,
                                   const TraceConfig& cfg);

Quadrilateral deformation_domain(const Quadrilateral& q_star, int S, int j);
double deformation_half_range(int S, int j, double T0);

}  // namespace isoquad
