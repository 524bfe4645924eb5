#include "isoquad/continuation.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/SVD>
#include <fmt/format.h>

namespace isoquad {

namespace {

constexpr std::size_t idx(Param p) { return static_cast<std::size_t>(p); }

std::array<Param, 3> implicit_params_for(Param explicit_param) {
  std::array<Param, 3> out{};
  std::size_t n = 0;
  for (Param p : {Param::kAlpha, Param::kBeta, Param::kGamma, Param::kDelta})
    if (p != explicit_param) out[n++] = p;
  return out;
}

double norm(const std::array<double, 4>& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
}

CurvePoint shifted(const CurvePoint& p, std::size_t param, double h) {
  auto c = p.coords();
  c[param] += h;
  return CurvePoint::from_coords(c);
}

using SystemFn = std::function<TangentSystem(const CurvePoint&)>;
using ResidualFn = std::function<double(const CurvePoint&)>;

TraceBranch run_branch(const CurvePoint& start, int sign, const TraceConfig& cfg,
                       const SystemFn& system, const ResidualFn& residual) {
  TraceBranch branch;
  branch.sign = sign;
  const double dt = cfg.T / cfg.M;
  const std::size_t e = idx(cfg.explicit_param);
  const double base = start.coords()[e];

  CurvePoint p = start;
  for (int m = 0; m <= cfg.M; ++m) {
    TraceSample sample{sign * m * dt, p, residual(p), std::numeric_limits<double>::quiet_NaN()};
    std::optional<Tangent> tangent;
    try {
      const TangentSystem sys = system(p);
      sample.det = scaled_determinant(sys.matrix);
      if (m < cfg.M) tangent = solve_tangent(sys, cfg.explicit_param, cfg.singular_tol);
    } catch (const Error& err) {
      branch.samples.push_back(sample);
      branch.truncated = true;
      branch.truncation_reason = err.what();
      return branch;
    }
    branch.samples.push_back(sample);
    if (m == cfg.M) break;

    auto next = p.coords();
    for (std::size_t i = 0; i < 5; ++i) next[i] += sign * dt * tangent->dphi[i];
    next[e] = base + sign * (m + 1) * dt;
    const CurvePoint candidate = CurvePoint::from_coords(next);
    if (!(candidate.c > 0.0)) {
      branch.truncated = true;
      branch.truncation_reason =
          fmt::format("{}: c = {} after step {}", to_string(ErrorKind::kNonPositiveFactor),
                      candidate.c, m + 1);
      return branch;
    }
    if (!is_valid(candidate.quad())) {
      branch.truncated = true;
      branch.truncation_reason =
          fmt::format("{}: {} after step {}", to_string(ErrorKind::kInvalidQuadrilateral),
                      describe(candidate.quad()), m + 1);
      return branch;
    }
    p = candidate;
  }
  return branch;
}

void check_config(const TraceConfig& cfg) {
  if (!(cfg.T > 0.0)) throw Error(ErrorKind::kInvalidArgument, "T must be positive");
  if (cfg.M < 1) throw Error(ErrorKind::kInvalidArgument, "M must be >= 1");
}

Trace run_trace(const CurvePoint& start, const TraceConfig& cfg, const SystemFn& system,
                const ResidualFn& residual) {
  check_config(cfg);
  validate(start.quad());
  if (!(start.c > 0.0)) throw Error(ErrorKind::kNonPositiveFactor, "start c must be positive");
  Trace out;
  out.negative = run_branch(start, -1, cfg, system, residual);
  out.positive = run_branch(start, +1, cfg, system, residual);
  return out;
}

}  // namespace

std::string_view to_string(Param p) noexcept {
  switch (p) {
    case Param::kAlpha: return "alpha";
    case Param::kBeta: return "beta";
    case Param::kGamma: return "gamma";
    case Param::kDelta: return "delta";
  }
  return "?";
}

Param parse_param(std::string_view name) {
  for (Param p : {Param::kAlpha, Param::kBeta, Param::kGamma, Param::kDelta})
    if (name == to_string(p)) return p;
  throw Error(ErrorKind::kInvalidArgument, fmt::format("unknown parameter '{}'", name));
}

std::string_view to_string(TraceMethod m) noexcept {
  return m == TraceMethod::kExact ? "exact" : "fd";
}

TraceMethod parse_method(std::string_view name) {
  if (name == "exact") return TraceMethod::kExact;
  if (name == "fd") return TraceMethod::kFiniteDifference;
  throw Error(ErrorKind::kInvalidArgument, fmt::format("unknown method '{}'", name));
}

std::array<double, 4> residuals(const CurvePoint& p, const Invariants& xi_star,
                                const Discretization& disc) {
  const auto xi = charpoly_invariants(assemble(p.quad(), disc.scheme, disc.kappa, disc.sign));
  std::array<double, 4> f{};
  for (std::size_t k = 0; k < 4; ++k)
    f[k] = xi[k] - std::pow(p.c, static_cast<double>(4 - k)) * xi_star[k];
  return f;
}

double relative_residual(const CurvePoint& p, const Invariants& xi_star,
                         const Discretization& disc) {
  return norm(residuals(p, xi_star, disc)) / norm(xi_star);
}

TangentSystem exact_tangent_system(const CurvePoint& p, const Invariants& xi_star,
                                   Param explicit_param, const Discretization& disc) {
  const auto grad = charpoly_with_gradient(p.quad(), disc.scheme, disc.kappa, disc.sign);
  TangentSystem sys;
  sys.implicit_params = implicit_params_for(explicit_param);
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t j = 0; j < 3; ++j) sys.matrix(k, j) = grad.d_xi[k][idx(sys.implicit_params[j])];
    const double power = static_cast<double>(4 - k);
    sys.matrix(k, 3) = -power * std::pow(p.c, power - 1.0) * xi_star[k];
    sys.rhs[k] = -grad.d_xi[k][idx(explicit_param)];
  }
  return sys;
}

double scaled_determinant(const Matrix4<double>& a) {
  double rows = 1.0;
  for (std::size_t r = 0; r < 4; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < 4; ++c) s += a(r, c) * a(r, c);
    rows *= std::sqrt(s);
  }
  if (rows == 0.0) return 0.0;
  return determinant(a) / rows;
}

Tangent solve_tangent(const TangentSystem& sys, Param explicit_param, double singular_tol) {
  const double sdet = scaled_determinant(sys.matrix);
  Vector4<double> y = sys.rhs;
  const auto det = solve_in_place(sys.matrix, y);
  if (!det || !(std::abs(sdet) >= singular_tol)) {
    throw Error(ErrorKind::kBifurcationDetected,
                fmt::format("scaled determinant {:.3e} below tolerance {:.1e}", sdet, singular_tol));
  }
  Tangent t;
  t.scaled_det = sdet;
  t.dphi[idx(explicit_param)] = 1.0;
  for (std::size_t j = 0; j < 3; ++j) t.dphi[idx(sys.implicit_params[j])] = y[j];
  t.dphi[4] = y[3];
  return t;
}

Tangent tangent_exact(const CurvePoint& p, const Invariants& xi_star, Param explicit_param,
                      const Discretization& disc, double singular_tol) {
  return solve_tangent(exact_tangent_system(p, xi_star, explicit_param, disc), explicit_param,
                       singular_tol);
}

std::array<std::array<double, 4>, 4> eigen_derivatives_fd(const CurvePoint& p, double increment,
                                                          const Discretization& disc,
                                                          Difference diff) {
  if (!(increment > 0.0))
    throw Error(ErrorKind::kInvalidArgument, fmt::format("increment {} must be positive", increment));
  const auto lambdas_at = [&](const CurvePoint& q) {
    return eigenvalues(assemble(q.quad(), disc.scheme, disc.kappa, disc.sign));
  };
  const Eigenvalues base = lambdas_at(p);
  std::array<std::array<double, 4>, 4> out{};
  for (std::size_t j = 0; j < 4; ++j) {
    const Eigenvalues plus = lambdas_at(shifted(p, j, increment));
    if (diff == Difference::kForward) {
      for (std::size_t i = 0; i < 4; ++i) out[i][j] = (plus[i] - base[i]) / increment;
    } else {
      const Eigenvalues minus = lambdas_at(shifted(p, j, -increment));
      for (std::size_t i = 0; i < 4; ++i) out[i][j] = (plus[i] - minus[i]) / (2.0 * increment);
    }
  }
  return out;
}

TangentSystem fd_tangent_system(const CurvePoint& p, Param explicit_param, double increment,
                                const Discretization& disc, Difference diff) {
  const auto dl = eigen_derivatives_fd(p, increment, disc, diff);
  const Eigenvalues lambdas = eigenvalues(assemble(p.quad(), disc.scheme, disc.kappa, disc.sign));
  TangentSystem sys;
  sys.implicit_params = implicit_params_for(explicit_param);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 3; ++j) sys.matrix(i, j) = p.c * dl[i][idx(sys.implicit_params[j])];
    sys.matrix(i, 3) = -lambdas[i];
    sys.rhs[i] = -p.c * dl[i][idx(explicit_param)];
  }
  return sys;
}

Tangent tangent_fd(const CurvePoint& p, Param explicit_param, double increment,
                   const Discretization& disc, Difference diff, double singular_tol) {
  return solve_tangent(fd_tangent_system(p, explicit_param, increment, disc, diff),
                       explicit_param, singular_tol);
}

std::vector<TraceSample> Trace::ascending() const {
  std::vector<TraceSample> out;
  out.reserve(negative.samples.size() + positive.samples.size());
  for (auto it = negative.samples.rbegin(); it != negative.samples.rend(); ++it)
    out.push_back(*it);
  for (std::size_t i = 0; i < positive.samples.size(); ++i) {
    if (i == 0 && !out.empty()) continue;
    out.push_back(positive.samples[i]);
  }
  return out;
}

Trace trace_exact(const CurvePoint& start, const Invariants& xi_star, const TraceConfig& cfg) {
  return run_trace(
      start, cfg,
      [&](const CurvePoint& p) {
        return exact_tangent_system(p, xi_star, cfg.explicit_param, cfg.disc);
      },
      [&](const CurvePoint& p) { return relative_residual(p, xi_star, cfg.disc); });
}

Trace trace_fd(const CurvePoint& start, const Eigenvalues& lambda_star, const TraceConfig& cfg) {
  const Invariants xi_star = elementary_symmetric(lambda_star);
  return run_trace(
      start, cfg,
      [&](const CurvePoint& p) {
        return fd_tangent_system(p, cfg.explicit_param, cfg.fd_increment, cfg.disc,
                                 cfg.fd_difference);
      },
      [&](const CurvePoint& p) { return relative_residual(p, xi_star, cfg.disc); });
}

Trace trace(const CurvePoint& start, const TraceConfig& cfg) {
  validate(start.quad());
  const auto op = assemble(start.quad(), cfg.disc.scheme, cfg.disc.kappa, cfg.disc.sign);
  if (cfg.method == TraceMethod::kExact) {
    Invariants xi_star = charpoly_invariants(op);
    for (std::size_t k = 0; k < 4; ++k) xi_star[k] /= std::pow(start.c, 4.0 - k);
    return trace_exact(start, xi_star, cfg);
  }
  Eigenvalues lambda_star = eigenvalues(op);
  for (auto& l : lambda_star) l /= start.c;
  return trace_fd(start, lambda_star, cfg);
}

SingularityReport diagnose_singularity(const CurvePoint& p, const Invariants& xi_star,
                                       Param explicit_param, const Discretization& disc) {
  const auto sys = exact_tangent_system(p, xi_star, explicit_param, disc);
  Eigen::Matrix4d a;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) a(r, c) = sys.matrix(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  const Eigen::JacobiSVD<Eigen::Matrix4d> svd(a);
  const auto& sv = svd.singularValues();

  SingularityReport rep;
  rep.raw_determinant = determinant(sys.matrix);
  rep.determinant = scaled_determinant(sys.matrix);
  for (int i = 0; i < 4; ++i) {
    rep.singular_values[static_cast<std::size_t>(i)] = sv(i);
    if (sv(i) > 1e-10 * sv(0)) ++rep.rank;
  }
  return rep;
}

Quadrilateral deformation_domain(const Quadrilateral& q_star, int S, int j) {
  const double s = static_cast<double>(j) / S;
  return {(1.0 - s) * q_star.alpha + s * 0.0, (1.0 - s) * q_star.beta + s * 1.0,
          (1.0 - s) * q_star.gamma + s * 1.0, (1.0 - s) * q_star.delta + s * 1.0};
}

double deformation_half_range(int S, int j, double T0) {
  const double s = static_cast<double>(j) / S;
  return T0 / (1.0 + 2.0 * s);
}

DeformationStudy deformation_study(const Quadrilateral& q_star, int S, double T0,
                                   const TraceConfig& cfg) {
  if (S <= 1) throw Error(ErrorKind::kInvalidArgument, "S must be > 1");
  if (!(T0 > 0.0)) throw Error(ErrorKind::kInvalidArgument, "T0 must be positive");
  DeformationStudy study;
  for (int j = 0; j < S; ++j) {
    DeformationStep step;
    step.j = j;
    step.s = static_cast<double>(j) / S;
    step.T = deformation_half_range(S, j, T0);
    step.quad = deformation_domain(q_star, S, j);
    TraceConfig local = cfg;
    local.T = step.T;
    try {
      step.trace = trace(CurvePoint::from(step.quad), local);
    } catch (const Error& err) {
      step.error = err.what();
    }
    study.steps.push_back(std::move(step));
  }
  return study;
}

}  // namespace isoquad
