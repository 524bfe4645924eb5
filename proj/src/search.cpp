#include "isoquad/search.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <fmt/format.h>

namespace isoquad {

namespace {

struct ChunkResult {
  std::vector<Candidate> accepted;
  SearchStats stats;
};

struct Evaluator {
  const SearchConfig& cfg;
  DiffMatrices matrices;
  Grid grid;
  Eigenvalues lambda_star;
  double area_star;

  void run(const HRange& range, std::size_t begin, std::size_t end, ChunkResult& out) const {
    for (std::size_t i = begin; i < end; ++i) {
      const Quadrilateral q = range[i];
      const VertexList v = q.vertices();
      if (!is_valid(q)) {
        ++out.stats.invalid;
        continue;
      }
      const double a = area(v);
      if (cfg.area_prefilter && std::abs(a - area_star) > cfg.area_tol * area_star) {
        ++out.stats.prefiltered;
        continue;
      }
      ++out.stats.evaluated;
      Eigenvalues lambdas{};
      try {
        lambdas = eigenvalues(assemble_matrix(v, matrices, grid, cfg.disc.sign));
      } catch (const Error& err) {
        if (err.kind() == ErrorKind::kComplexSpectrum) {
          ++out.stats.complex_spectrum;
        } else {
          ++out.stats.degenerate;
        }
        continue;
      }
      const EpsilonError e = epsilon_error(lambdas, lambda_star);
      if (e.err <= cfg.epsilon) {
        out.accepted.push_back(Candidate{q, e.c, lambdas, e.err, a, perimeter(v)});
      }
    }
  }
};

}  // namespace

std::vector<double> hrange_offsets(double l, double h) {
  if (!(h > 0.0) || !(h <= l))
    throw Error(ErrorKind::kInvalidStep, fmt::format("need 0 < h <= l, got h = {}, l = {}", h, l));
  // Guard against l/(2h) landing a hair below an integer.
  const auto k_max = static_cast<long>(std::floor(l / (2.0 * h) * (1.0 + 1e-12)));
  std::vector<double> out;
  for (long k = -k_max; k <= k_max; ++k) out.push_back(static_cast<double>(k) * h);
  return out;
}

HRange::HRange(const Quadrilateral& q_star, double l, double h)
    : center_(q_star), offsets_(hrange_offsets(l, h)) {
  const std::size_t n = offsets_.size();
  total_ = n * n * n * n;
}

Quadrilateral HRange::operator[](std::size_t index) const {
  const std::size_t n = offsets_.size();
  const std::size_t x4 = index % n;
  const std::size_t y4 = (index / n) % n;
  const std::size_t x3 = (index / (n * n)) % n;
  const std::size_t y3 = index / (n * n * n);
  return {center_.alpha + offsets_[x3], center_.beta + offsets_[y3],
          center_.gamma + offsets_[x4], center_.delta + offsets_[y4]};
}

std::vector<Quadrilateral> enumerate_hrange(const Quadrilateral& q_star, double l, double h) {
  const HRange range(q_star, l, h);
  std::vector<Quadrilateral> out;
  out.reserve(range.size());
  for (std::size_t i = 0; i < range.size(); ++i) out.push_back(range[i]);
  return out;
}

EpsilonError epsilon_error(const Eigenvalues& lambdas, const Eigenvalues& lambdas_star) {
  EpsilonError e;
  e.c = lambdas[0] / lambdas_star[0];
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const double d = lambdas[k] - e.c * lambdas_star[k];
    num += d * d;
    den += lambdas_star[k] * lambdas_star[k];
  }
  e.err = std::sqrt(num / den);
  return e;
}

VertexList Candidate::scaled_vertices() const { return scale(quad, c); }

double Candidate::scaled_perimeter() const { return std::sqrt(c) * perimeter; }

SearchResult run_search(const Quadrilateral& q_star, const SearchConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) throw Error(ErrorKind::kInvalidArgument, "epsilon must be positive");
  validate(q_star);
  const HRange range(q_star, cfg.l, cfg.h);

  SearchResult result;
  result.lambda_star = eigenvalues(assemble(q_star, cfg.disc.scheme, cfg.disc.kappa, cfg.disc.sign));
  result.area_star = area(q_star);
  result.perimeter_star = perimeter(q_star);

  const Evaluator eval{cfg, scheme_matrices(cfg.disc.scheme, cfg.disc.kappa),
                       build_grid(cfg.disc.kappa), result.lambda_star, result.area_star};

  const std::size_t workers = std::max<std::size_t>(1, cfg.threads);
  std::vector<ChunkResult> chunks(workers);
  const std::size_t per = (range.size() + workers - 1) / workers;
  const auto bounds = [&](std::size_t w) {
    return std::pair{std::min(range.size(), w * per), std::min(range.size(), (w + 1) * per)};
  };
  if (cfg.threads == 0) {
    eval.run(range, 0, range.size(), chunks[0]);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        const auto [b, e] = bounds(w);
        eval.run(range, b, e, chunks[w]);
      });
    }
  }

  SearchStats& st = result.stats;
  st.enumerated = range.size();
  for (auto& chunk : chunks) {
    st.evaluated += chunk.stats.evaluated;
    st.prefiltered += chunk.stats.prefiltered;
    st.invalid += chunk.stats.invalid;
    st.degenerate += chunk.stats.degenerate;
    st.complex_spectrum += chunk.stats.complex_spectrum;
    for (auto& c : chunk.accepted) result.accepted.push_back(std::move(c));
  }
  st.accepted = result.accepted.size();

  for (std::size_t i = 0; i < result.accepted.size(); ++i) {
    const Candidate& a = result.accepted[i];
    if (std::abs(a.scaled_area() - result.area_star) <= cfg.area_tol * result.area_star)
      ++st.area_sharing;
    if (std::abs(a.scaled_perimeter() - result.perimeter_star) <=
        cfg.area_tol * result.perimeter_star)
      ++st.perimeter_sharing;
    const bool duplicate = std::any_of(
        result.accepted.begin(), result.accepted.begin() + static_cast<std::ptrdiff_t>(i),
        [&](const Candidate& b) {
          for (std::size_t k = 0; k < 4; ++k)
            if (std::abs(a.lambdas[k] - b.lambdas[k]) > 1e-9) return false;
          return true;
        });
    if (!duplicate) ++st.deduplicated;
  }
  return result;
}

}  // namespace isoquad
