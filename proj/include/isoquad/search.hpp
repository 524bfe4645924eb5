#pragma once

#include <cstddef>
#include <vector>

#include "isoquad/discretization.hpp"
#include "isoquad/spectra.hpp"

namespace isoquad {

struct SearchConfig {
  double l = 0.1;
  double h = 0.0036;
  double epsilon = 1e-4;
  Discretization disc;
  bool area_prefilter = false;
  double area_tol = 1e-3;
  /// Worker threads; 0 evaluates sequentially on the calling thread.
  unsigned threads = 0;
};

/// Offsets k*h, |k*h| <= l/2, ascending; always contains 0.
std::vector<double> hrange_offsets(double l, double h);

/// Cartesian product of the two vertex grids around V3* and V4*, in
/// lexicographic order: V3 offsets outer, V4 inner; y outer, x inner.
class HRange {
 public:
  HRange(const Quadrilateral& q_star, double l, double h);

  std::size_t size() const noexcept { return total_; }
  std::size_t offsets_per_axis() const noexcept { return offsets_.size(); }
  Quadrilateral operator[](std::size_t index) const;

 private:
  Quadrilateral center_;
  std::vector<double> offsets_;
  std::size_t total_ = 0;
};

std::vector<Quadrilateral> enumerate_hrange(const Quadrilateral& q_star, double l, double h);

struct EpsilonError {
  double c = 1.0;
  double err = 0.0;
};

/// c = lambda_1 / lambda*_1 and the relative l2 mismatch of lambda - c lambda*.
EpsilonError epsilon_error(const Eigenvalues& lambdas, const Eigenvalues& lambdas_star);

struct Candidate {
  Quadrilateral quad;
  double c = 1.0;
  Eigenvalues lambdas{};
  double err = 0.0;
  double area = 0.0;       // of quad itself
  double perimeter = 0.0;  // of quad itself

  /// The epsilon-isospectral domain sqrt(c) * quad.
  VertexList scaled_vertices() const;
  double scaled_area() const { return c * area; }
  double scaled_perimeter() const;
};

struct SearchStats {
  std::size_t enumerated = 0;
  std::size_t evaluated = 0;
  std::size_t prefiltered = 0;
  std::size_t invalid = 0;
  std::size_t degenerate = 0;
  std::size_t complex_spectrum = 0;
  std::size_t accepted = 0;
  std::size_t deduplicated = 0;
  /// Accepted domains whose scaled area / perimeter match the reference
  /// within area_tol (relative).
  std::size_t area_sharing = 0;
  std::size_t perimeter_sharing = 0;
};

struct SearchResult {
  Eigenvalues lambda_star{};
  double area_star = 0.0;
  double perimeter_star = 0.0;
  std::vector<Candidate> accepted;
  SearchStats stats;
};

/// Evaluates every h-range member and keeps those with err <= epsilon, in
/// enumeration order regardless of the number of threads.
SearchResult run_search(const Quadrilateral& q_star, const SearchConfig& cfg);

}  // namespace isoquad
