#pragma once

#include <random>

#include "isoquad/geometry.hpp"

namespace isoquad::testing {

/// Random valid quadrilateral around the unit square.
inline Quadrilateral random_quad(std::mt19937_64& rng, double spread = 0.3) {
  std::uniform_real_distribution<double> d(-spread, spread);
  for (;;) {
    Quadrilateral q{d(rng), 1.0 + d(rng), 1.0 + d(rng), 1.0 + d(rng)};
    if (is_valid(q)) return q;
  }
}

}  // namespace isoquad::testing
