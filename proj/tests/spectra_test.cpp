#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "isoquad/error.hpp"
#include "isoquad/spectra.hpp"
#include "support.hpp"

using namespace isoquad;
using doctest::Approx;

namespace {

void check_spectrum(const Eigenvalues& got, const Eigenvalues& want, double tol) {
  for (int i = 0; i < 4; ++i) CHECK(std::abs(got[i] - want[i]) <= tol);
}

}  // namespace

TEST_SUITE("spectra") {

TEST_CASE("reference spectra") {
  const auto fd = Scheme::kFiniteDifference;
  const auto sp = Scheme::kSpectral;
  check_spectrum(eigenvalues(assemble(presets::kUnitSquare, fd)), {18, 36, 36, 54}, 1e-9);
  check_spectrum(eigenvalues(assemble(presets::kUnitSquare, sp, legendre_kappa())),
                 {20, 40, 40, 60}, 1e-6);
  check_spectrum(eigenvalues(assemble(presets::kSkewed, sp)), {12.52, 24.63, 25.98, 38.05},
                 0.005);
  check_spectrum(eigenvalues(assemble(presets::kSkewed, fd)), {12.54, 24.79, 25.43, 38.30},
                 0.005);
  check_spectrum(eigenvalues(assemble(presets::kSkewed, sp, legendre_kappa())),
                 {13.92, 27.30, 28.59, 43.11}, 0.005);
}

TEST_CASE("invariants") {
  const auto xi = charpoly_invariants(assemble(presets::kSkewed, Scheme::kSpectral));
  CHECK(xi[0] == Approx(304819.78).epsilon(1e-6));
  CHECK(xi[1] == Approx(56468.45).epsilon(1e-6));
  CHECK(xi[2] == Approx(3675.65).epsilon(1e-6));
  CHECK(xi[3] == Approx(101.18).epsilon(1e-4));

  const auto sq = charpoly_invariants(assemble(presets::kUnitSquare, Scheme::kFiniteDifference));
  CHECK(sq[3] == Approx(144));
  CHECK(sq[0] == Approx(1259712));

  std::mt19937_64 rng(13);
  for (int i = 0; i < 20; ++i) {
    const auto op = assemble(testing::random_quad(rng), Scheme::kSpectral);
    const auto x = charpoly_invariants(op);
    CHECK(x[3] == Approx(op.entries.trace()));
    const auto e = elementary_symmetric(eigenvalues(op));
    for (int k = 0; k < 4; ++k) CHECK(x[k] == Approx(e[k]).epsilon(1e-10));
  }
}

TEST_CASE("characteristic polynomial vanishes at the eigenvalues") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    const auto q = testing::random_quad(rng);
    const auto s = spectrum(q, Scheme::kSpectral);
    for (double l : s.lambdas) CHECK(std::abs(charpoly_eval(s.xi, l)) <= 1e-6 * s.xi[0]);
  }
}

TEST_CASE("eigenvalues are sorted, positive, deterministic") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 20; ++i) {
    const auto q = testing::random_quad(rng);
    const auto a = eigenvalues(assemble(q, Scheme::kSpectral));
    const auto b = eigenvalues(assemble(q, Scheme::kSpectral));
    CHECK(a == b);
    CHECK(a[0] > 0);
    for (int k = 0; k < 3; ++k) CHECK(a[k] <= a[k + 1]);
  }
}

TEST_CASE("complex spectrum is rejected") {
  Matrix4<double> rot;
  rot(0, 1) = -1;
  rot(1, 0) = 1;
  rot(2, 2) = 1;
  rot(3, 3) = 2;
  try {
    eigenvalues(rot);
    FAIL("expected ComplexSpectrum");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kComplexSpectrum);
  }
}

TEST_CASE("homothety law") {
  const auto q = presets::kSkewed;
  const auto base = eigenvalues(assemble(q, Scheme::kSpectral));
  const auto xi = charpoly_invariants(assemble(q, Scheme::kSpectral));
  for (double c : {0.5, 2.0, 10.0}) {
    const auto m = assemble(scale(q, c), Scheme::kSpectral);
    const auto l = eigenvalues(m);
    for (int i = 0; i < 4; ++i) CHECK(l[i] == Approx(base[i] / c).epsilon(1e-10));
    const auto x = charpoly_invariants(m);
    for (int k = 0; k < 4; ++k)
      CHECK(x[k] == Approx(xi[k] / std::pow(c, 4 - k)).epsilon(1e-10));
  }
}

TEST_CASE("isometric perturbations of the square") {
  const double s = 0.01;
  const Quadrilateral qs[4] = {{-s, 1, 1, 1}, {0, 1 + s, 1, 1}, {0, 1, 1 + s, 1}, {0, 1, 1, 1 + s}};
  const auto ref = eigenvalues(assemble(qs[0], Scheme::kSpectral));
  for (const auto& q : qs) {
    const auto l = eigenvalues(assemble(q, Scheme::kSpectral));
    for (int i = 0; i < 4; ++i) CHECK(std::abs(l[i] - ref[i]) <= 1e-9);
  }
}

TEST_CASE("dual-number gradients") {
  SUBCASE("against central differences") {
    std::mt19937_64 rng(23);
    std::vector<Quadrilateral> qs = {presets::kSkewed};
    for (int i = 0; i < 20; ++i) qs.push_back(testing::random_quad(rng));
    const double h = 1e-6;
    for (const auto& q : qs) {
      const auto g = charpoly_with_gradient(q, Scheme::kSpectral);
      for (int p = 0; p < 4; ++p) {
        auto hi = q.params();
        auto lo = q.params();
        hi[p] += h;
        lo[p] -= h;
        const auto xh = charpoly_invariants(assemble(Quadrilateral::from_params(hi), Scheme::kSpectral));
        const auto xl = charpoly_invariants(assemble(Quadrilateral::from_params(lo), Scheme::kSpectral));
        for (int k = 0; k < 4; ++k) {
          const double fd = (xh[k] - xl[k]) / (2 * h);
          const double scale = std::max({std::abs(fd), std::abs(g.d_xi[k][p]), 1e-3 * g.xi[k]});
          CHECK(std::abs(g.d_xi[k][p] - fd) <= 1e-6 * scale);
        }
      }
    }
  }
  SUBCASE("equal derivatives along -alpha, beta, gamma, delta at the square") {
    const auto g = charpoly_with_gradient(presets::kUnitSquare, Scheme::kSpectral);
    const double h = 1e-6;
    for (int k = 0; k < 4; ++k) {
      const double ref = -g.d_xi[k][0];
      CHECK(std::abs(ref) > 1.0);
      for (int p = 1; p < 4; ++p) CHECK(g.d_xi[k][p] == Approx(ref).epsilon(1e-12));
      const auto lo = charpoly_invariants(assemble(Quadrilateral{h, 1, 1, 1}, Scheme::kSpectral));
      const auto hi = charpoly_invariants(assemble(Quadrilateral{-h, 1, 1, 1}, Scheme::kSpectral));
      CHECK((hi[k] - lo[k]) / (2 * h) == Approx(ref).epsilon(1e-6));
    }
  }
  SUBCASE("rectangles") {
    // xi3 = 72 (1 + 1 / beta^2) for the beta-rectangle.
    for (double b : {0.8, 1.0, 1.5}) {
      const auto g = charpoly_with_gradient(Quadrilateral{0, b, 1, b}, Scheme::kSpectral);
      CHECK(g.xi[3] == Approx(72 + 72 / (b * b)));
      const double dbeta = g.d_xi[3][1] + g.d_xi[3][3];
      CHECK(dbeta == Approx(-144 / (b * b * b)));
      // xi0 = prod over (a, c) in {9, 27}^2 of (a + c / beta^2).
      double prod = 1, dprod = 0;
      for (double a : {9.0, 27.0})
        for (double c : {9.0, 27.0}) {
          const double l = a + c / (b * b);
          dprod = dprod * l + prod * (-2 * c / (b * b * b));
          prod *= l;
        }
      CHECK(g.xi[0] == Approx(prod));
      CHECK(g.d_xi[0][1] + g.d_xi[0][3] == Approx(dprod));
    }
  }
}

TEST_CASE("continuous square eigenvalues") {
  const double p2 = std::numbers::pi * std::numbers::pi;
  const auto four = continuous_square_eigenvalues(4);
  REQUIRE(four.size() == 4);
  CHECK(four[0] == Approx(2 * p2));
  CHECK(four[1] == Approx(5 * p2));
  CHECK(four[2] == Approx(5 * p2));
  CHECK(four[3] == Approx(8 * p2));
  CHECK(continuous_square_eigenvalues(1)[0] == Approx(19.74).epsilon(1e-3));
  CHECK(continuous_square_eigenvalues(5)[4] == Approx(10 * p2));
}

}
