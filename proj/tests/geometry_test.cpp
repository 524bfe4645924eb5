#include <doctest.h>

#include <cmath>
#include <random>

#include "isoquad/error.hpp"
#include "isoquad/geometry.hpp"
#include "support.hpp"

using namespace isoquad;
using doctest::Approx;

TEST_SUITE("geometry") {

TEST_CASE("map_point") {
  const auto id = presets::kUnitSquare;
  auto p = map_point(id, {0.4, 0.7});
  CHECK(p.x == Approx(0.4));
  CHECK(p.y == Approx(0.7));

  const auto q = presets::kSkewed;
  p = map_point(q, {1, 1});
  CHECK(p.x == Approx(1.2));
  CHECK(p.y == Approx(1.3));
  p = map_point(q, {0.5, 0.5});
  CHECK(p.x == Approx(0.5));
  CHECK(p.y == Approx(0.6));

  const auto v = q.vertices();
  const Point corners[] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  for (int i = 0; i < 4; ++i) {
    const auto m = map_point(q, corners[i]);
    CHECK(m.x == Approx(v[i].x));
    CHECK(m.y == Approx(v[i].y));
  }
}

TEST_CASE("jacobian sigma") {
  CHECK(jacobian_sigma(presets::kUnitSquare, {0.3, 0.9}) == Approx(1.0));
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const auto q = testing::random_quad(rng);
    CHECK(jacobian_sigma(q, {0, 0}) == Approx(q.beta));
    // sigma is affine in x for fixed y and vice versa.
    const double s0 = jacobian_sigma(q, {0.0, 0.4});
    const double s1 = jacobian_sigma(q, {1.0, 0.4});
    CHECK(jacobian_sigma(q, {0.25, 0.4}) == Approx(0.75 * s0 + 0.25 * s1));
  }
  CHECK(jacobian_sigma(presets::kSkewed, {1.0 / 3, 1.0 / 3}) == Approx(199.0 / 150).epsilon(1e-14));
}

TEST_CASE("coefficients") {
  SUBCASE("identity") {
    const auto f = coefficients(presets::kUnitSquare, {0.2, 0.6});
    CHECK(f.f1 == -1.0);
    CHECK(f.f2 == 0.0);
    CHECK(f.f3 == -1.0);
    CHECK(f.f4 == 0.0);
    CHECK(f.f5 == 0.0);
  }
  SUBCASE("rectangle") {
    for (double b : {0.5, 1.3, 2.0}) {
      const auto f = coefficients(Quadrilateral{0, b, 1, b}, {0.7, 0.1});
      CHECK(f.f1 == Approx(-1.0));
      CHECK(f.f2 == Approx(0.0));
      CHECK(f.f3 == Approx(-1.0 / (b * b)));
      CHECK(f.f4 == Approx(0.0));
      CHECK(f.f5 == Approx(0.0));
    }
  }
  SUBCASE("skewed reference, symbolic values") {
    const auto f = coefficients(presets::kSkewed, {1.0 / 3, 1.0 / 3});
    CHECK(f.f1 == Approx(-0.77586424585237746).epsilon(1e-13));
    CHECK(f.f2 == Approx(0.0025251887578596500).epsilon(1e-12));
    CHECK(f.f3 == Approx(-0.73230473977929850).epsilon(1e-13));
    CHECK(f.f4 == Approx(-0.00091363613349695880).epsilon(1e-12));
    CHECK(f.f5 == Approx(-0.00038068172229039950).epsilon(1e-12));
  }
  SUBCASE("f1 and f3 negative") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
      const auto q = testing::random_quad(rng, 0.4);
      for (double x : {1.0 / 3, 2.0 / 3})
        for (double y : {1.0 / 3, 2.0 / 3}) {
          const auto f = coefficients(q, {x, y});
          CHECK(f.f1 < 0);
          CHECK(f.f3 < 0);
        }
    }
  }
}

TEST_CASE("area and perimeter") {
  CHECK(area(presets::kUnitSquare) == Approx(1.0));
  CHECK(area(presets::kSkewed) == Approx(1.44).epsilon(1e-14));
  CHECK(perimeter(presets::kUnitSquare) == Approx(4.0));
  CHECK(perimeter(presets::kSkewed) ==
        Approx(1 + std::sqrt(1.73) + std::sqrt(2.0) + std::sqrt(1.25)).epsilon(1e-14));
  CHECK(perimeter(presets::kSkewed) == Approx(4.8475422).epsilon(1e-7));
  for (double c : {0.25, 1.0, 3.0}) {
    const auto v = scale(presets::kSkewed, c);
    CHECK(area(v) == Approx(c * 1.44));
    CHECK(perimeter(v) == Approx(std::sqrt(c) * perimeter(presets::kSkewed)));
  }
}

TEST_CASE("scale") {
  const auto v = presets::kSkewed.vertices();
  const auto same = scale(v, 1.0);
  for (int i = 0; i < 4; ++i) {
    CHECK(same[i].x == v[i].x);
    CHECK(same[i].y == v[i].y);
  }
  const auto big = scale(presets::kUnitSquare, 4.0);
  CHECK(big[3].x == Approx(2.0));
  CHECK(big[3].y == Approx(2.0));
  CHECK(area(big) == Approx(4.0));
  CHECK_THROWS_AS(scale(v, 0.0), Error);
  try {
    scale(v, -1.0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNonPositiveFactor);
  }
}

TEST_CASE("validate") {
  CHECK_NOTHROW(validate(presets::kUnitSquare));
  CHECK(is_valid(presets::kSkewed));
  for (const auto q : {Quadrilateral{0, -1, 1, 1}, Quadrilateral{1.5, 1, -0.5, 1}}) {
    CHECK_FALSE(is_valid(q));
    try {
      validate(q);
      FAIL("expected InvalidQuadrilateral");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kInvalidQuadrilateral);
      CHECK(std::string(e.what()).find("InvalidQuadrilateral") != std::string::npos);
    }
  }
}

TEST_CASE("degenerate jacobian is reported") {
  // Flat quadrilateral, sigma = 0 everywhere.
  try {
    coefficients(Quadrilateral{0, 0, 1, 0}, {0.5, 0.5});
    FAIL("expected DegenerateJacobian");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDegenerateJacobian);
  }
}

}
