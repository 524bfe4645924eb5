#pragma once

#include <array>
#include <string>
#include <vector>

namespace isoquad::cli {

struct Check {
  std::string suite;
  std::string name;
  std::string expected;
  std::string got;
  std::string tol;
  bool pass = false;
};

inline constexpr std::array<const char*, 5> kSuites = {"spectra", "search", "trace", "table1",
                                                       "square"};

/// Runs one suite or "all". Throws InvalidArgument for an unknown suite name.
std::vector<Check> run_suite(const std::string& name, unsigned threads = 0);

/// Printed relative area errors, rows beta* + t for t = -0.06, -0.048, ..., 0.06,
/// columns M = 5, 10, 20 with T = 0.06.
struct AreaDriftRow {
  double beta;
  std::array<double, 3> err;
};
extern const std::array<AreaDriftRow, 11> kAreaDrift;
inline constexpr std::array<int, 3> kAreaDriftSteps = {5, 10, 20};

/// Relative area errors |c A - A*| / A* of the finite-difference trace at the
/// table rows for the given M.
std::array<double, 11> area_drift_column(int M);

}  // namespace isoquad::cli
