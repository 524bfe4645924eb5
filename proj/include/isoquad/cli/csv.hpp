#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "isoquad/continuation.hpp"
#include "isoquad/search.hpp"

namespace isoquad::cli {

inline constexpr const char* kSearchHeader =
    "alpha,beta,gamma,delta,c,lambda1,lambda2,lambda3,lambda4,err,area,perimeter";
inline constexpr const char* kTraceHeader =
    "t,alpha,beta,gamma,delta,c,residual_norm,det_jacobian";

/// 17 significant digits.
std::string format_full(double v);

void write_search_csv(std::ostream& out, const std::vector<Candidate>& rows);
/// Scaled (epsilon-isospectral) vertex lists: c, x1..y4.
void write_scaled_vertices_csv(std::ostream& out, const std::vector<Candidate>& rows);
/// Ascending t. A trailing `truncated` column is added when either branch
/// stopped early; it is 1 on the last sample of each truncated branch.
void write_trace_csv(std::ostream& out, const Trace& trace);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

CsvTable read_csv(std::istream& in);

}  // namespace isoquad::cli
