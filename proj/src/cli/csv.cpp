#include "isoquad/cli/csv.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "isoquad/error.hpp"

namespace isoquad::cli {

std::string format_full(double v) { return fmt::format("{:.17g}", v); }

namespace {

void write_row(std::ostream& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out << ',';
    out << format_full(v);
    first = false;
  }
}

}  // namespace

void write_search_csv(std::ostream& out, const std::vector<Candidate>& rows) {
  out << kSearchHeader << '\n';
  for (const auto& r : rows) {
    const auto& q = r.quad;
    write_row(out, {q.alpha, q.beta, q.gamma, q.delta, r.c, r.lambdas[0], r.lambdas[1],
                    r.lambdas[2], r.lambdas[3], r.err, r.area, r.perimeter});
    out << '\n';
  }
}

void write_scaled_vertices_csv(std::ostream& out, const std::vector<Candidate>& rows) {
  out << "c,x1,y1,x2,y2,x3,y3,x4,y4,area,perimeter\n";
  for (const auto& r : rows) {
    const auto v = r.scaled_vertices();
    write_row(out, {r.c, v[0].x, v[0].y, v[1].x, v[1].y, v[2].x, v[2].y, v[3].x, v[3].y,
                    r.scaled_area(), r.scaled_perimeter()});
    out << '\n';
  }
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  const bool flag = trace.truncated();
  out << kTraceHeader << (flag ? ",truncated" : "") << '\n';
  const auto rows = trace.ascending();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& s = rows[i];
    const auto& p = s.point;
    write_row(out, {s.t, p.alpha, p.beta, p.gamma, p.delta, p.c, s.residual_norm, s.det});
    if (flag) {
      bool stop = (i == 0 && trace.negative.truncated) ||
                  (i + 1 == rows.size() && trace.positive.truncated);
      out << ',' << (stop ? 1 : 0);
    }
    out << '\n';
  }
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) return table;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) table.header.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw Error(ErrorKind::kInvalidArgument, fmt::format("bad CSV cell '{}'", cell));
      }
    }
    if (row.size() != table.header.size())
      throw Error(ErrorKind::kInvalidArgument, "CSV row width does not match header");
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace isoquad::cli
