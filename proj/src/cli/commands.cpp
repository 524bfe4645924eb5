#include "isoquad/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "isoquad/cli/config.hpp"
#include "isoquad/cli/csv.hpp"
#include "isoquad/cli/reproduce.hpp"
#include "isoquad/error.hpp"

namespace isoquad::cli {

using nlohmann::json;

unsigned threads_from_env() {
  const char* env = std::getenv("ISOQUAD_THREADS");
  if (env == nullptr || *env == '\0') return std::max(1u, std::thread::hardware_concurrency());
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 0)
    throw Error(ErrorKind::kInvalidArgument, fmt::format("ISOQUAD_THREADS='{}' is not a count", env));
  return static_cast<unsigned>(v);
}

namespace {

using Clock = std::chrono::steady_clock;

/// Flags shared by all experiment subcommands. Only flags actually given on
/// the command line override the config file.
struct CommonFlags {
  std::string config;
  std::string star;
  std::string scheme;
  double kappa = kUniformKappa;
  std::string sign;
  CLI::Option* star_opt = nullptr;
  CLI::Option* scheme_opt = nullptr;
  CLI::Option* kappa_opt = nullptr;
  CLI::Option* sign_opt = nullptr;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "JSON config file or manifest");
    star_opt = app->add_option("--star", star,
                               "reference domain: qstar, qstar2, square or alpha,beta,gamma,delta");
    scheme_opt = app->add_option("--scheme", scheme, "fd or sp");
    kappa_opt = app->add_option("--kappa", kappa, "collocation parameter in (0, 1/2)");
    sign_opt = app->add_option("--first-order-sign", sign, "reported or consistent");
  }

  RunConfig resolve(const std::vector<std::function<void(RunConfig&)>>& extra = {}) const {
    RunConfig cfg;
    if (!config.empty()) load_config_file(cfg, config);
    if (star_opt->count()) cfg.star = parse_star(star);
    if (scheme_opt->count()) cfg.disc.scheme = parse_scheme(scheme);
    if (kappa_opt->count()) cfg.disc.kappa = kappa;
    if (sign_opt->count()) {
      json j{{"first_order_sign", sign}};
      merge_json(cfg, j);
    }
    for (const auto& f : extra) f(cfg);
    cfg.sync();
    return cfg;
  }
};

std::function<void(RunConfig&)> when(const CLI::Option* opt, std::function<void(RunConfig&)> f) {
  return [opt, f](RunConfig& cfg) {
    if (opt->count()) f(cfg);
  };
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::kInvalidArgument, fmt::format("cannot write '{}'", path));
  f << content;
  if (!f) throw Error(ErrorKind::kInvalidArgument, fmt::format("write to '{}' failed", path));
}

void write_with_manifest(const std::string& path, const std::string& content,
                         const std::string& command, const RunConfig& cfg, Clock::time_point t0,
                         json diagnostics) {
  write_file(path, content);
  const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  json m{{"command", command},
         {"output", std::filesystem::path(path).filename().string()},
         {"config", to_json(cfg)},
         {"tool_version", kToolVersion},
         {"duration_seconds", seconds},
         {"diagnostics", std::move(diagnostics)}};
  write_file(path + ".manifest.json", m.dump(2) + "\n");
}

std::string two(double v) { return fmt::format("{:.2f}", v); }

json quad_json(const Quadrilateral& q) {
  return {{"alpha", q.alpha}, {"beta", q.beta}, {"gamma", q.gamma}, {"delta", q.delta}};
}

VertexList parse_vertices(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::kInvalidArgument, fmt::format("cannot parse '{}' as a number", item));
    }
  }
  if (v.size() != 8)
    throw Error(ErrorKind::kInvalidArgument, "--vertices needs x1,y1,x2,y2,x3,y3,x4,y4");
  return {Point{v[0], v[1]}, Point{v[2], v[3]}, Point{v[4], v[5]}, Point{v[6], v[7]}};
}

json trace_diagnostics(const Trace& tr) {
  double worst = 0.0;
  for (const auto& s : tr.ascending()) worst = std::max(worst, s.residual_norm);
  auto branch = [](const TraceBranch& b) {
    return json{{"samples", b.samples.size()},
                {"truncated", b.truncated},
                {"truncation_index", b.truncated ? b.last_valid_index() : -1},
                {"truncation_reason", b.truncation_reason}};
  };
  return {{"negative", branch(tr.negative)},
          {"positive", branch(tr.positive)},
          {"max_residual_norm", worst}};
}

int cmd_eigs(const RunConfig& cfg, const std::string& vertices, bool as_json, std::ostream& out) {
  VertexList v = vertices.empty() ? cfg.star.vertices() : parse_vertices(vertices);
  const auto op = assemble(v, cfg.disc.scheme, cfg.disc.kappa, cfg.disc.sign);
  const auto lambdas = eigenvalues(op);
  const auto xi = charpoly_invariants(op);
  const double a = area(v);
  const double p = perimeter(v);
  if (as_json) {
    json vj = json::array();
    for (const auto& pt : v) vj.push_back({pt.x, pt.y});
    json j{{"vertices", vj},
           {"scheme", std::string(to_string(cfg.disc.scheme))},
           {"kappa", cfg.disc.kappa},
           {"eigenvalues", lambdas},
           {"xi", {{"xi0", xi[0]}, {"xi1", xi[1]}, {"xi2", xi[2]}, {"xi3", xi[3]}}},
           {"area", a},
           {"perimeter", p}};
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "scheme " << to_string(cfg.disc.scheme) << ", kappa " << fmt::format("{:.4f}", cfg.disc.kappa)
      << '\n';
  out << "eigenvalues: " << two(lambdas[0]) << ' ' << two(lambdas[1]) << ' ' << two(lambdas[2])
      << ' ' << two(lambdas[3]) << '\n';
  out << "xi3 xi2 xi1 xi0: " << two(xi[3]) << ' ' << two(xi[2]) << ' ' << two(xi[1]) << ' '
      << two(xi[0]) << '\n';
  out << "area: " << two(a) << '\n';
  out << "perimeter: " << two(p) << '\n';
  return kExitOk;
}

int cmd_search(RunConfig cfg, const std::string& out_path, const std::string& scaled_path,
               std::ostream& out) {
  const auto t0 = Clock::now();
  validate(cfg.star);
  cfg.search.threads = threads_from_env();
  const auto res = run_search(cfg.star, cfg.search);
  std::ostringstream csv;
  write_search_csv(csv, res.accepted);
  const auto& st = res.stats;
  json diag{{"enumerated", st.enumerated},
            {"evaluated", st.evaluated},
            {"prefiltered", st.prefiltered},
            {"invalid", st.invalid},
            {"degenerate", st.degenerate},
            {"complex_spectrum", st.complex_spectrum},
            {"accepted", st.accepted},
            {"distinct_spectra", st.deduplicated},
            {"area_sharing", st.area_sharing},
            {"perimeter_sharing", st.perimeter_sharing},
            {"lambda_star", res.lambda_star}};
  if (out_path.empty()) {
    out << csv.str();
  } else {
    write_with_manifest(out_path, csv.str(), "search", cfg, t0, diag);
    out << fmt::format("accepted {} of {} ({} evaluated); area shared by {}, perimeter by {}\n",
                       st.accepted, st.enumerated, st.evaluated, st.area_sharing,
                       st.perimeter_sharing);
  }
  if (!scaled_path.empty()) {
    std::ostringstream sv;
    write_scaled_vertices_csv(sv, res.accepted);
    write_with_manifest(scaled_path, sv.str(), "search", cfg, t0, diag);
  }
  return kExitOk;
}

int cmd_trace(const RunConfig& cfg, const std::string& out_path, std::ostream& out) {
  const auto t0 = Clock::now();
  validate(cfg.star);
  const auto tr = trace(CurvePoint::from(cfg.star), cfg.trace);
  std::ostringstream csv;
  write_trace_csv(csv, tr);
  if (out_path.empty()) {
    out << csv.str();
    return kExitOk;
  }
  write_with_manifest(out_path, csv.str(), "trace", cfg, t0, trace_diagnostics(tr));
  out << fmt::format("{} samples", tr.ascending().size());
  if (tr.truncated()) {
    for (const auto* b : {&tr.negative, &tr.positive})
      if (b->truncated)
        out << fmt::format("; t{} branch truncated at m={}: {}", b->sign < 0 ? "<0" : ">0",
                           b->last_valid_index(), b->truncation_reason);
  }
  out << '\n';
  return kExitOk;
}

int cmd_deform(const RunConfig& cfg, const std::string& dir, std::ostream& out) {
  const auto t0 = Clock::now();
  validate(cfg.star);
  const auto study = deformation_study(cfg.star, cfg.deform.S, cfg.deform.T0, cfg.trace);
  std::filesystem::create_directories(dir);
  std::ostringstream summary;
  summary << "j,s,T_j,samples,negative_truncated_at,positive_truncated_at,max_residual_norm,"
             "breakdown\n";
  json steps = json::array();
  for (const auto& step : study.steps) {
    const auto file = (std::filesystem::path(dir) / fmt::format("step_{:02d}.csv", step.j)).string();
    std::ostringstream csv;
    int neg = -1;
    int pos = -1;
    std::size_t samples = 0;
    double worst = 0.0;
    json diag;
    if (step.trace) {
      const auto& tr = *step.trace;
      write_trace_csv(csv, tr);
      if (tr.negative.truncated) neg = tr.negative.last_valid_index();
      if (tr.positive.truncated) pos = tr.positive.last_valid_index();
      const auto rows = tr.ascending();
      samples = rows.size();
      for (const auto& s : rows) worst = std::max(worst, s.residual_norm);
      diag = trace_diagnostics(tr);
    } else {
      csv << kTraceHeader << ",truncated\n";
      neg = pos = 0;
      diag = {{"error", step.error}};
    }
    const bool breakdown = !step.trace || worst > cfg.deform.breakdown_tol;
    diag["j"] = step.j;
    diag["s"] = step.s;
    diag["T_j"] = step.T;
    diag["domain"] = quad_json(step.quad);
    diag["breakdown"] = breakdown;
    write_with_manifest(file, csv.str(), "deform", cfg, t0, diag);
    summary << step.j << ',' << format_full(step.s) << ',' << format_full(step.T) << ','
            << samples << ',' << neg << ',' << pos << ',' << format_full(worst) << ','
            << (breakdown ? 1 : 0) << '\n';
    steps.push_back(diag);
    out << fmt::format("j={} s={:.2f} T={:.4f} samples={} max residual {:.2e}{}{}\n", step.j,
                       step.s, step.T, samples, worst,
                       (neg >= 0 || pos >= 0) ? " truncated" : "",
                       breakdown ? " breakdown" : "");
  }
  write_with_manifest((std::filesystem::path(dir) / "summary.csv").string(), summary.str(),
                      "deform", cfg, t0, json{{"steps", steps}});
  return kExitOk;
}

int cmd_reproduce(const std::string& suite, std::ostream& out) {
  const auto checks = run_suite(suite, threads_from_env());
  std::size_t passed = 0;
  out << fmt::format("{:<8} {:<36} {:<44} {:<44} {:<14} {}\n", "suite", "check", "expected",
                     "got", "tol", "status");
  for (const auto& c : checks) {
    out << fmt::format("{:<8} {:<36} {:<44} {:<44} {:<14} {}\n", c.suite, c.name, c.expected,
                       c.got, c.tol, c.pass ? "PASS" : "FAIL");
    passed += c.pass ? 1 : 0;
  }
  out << fmt::format("{}/{} checks passed\n", passed, checks.size());
  return passed == checks.size() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Isospectral quadrilateral experiments", "isoquad"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::function<int()> action;

  auto* eigs = app.add_subcommand("eigs", "eigenvalues and invariants of one domain");
  CommonFlags eigs_flags;
  eigs_flags.attach(eigs);
  std::string vertices;
  bool as_json = false;
  eigs->add_option("--vertices", vertices, "x1,y1,x2,y2,x3,y3,x4,y4")->excludes(eigs_flags.star_opt);
  eigs->add_flag("--json", as_json, "structured output");
  eigs->callback([&] {
    action = [&] { return cmd_eigs(eigs_flags.resolve(), vertices, as_json, out); };
  });

  auto* search = app.add_subcommand("search", "epsilon-isospectral grid search");
  search->set_help_flag("--help", "Print this help message and exit");
  CommonFlags search_flags;
  search_flags.attach(search);
  double l = 0, h = 0, eps = 0, area_tol = 0;
  bool prefilter = false;
  std::string search_out, scaled_out;
  auto* l_opt = search->add_option("--l", l, "side of the search square");
  auto* h_opt = search->add_option("--h", h, "grid step");
  auto* eps_opt = search->add_option("--eps", eps, "acceptance threshold");
  auto* pre_opt = search->add_flag("--prefilter", prefilter, "skip domains of different area");
  auto* atol_opt = search->add_option("--area-tol", area_tol, "relative area tolerance");
  search->add_option("--out", search_out, "CSV output file (stdout when omitted)");
  search->add_option("--scaled-out", scaled_out, "CSV of the rescaled vertex lists");
  search->callback([&] {
    action = [&] {
      auto cfg = search_flags.resolve({
          when(l_opt, [&](RunConfig& c) { c.search.l = l; }),
          when(h_opt, [&](RunConfig& c) { c.search.h = h; }),
          when(eps_opt, [&](RunConfig& c) { c.search.epsilon = eps; }),
          when(pre_opt, [&](RunConfig& c) { c.search.area_prefilter = prefilter; }),
          when(atol_opt, [&](RunConfig& c) { c.search.area_tol = area_tol; }),
      });
      return cmd_search(cfg, search_out, scaled_out, out);
    };
  });

  // trace and deform share the stepping options.
  struct StepFlags {
    std::string method, explicit_param;
    double T = 0, fd_increment = 0, singular_tol = 0;
    int M = 0;
    CLI::Option *method_opt, *explicit_opt, *T_opt, *M_opt, *inc_opt, *tol_opt;
    void attach(CLI::App* app, bool with_T) {
      method_opt = app->add_option("--method", method, "exact or fd");
      explicit_opt = app->add_option("--explicit", explicit_param, "alpha, beta, gamma or delta");
      T_opt = with_T ? app->add_option("--T", T, "half-length of the t interval") : nullptr;
      M_opt = app->add_option("--M", M, "steps per branch");
      inc_opt = app->add_option("--fd-increment", fd_increment, "difference quotient increment");
      tol_opt = app->add_option("--singular-tol", singular_tol, "scaled determinant threshold");
    }
    std::vector<std::function<void(RunConfig&)>> overrides() {
      std::vector<std::function<void(RunConfig&)>> v{
          when(method_opt, [this](RunConfig& c) { c.trace.method = parse_method(method); }),
          when(explicit_opt,
                    [this](RunConfig& c) { c.trace.explicit_param = parse_param(explicit_param); }),
          when(M_opt, [this](RunConfig& c) { c.trace.M = M; }),
          when(inc_opt, [this](RunConfig& c) { c.trace.fd_increment = fd_increment; }),
          when(tol_opt, [this](RunConfig& c) { c.trace.singular_tol = singular_tol; }),
      };
      if (T_opt) v.push_back(when(T_opt, [this](RunConfig& c) { c.trace.T = T; }));
      return v;
    }
  };

  auto* tr = app.add_subcommand("trace", "follow an isospectral curve");
  CommonFlags trace_flags;
  trace_flags.attach(tr);
  StepFlags trace_steps;
  trace_steps.attach(tr, true);
  std::string trace_out;
  tr->add_option("--out", trace_out, "CSV output file (stdout when omitted)");
  tr->callback([&] {
    action = [&] { return cmd_trace(trace_flags.resolve(trace_steps.overrides()), trace_out, out); };
  });

  auto* deform = app.add_subcommand("deform", "trace along a deformation towards the square");
  CommonFlags deform_flags;
  deform_flags.attach(deform);
  StepFlags deform_steps;
  deform_steps.attach(deform, false);
  int S = 0;
  double T0 = 0, breakdown = 0;
  std::string deform_out;
  auto* S_opt = deform->add_option("--S", S, "number of deformation steps");
  auto* T0_opt = deform->add_option("--T0", T0, "half-length of the first t interval");
  auto* bd_opt = deform->add_option("--breakdown-tol", breakdown,
                                    "residual above which a step is flagged");
  deform->add_option("--out", deform_out, "output directory")->required();
  deform->callback([&] {
    action = [&] {
      auto extra = deform_steps.overrides();
      extra.push_back(when(S_opt, [&](RunConfig& c) { c.deform.S = S; }));
      extra.push_back(when(T0_opt, [&](RunConfig& c) { c.deform.T0 = T0; }));
      extra.push_back(when(bd_opt, [&](RunConfig& c) { c.deform.breakdown_tol = breakdown; }));
      return cmd_deform(deform_flags.resolve(extra), deform_out, out);
    };
  });

  auto* rep = app.add_subcommand("reproduce", "check the reference numbers");
  std::string suite = "all";
  rep->add_option("--suite", suite, "all, spectra, search, trace, table1 or square");
  rep->callback([&] { action = [&] { return cmd_reproduce(suite, out); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    return action();
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace isoquad::cli
