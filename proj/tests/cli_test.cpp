#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "isoquad/cli/commands.hpp"
#include "isoquad/cli/config.hpp"
#include "isoquad/cli/csv.hpp"
#include "isoquad/error.hpp"

using namespace isoquad;
using namespace isoquad::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("isoquad_cli_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("eigs") {
  auto r = run({"eigs", "--star", "square", "--scheme", "fd"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("18.00 36.00 36.00 54.00") != std::string::npos);

  r = run({"eigs", "--star=-0.2,1.1,1.2,1.3", "--scheme", "sp", "--kappa", "0.3333333333333333"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("12.52 24.63 25.98 38.05") != std::string::npos);

  r = run({"eigs", "--vertices", "0,0,1,0,-0.2,1.1,1.2,1.3", "--json"});
  CHECK(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["eigenvalues"][0].get<double>() == doctest::Approx(12.519).epsilon(1e-4));
  CHECK(j["area"].get<double>() == doctest::Approx(1.44));

  r = run({"eigs", "--star", "1.5,1,-0.5,1"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("InvalidQuadrilateral") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"eigs", "--nope"}).code == kExitUsage);
  CHECK(run({"eigs", "--star", "1,2"}).code == kExitUsage);
  CHECK(run({"eigs", "--scheme", "fem"}).code == kExitUsage);
  CHECK(run({"eigs", "--kappa", "0.7"}).code == kExitUsage);
  CHECK(run({"reproduce", "--suite", "everything"}).code == kExitUsage);
  CHECK(run({"eigs", "--config", "/nonexistent/cfg.json"}).code == kExitUsage);
  CHECK(run({"eigs", "--help"}).code == kExitOk);
}

TEST_CASE("reproduce") {
  const auto r = run({"reproduce", "--suite", "spectra"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("5/5 checks passed") != std::string::npos);
  CHECK(run({"reproduce", "--suite", "square"}).code == kExitOk);
}

TEST_CASE("search CSV round trip and manifest") {
  TempDir dir;
  const auto file = dir / "s.csv";
  auto r = run({"search", "--h", "0.01", "--eps", "3e-4", "--out", file});
  REQUIRE(r.code == kExitOk);
  std::ifstream in(file);
  const auto table = read_csv(in);
  std::string header;
  for (std::size_t i = 0; i < table.header.size(); ++i)
    header += (i ? "," : "") + table.header[i];
  CHECK(header == kSearchHeader);
  REQUIRE_FALSE(table.rows.empty());
  for (const auto& row : table.rows) {
    const Quadrilateral q{row[0], row[1], row[2], row[3]};
    const auto l = eigenvalues(assemble(q, Scheme::kSpectral));
    for (int i = 0; i < 4; ++i) CHECK(std::abs(l[i] - row[5 + i]) <= 1e-9);
  }

  const auto manifest = nlohmann::json::parse(slurp(file + ".manifest.json"));
  CHECK(manifest["command"] == "search");
  CHECK(manifest["config"]["search"]["h"].get<double>() == 0.01);
  CHECK(manifest.contains("tool_version"));
  CHECK(manifest.contains("duration_seconds"));

  const auto again = dir / "again.csv";
  r = run({"search", "--config", file + ".manifest.json", "--out", again});
  REQUIRE(r.code == kExitOk);
  CHECK(slurp(file) == slurp(again));
}

TEST_CASE("empty search result is header only") {
  std::ostringstream out;
  write_search_csv(out, {});
  CHECK(out.str() == std::string(kSearchHeader) + "\n");
}

TEST_CASE("trace") {
  auto r = run({"trace", "--star", "qstar", "--M", "20"});
  CHECK(r.code == kExitOk);
  std::istringstream in(r.out);
  const auto table = read_csv(in);
  CHECK(table.rows.size() == 41);
  CHECK(table.header.size() == 8);

  r = run({"trace", "--star", "square"});
  CHECK(r.code == kExitOk);
  std::istringstream sq(r.out);
  const auto flagged = read_csv(sq);
  REQUIRE(flagged.header.size() == 9);
  CHECK(flagged.header.back() == "truncated");
  REQUIRE(flagged.rows.size() == 1);
  CHECK(flagged.rows[0][8] == 1.0);

  CHECK(run({"trace", "--star", "0,-1,1,1"}).code == kExitUsage);
  CHECK(run({"trace", "--explicit", "c"}).code == kExitUsage);
}

TEST_CASE("deform") {
  TempDir dir;
  const auto r = run({"deform", "--S", "4", "--M", "10", "--out", dir.path.string()});
  REQUIRE(r.code == kExitOk);
  for (int j = 0; j < 4; ++j) {
    const auto f = dir.path / ("step_0" + std::to_string(j) + ".csv");
    CHECK(fs::exists(f));
    CHECK(fs::exists(f.string() + ".manifest.json"));
  }
  std::ifstream in(dir.path / "summary.csv");
  const auto table = read_csv(in);
  REQUIRE(table.rows.size() == 4);
  for (const auto& row : table.rows)
    CHECK(row[2] == doctest::Approx(0.06 / (1 + 2 * row[1])));
  CHECK(fs::exists(dir.path / "summary.csv.manifest.json"));
}

TEST_CASE("config precedence") {
  TempDir dir;
  const auto cfg_path = dir / "cfg.json";
  std::ofstream(cfg_path) << R"({"star": {"alpha": 0, "beta": 1, "gamma": 1, "delta": 1},
                                "scheme": "fd", "trace": {"M": 7}})";
  auto r = run({"eigs", "--config", cfg_path});
  CHECK(r.out.find("18.00 36.00 36.00 54.00") != std::string::npos);
  r = run({"eigs", "--config", cfg_path, "--scheme", "sp", "--kappa", "0.27639320225002106"});
  CHECK(r.out.find("20.00 40.00 40.00 60.00") != std::string::npos);

  RunConfig cfg;
  load_config_file(cfg, cfg_path);
  CHECK(cfg.trace.M == 7);
  CHECK(cfg.trace.disc.scheme == Scheme::kFiniteDifference);
  CHECK(cfg.search.epsilon == 1e-4);
}

TEST_CASE("thread count from the environment") {
  ::setenv("ISOQUAD_THREADS", "0", 1);
  CHECK(threads_from_env() == 0);
  ::setenv("ISOQUAD_THREADS", "many", 1);
  CHECK_THROWS_AS(threads_from_env(), Error);
  ::unsetenv("ISOQUAD_THREADS");
  CHECK(threads_from_env() >= 1);
}

}
