#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nlslab/almost_conservation.hpp"
#include "nlslab/config.hpp"
#include "nlslab/energies.hpp"
#include "nlslab/errors.hpp"
#include "nlslab/report.hpp"
#include "nlslab/strichartz.hpp"
#include "oracles.hpp"

using namespace nlslab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("nlslab-test-" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("text configuration") {
  auto c = Config::parse_text("# comment\nsim.N = 8   # trailing\nsim.list = 4, 8,16\nflag = true\nname = abc\n");
  CHECK(c.get_double("sim.N", 1.0) == 8.0);
  CHECK(c.get_doubles("sim.list", {}) == std::vector<double>{4, 8, 16});
  CHECK(c.get_bool("flag", false));
  CHECK(c.get_string("name", "") == "abc");
  CHECK(c.get_int("absent", 5) == 5);
  CHECK_NOTHROW(c.finish());
  CHECK(c.echo()["absent"] == 5);
  CHECK(c.echo()["sim.N"] == 8.0);

  auto unused = Config::parse_text("a = 1\nb = 2\n");
  (void)unused.get_int("a", 0);
  CHECK_THROWS_AS(unused.finish(), ValidationError);

  CHECK_THROWS_AS(Config::parse_text("a = 1\na = 2\n"), ValidationError);
  CHECK_THROWS_AS(Config::parse_text("no equals sign\n"), ValidationError);
  auto bad = Config::parse_text("x = 1.5abc\ny = 2.5\nz = maybe\n");
  CHECK_THROWS_AS(bad.get_double("x", 0.0), ValidationError);
  CHECK_THROWS_AS(bad.get_int("y", 0), ValidationError);
  CHECK_THROWS_AS(bad.get_bool("z", false), ValidationError);
}

TEST_CASE("JSON configuration flattens nested objects") {
  auto c = Config::parse_json(nlohmann::json::parse(R"({"census": {"N": [4, 8], "Kmax": 32}, "seed": 3})"));
  CHECK(c.get_doubles("census.N", {}) == std::vector<double>{4, 8});
  CHECK(c.get_int("census.Kmax", 0) == 32);
  CHECK(c.get_u64("seed", 0) == 3);
  CHECK_NOTHROW(c.finish());

  const auto dir = scratch_dir("config");
  fs::create_directories(dir);
  std::ofstream(dir / "a.json") << R"({"x": {"y": 2}})";
  std::ofstream(dir / "b.cfg") << "x.y = 2\n";
  auto a = Config::load((dir / "a.json").string());
  auto b = Config::load((dir / "b.cfg").string());
  CHECK(a.get_int("x.y", 0) == b.get_int("x.y", 0));
  CHECK_THROWS_AS(Config::load((dir / "missing.cfg").string()), ValidationError);
  fs::remove_all(dir);
}

TEST_CASE("run records and exit codes") {
  RunRecord empty;
  empty.command = "budget";
  CHECK(empty.exit_code() == 0);
  const auto dir = scratch_dir("report");
  CHECK(emit_report(empty, dir.string()) == 0);
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK_FALSE(fs::exists(dir / "summary.txt"));
  const auto m = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(m["command"] == "budget");
  CHECK(m["exit_code"] == 0);

  RunRecord rec;
  rec.command = "census";
  rec.tables.push_back({"rows", "a,b\n1,2\n"});
  rec.checks.push_back({"advisory", false, false, "ratio 3"});
  CHECK(rec.exit_code() == 1);
  rec.checks.push_back({"partition", false, true, "tuple (1,-1,0,0,0,0)"});
  CHECK(rec.exit_code() == 2);
  CHECK(rec.summary().find("tuple (1,-1,0,0,0,0)") != std::string::npos);
  CHECK(emit_report(rec, dir.string()) == 2);
  CHECK(slurp(dir / "rows.csv") == "a,b\n1,2\n");
  CHECK(fs::exists(dir / "summary.txt"));
  const auto m2 = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(m2["tables"][0]["columns"] == nlohmann::json::array({"a", "b"}));
  CHECK(m2["tables"][0]["schema_version"] == kCsvSchemaVersion);

  CHECK(csv_columns("x,y,z\n1,2,3\n") == std::vector<std::string>{"x", "y", "z"});
  CHECK(rec.config_hash() == rec.config_hash());
  RunRecord other = rec;
  other.config["k"] = 1;
  CHECK(other.config_hash() != rec.config_hash());
  fs::remove_all(dir);

  setenv("NLSLAB_OUT", "/tmp/elsewhere", 1);
  CHECK(resolve_output_dir("cli") == "/tmp/elsewhere");
  unsetenv("NLSLAB_OUT");
  CHECK(resolve_output_dir("cli") == "cli");
}

TEST_CASE("space-time norms of free waves") {
  const double pi = oracle::pi();
  for (const auto& row : strichartz_calibration(4.0, 0.25)) {
    INFO(row.name);
    CHECK(row.rel_error() < 1e-10);
  }
  // two modes: |u|^4 averages to (|a|^2 + |b|^2)^2 + 2 |a|^2 |b|^2
  const cd a(0.8, 0.1), b(-0.3, 0.5);
  const double lambda = 2.0, T = 0.7;
  FreeWave w{1, lambda, {{{1, 0}, a}, {{4, 0}, b}}};
  const double A = std::norm(a), B = std::norm(b);
  const double ref = std::pow(2 * pi * lambda * T * ((A + B) * (A + B) + 2 * A * B), 0.25);
  CHECK(linear_norm(w, 4, T) == doctest::Approx(ref).epsilon(1e-10));
  FreeWave one{1, lambda, {{{-2, 0}, cd(1.0, 0.0)}}};
  CHECK(bilinear_norm(w, one, T) == doctest::Approx(std::sqrt((A + B) * 2 * pi * lambda * T)).epsilon(1e-10));
  CHECK_THROWS_AS(bilinear_norm(w, one, 0.0), ValidationError);

  const auto p = gaussian_packet(16.0, 12.0, 1.0, 3.0, 0.4, 8.0, 16.0);
  CHECK(p.l2_norm() == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& m : p.modes) {
    CHECK(m.n[0] / 16.0 >= 8.0);
    CHECK(m.n[0] / 16.0 <= 16.0);
  }
}

TEST_CASE("log-log slope") {
  CHECK(loglog_slope({1, 2, 4, 8}, {3, 12, 48, 192}) == doctest::Approx(2.0));
  CHECK(loglog_slope({2, 4}, {1, 0.5}) == doctest::Approx(-1.0));
}

TEST_CASE("strichartz probe is reproducible") {
  StrichartzConfig c;
  c.lambda = 8.0;
  c.N = 32.0;
  c.M = {2, 4};
  c.samples = 6;
  c.M_2d = {2};
  c.samples_2d = 2;
  const auto a = run_strichartz_probe(c), b = run_strichartz_probe(c);
  CHECK(a.csv() == b.csv());
  REQUIRE(a.rows.size() == 2);
  for (const auto& r : a.rows) CHECK(r.max_norm >= r.mean_norm);
  c.samples = 0;
  CHECK_THROWS_AS(run_strichartz_probe(c), ValidationError);
}

TEST_CASE("almost conservation: I is the identity above the spectrum") {
  AlmostConservationConfig c;
  c.K = 5;
  c.N = {16, 32};
  c.t_end = 0.05;
  c.samples = 5;
  const auto tab = run_almost_conservation(c);
  REQUIRE(tab.rows.size() == 2);
  for (const auto& r : tab.rows) {
    CHECK(r.max_correction == 0.0);
    CHECK(r.sup_inc_e2 == doctest::Approx(r.sup_inc_energy).epsilon(1e-8).scale(1e-14));
    CHECK(r.sup_inc_e1 == r.sup_inc_e2);
    CHECK_FALSE(r.capped);
  }
  CHECK(tab.csv().rfind("d,N,sup_inc_e1", 0) == 0);

  c.N = {};
  CHECK_THROWS_AS(run_almost_conservation(c), ValidationError);
}

TEST_CASE("H1 norm") {
  const double pi = oracle::pi();
  const auto u = plane_wave(unit_circle(), {3, 0}, {2, 0}, 1.0);
  CHECK(h1_norm2(u) == doctest::Approx(2 * pi * 5));
}
