#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "dwell/errors.hpp"
#include "dwell/sweep.hpp"

using namespace dwell;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("dwell_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

JobConfig small_job() {
  JobConfig c;
  c.betas = {10, 20};
  c.gammas = {0, 1.5};
  c.n_states = 4;
  c.n_basis = 60;
  c.grid_points = 1024;
  c.workers = 2;
  return c;
}

}  // namespace

TEST_CASE("range parsing") {
  CHECK(parse_range("1") == std::vector<double>{1});
  CHECK(parse_range("1,2.5, 3") == std::vector<double>{1, 2.5, 3});
  const auto r = parse_range("0:1:0.25");
  REQUIRE(r.size() == 5);
  CHECK(r.back() == doctest::Approx(1.0));
  CHECK(parse_range("0:7:0.05").size() == 141);
  CHECK(parse_range("5:1:1").empty());
  CHECK_THROWS_AS(parse_range("1:2"), InvalidArgument);
  CHECK_THROWS_AS(parse_range("0:1:0"), InvalidArgument);
  CHECK_THROWS_AS(parse_range("a,b"), InvalidArgument);
  CHECK_THROWS_AS(parse_range("1,,2"), InvalidArgument);
}

TEST_CASE("config validation") {
  JobConfig c = small_job();
  c.gammas.clear();
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = small_job();
  c.n_states = 30;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = small_job();
  c.grid_points = 100;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
}

TEST_CASE("expansion is sorted and maps poly coefficients") {
  JobConfig c = small_job();
  c.betas = {20, 10};
  const auto pts = expand(c);
  REQUIRE(pts.size() == 4);
  CHECK(pts[0].beta == 10);
  CHECK(pts[0].gamma == 0);
  CHECK(pts[3].beta == 20);
  CHECK(pts[3].gamma == 1.5);
  JobConfig p;
  p.poly = {0.01, -0.0075, -0.0025, 0, 0};
  const auto one = expand(p);
  REQUIRE(one.size() == 1);
  CHECK(one[0].alpha == 0.01);
  CHECK(one[0].beta == 0.0025);
  CHECK(one[0].potential.c3() == -0.0075);
  CHECK(one[0].potential.c0() == 0.0);
}

TEST_CASE("number formatting") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(-1.5e-20) == "-1.5000000000000001e-20");
}

TEST_CASE("CSV header is pinned") {
  CHECK(to_csv({}, 1) == slurp(fs::path(DWELL_TEST_DATA) / "csv_header_v1.txt"));
}

TEST_CASE("failed points keep the column count") {
  PointResult r;
  r.point.alpha = 1;
  r.error = "solver, failed";
  const std::string csv = to_csv({r}, 2);
  std::istringstream ss(csv);
  std::string line;
  std::getline(ss, line);
  std::getline(ss, line);
  const auto header_commas = std::count(line.begin(), line.end(), ',');
  std::getline(ss, line);
  CHECK(line.rfind("1,0,0,0,", 0) == 0);
  CHECK(line.find("\"solver, failed\"") != std::string::npos);
  CHECK(std::count(line.begin(), line.end(), ',') == header_commas + 1);
}

TEST_CASE("cache hits, determinism and no-cache identity") {
  const fs::path dir = scratch("cache");
  JobConfig c = small_job();
  c.cache_dir = dir;
  SweepStats s1, s2, s3;
  const std::string first = to_csv(run_sweep(c, &s1), c.n_states);
  CHECK(s1.cache_hits == 0);
  CHECK(s1.failures == 0);
  const std::string second = to_csv(run_sweep(c, &s2), c.n_states);
  CHECK(s2.cache_hits == 4);
  CHECK(first == second);
  c.use_cache = false;
  const std::string third = to_csv(run_sweep(c, &s3), c.n_states);
  CHECK(s3.cache_hits == 0);
  CHECK(first == third);
  CHECK(to_json(run_sweep(c)).dump() == to_json(run_sweep(c)).dump());
  fs::remove_all(dir);
}

TEST_CASE("corrupted cache files are recomputed") {
  const fs::path dir = scratch("corrupt");
  JobConfig c = small_job();
  c.betas = {10};
  c.gammas = {1};
  c.cache_dir = dir;
  const std::string clean = to_csv(run_sweep(c), c.n_states);
  const ResultCache cache(dir);
  const std::string key = ResultCache::key(expand(c)[0].potential, c);
  const fs::path file = cache.path_for(key);
  REQUIRE(fs::exists(file));
  CHECK(key.size() == 16);

  std::string text = slurp(file);
  const auto pos = text.find("\"energy\":");
  REQUIRE(pos != std::string::npos);
  text[pos + 10] = text[pos + 10] == '1' ? '2' : '1';
  std::ofstream(file, std::ios::binary | std::ios::trunc) << text;
  CHECK_FALSE(cache.load(key));

  SweepStats s;
  CHECK(to_csv(run_sweep(c, &s), c.n_states) == clean);
  CHECK(s.cache_hits == 0);
  CHECK(cache.load(key));
  fs::remove_all(dir);
}

TEST_CASE("cache key depends on everything that changes the result") {
  JobConfig c = small_job();
  const auto pot = QuarticPotential::double_well(1, 10, 1);
  const std::string k = ResultCache::key(pot, c);
  JobConfig d = c;
  d.n_basis = 80;
  CHECK(ResultCache::key(pot, d) != k);
  d = c;
  d.n_states = 5;
  CHECK(ResultCache::key(pot, d) != k);
  CHECK(ResultCache::key(QuarticPotential::double_well(1, 10, 1.0000001), c) != k);
  d = c;
  d.workers = 7;
  CHECK(ResultCache::key(pot, d) == k);
}

TEST_CASE("cache directory from the environment") {
  ::setenv("DWELL_CACHE_DIR", "/tmp/somewhere", 1);
  CHECK(default_cache_dir() == fs::path("/tmp/somewhere"));
  ::unsetenv("DWELL_CACHE_DIR");
  CHECK(default_cache_dir() != fs::path("/tmp/somewhere"));
}

TEST_CASE("state reports") {
  AnalysisOptions o;
  o.n_states = 6;
  const auto r = analyze(zero_minimum(QuarticPotential::double_well(1, 20, 3)), o);
  REQUIRE(r.size() == 6);
  const Occupancy expect[] = {Occupancy::WellI, Occupancy::WellI, Occupancy::WellII,
                              Occupancy::WellI, Occupancy::WellII, Occupancy::WellI};
  const int nodes[] = {0, 1, 0, 2, 1, 3};
  for (int n = 0; n < 6; ++n) {
    CHECK(r[n].error.empty());
    CHECK(r[n].converged);
    CHECK(r[n].occupancy.classification == expect[n]);
    CHECK(r[n].nodes.effective == nodes[n]);
    CHECK(r[n].nodes.total >= r[n].nodes.effective);
    CHECK(r[n].nodes.total <= n);
  }
  const auto sym = analyze(zero_minimum(QuarticPotential::double_well(1, 20, 0)), o);
  for (int n = 0; n < 6; ++n) CHECK(sym[n].nodes.total == n);
  o.n_states = 40;
  CHECK_THROWS_AS(analyze(QuarticPotential::double_well(1, 20, 3), o), BasisTooSmall);
}

TEST_CASE("states round-trip through JSON exactly") {
  AnalysisOptions o;
  o.n_states = 3;
  const auto r = analyze(zero_minimum(QuarticPotential::double_well(1, 12, 0.7)), o);
  const auto back = states_from_json(nlohmann::json::parse(states_to_json(r).dump()));
  CHECK(states_to_json(back).dump() == states_to_json(r).dump());
  CHECK(back[2].energy == r[2].energy);
  CHECK(back[1].info.s_total == r[1].info.s_total);
}

TEST_CASE("fnv1a reference values") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
}
