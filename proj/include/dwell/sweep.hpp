#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "dwell/potential.hpp"
#include "dwell/report.hpp"

namespace dwell {

inline constexpr int kSchemaVersion = 1;

enum class OutputFormat { Csv, Json };

struct JobConfig {
  std::vector<double> alphas{1.0};
  std::vector<double> betas;
  std::vector<double> gammas;
  std::optional<std::array<double, 5>> poly;  // c4..c0, replaces alpha/beta/gamma
  std::optional<double> v0;  // absent: shift min V to 0 (alpha/beta/gamma) or 0 (poly)
  int n_basis = 100;
  int n_states = 8;
  int grid_points = kDefaultGridPoints;
  double rho_floor = 0.01;
  OutputFormat format = OutputFormat::Csv;
  bool use_cache = true;
  std::filesystem::path cache_dir;  // empty: default_cache_dir()
  int workers = 0;                  // 0: hardware concurrency

  /// Throws InvalidArgument on empty ranges or inconsistent sizes.
  void validate() const;
};

struct PointSpec {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  QuarticPotential potential{1.0, 0.0, 0.0, 0.0, 0.0};
};

struct PointResult {
  PointSpec point;
  std::vector<StateReport> states;
  std::string error;  // set when the whole point failed
  bool cache_hit = false;
};

struct SweepStats {
  int points = 0;
  int cache_hits = 0;
  int failures = 0;
};

/// Cartesian product of the ranges, sorted by (alpha, beta, gamma).
std::vector<PointSpec> expand(const JobConfig& config);

/// "a:b:step" (inclusive of b up to rounding) or "x,y,z" or a single value.
std::vector<double> parse_range(std::string_view text);

std::vector<PointResult> run_sweep(const JobConfig& config, SweepStats* stats = nullptr);

/// Fixed 17-significant-digit formatting with '.' decimal separator.
std::string format_double(double v);

std::string csv_header();
std::string to_csv(const std::vector<PointResult>& results, int n_states);
nlohmann::json to_json(const std::vector<PointResult>& results);

nlohmann::json states_to_json(const std::vector<StateReport>& states);
std::vector<StateReport> states_from_json(const nlohmann::json& j);

std::uint64_t fnv1a(std::string_view data);

/// DWELL_CACHE_DIR, else $XDG_CACHE_HOME/dwell, else $HOME/.cache/dwell,
/// else ./.dwell-cache.
std::filesystem::path default_cache_dir();

/// One JSON file per point, named by a 64-bit content hash of the inputs
/// that determine the result, closed by a "checksum <hex>" line.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);

  static std::string key(const QuarticPotential& pot, const JobConfig& config);
  std::filesystem::path path_for(const std::string& key) const;

  /// Nothing when the file is absent, unreadable or fails its checksum.
  std::optional<std::vector<StateReport>> load(const std::string& key) const;
  void store(const std::string& key, const std::vector<StateReport>& states) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace dwell
