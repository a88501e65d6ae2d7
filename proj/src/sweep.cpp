#include "dwell/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "dwell/errors.hpp"

namespace dwell {

namespace fs = std::filesystem;
using nlohmann::json;

void JobConfig::validate() const {
  if (n_basis < 4) throw InvalidArgument("n_basis must be >= 4");
  if (n_states < 1 || 3 * n_states > n_basis) {
    throw InvalidArgument("n_states must be in [1, n_basis / 3]");
  }
  if (grid_points < 512) throw InvalidArgument("grid points must be >= 512");
  if (!(rho_floor >= 0.0 && rho_floor < 1.0)) throw InvalidArgument("rho_floor must be in [0, 1)");
  if (workers < 0) throw InvalidArgument("workers must be >= 0");
  if (poly) return;
  if (alphas.empty()) throw InvalidArgument("empty alpha range");
  if (betas.empty()) throw InvalidArgument("empty beta range");
  if (gammas.empty()) throw InvalidArgument("empty gamma range");
}

std::vector<double> parse_range(std::string_view text) {
  auto number = [&](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || end != s.data() + s.size() || !std::isfinite(v)) {
      throw InvalidArgument("not a number: '" + std::string(s) + "'");
    }
    return v;
  };

  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const std::size_t c1 = text.find(':');
    const std::size_t c2 = text.find(':', c1 + 1);
    if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos) {
      throw InvalidArgument("range must be start:stop:step");
    }
    const double a = number(text.substr(0, c1));
    const double b = number(text.substr(c1 + 1, c2 - c1 - 1));
    const double step = number(text.substr(c2 + 1));
    if (!(step > 0.0)) throw InvalidArgument("range step must be positive");
    // Empty when stop < start.
    const double count = std::floor((b - a) / step + 1e-9);
    if (count > 1e7) throw InvalidArgument("range has too many points");
    for (long i = 0; i <= static_cast<long>(count); ++i) out.push_back(a + i * step);
    return out;
  }
  std::size_t pos = 0;
  while (pos <= text.size() && !text.empty()) {
    const std::size_t comma = text.find(',', pos);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    out.push_back(number(text.substr(pos, end - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<PointSpec> expand(const JobConfig& c) {
  c.validate();
  std::vector<PointSpec> out;
  if (c.poly) {
    const auto& p = *c.poly;
    PointSpec s;
    s.potential = QuarticPotential(p[0], p[1], p[2], p[3], p[4]);
    if (c.v0) s.potential = s.potential.shifted(*c.v0);
    s.alpha = p[0];
    s.beta = -p[2];
    s.gamma = p[3];
    out.push_back(s);
    return out;
  }
  for (double a : c.alphas) {
    for (double b : c.betas) {
      for (double g : c.gammas) {
        PointSpec s;
        s.alpha = a;
        s.beta = b;
        s.gamma = g;
        const QuarticPotential raw = QuarticPotential::double_well(a, b, g);
        s.potential = c.v0 ? raw.shifted(*c.v0) : zero_minimum(raw);
        out.push_back(s);
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const PointSpec& x, const PointSpec& y) {
    return std::tie(x.alpha, x.beta, x.gamma) < std::tie(y.alpha, y.beta, y.gamma);
  });
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

Occupancy occupancy_from(std::string_view s) {
  if (s == "I") return Occupancy::WellI;
  if (s == "II") return Occupancy::WellII;
  if (s == "both") return Occupancy::Both;
  throw InvalidArgument("unknown occupancy '" + std::string(s) + "'");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch == '\n' ? ' ' : ch;
  }
  return out + "\"";
}

}  // namespace

std::string csv_header() {
  return "alpha,beta,gamma,n,energy,mean_x,delta_x,delta_p,uncertainty_product,p_well_I,"
         "p_well_II,occupancy,total_nodes,effective_nodes,s_x,s_p,s_total,i_x,i_p,i_product,"
         "e_x,e_p,e_product,os_x,os_p,os_total,barrier_action,allowed_action,lobe_count,"
         "converged_flag,error";
}

std::string to_csv(const std::vector<PointResult>& results, int n_states) {
  std::string out = "# dwell schema " + std::to_string(kSchemaVersion) + "\n" + csv_header() + "\n";
  for (const PointResult& r : results) {
    const std::string echo = format_double(r.point.alpha) + "," + format_double(r.point.beta) + "," +
                             format_double(r.point.gamma) + ",";
    if (!r.error.empty()) {
      for (int n = 0; n < n_states; ++n) {
        out += echo + std::to_string(n) + std::string(27, ',') + csv_field(r.error) + "\n";
      }
      continue;
    }
    for (const StateReport& s : r.states) {
      const auto f = [](double v) { return format_double(v) + ","; };
      std::string row = echo + std::to_string(s.n) + ",";
      row += f(s.energy) + f(s.uncertainty.mean_x) + f(s.uncertainty.delta_x) +
             f(s.uncertainty.delta_p) + f(s.uncertainty.product);
      row += f(s.occupancy.p_well_I) + f(s.occupancy.p_well_II);
      row += std::string(to_string(s.occupancy.classification)) + ",";
      row += std::to_string(s.nodes.total) + "," + std::to_string(s.nodes.effective) + ",";
      const InfoMeasures& m = s.info;
      row += f(m.s_x) + f(m.s_p) + f(m.s_total) + f(m.i_x) + f(m.i_p) + f(m.i_product);
      row += f(m.e_x) + f(m.e_p) + f(m.e_product) + f(m.os_x) + f(m.os_p) + f(m.os_total);
      row += f(s.barrier_action) + f(s.allowed_action) + std::to_string(s.lobe_count) + ",";
      row += std::string(s.converged ? "1" : "0") + "," + csv_field(s.error);
      out += row + "\n";
    }
  }
  return out;
}

json states_to_json(const std::vector<StateReport>& states) {
  json arr = json::array();
  for (const StateReport& s : states) {
    const InfoMeasures& m = s.info;
    arr.push_back({{"n", s.n},
                   {"energy", s.energy},
                   {"mean_x", s.uncertainty.mean_x},
                   {"mean_p", s.uncertainty.mean_p},
                   {"delta_x", s.uncertainty.delta_x},
                   {"delta_p", s.uncertainty.delta_p},
                   {"uncertainty_product", s.uncertainty.product},
                   {"p_well_I", s.occupancy.p_well_I},
                   {"p_well_II", s.occupancy.p_well_II},
                   {"barrier_x", s.occupancy.barrier_x},
                   {"occupancy", to_string(s.occupancy.classification)},
                   {"total_nodes", s.nodes.total},
                   {"effective_nodes", s.nodes.effective},
                   {"s_x", m.s_x}, {"s_p", m.s_p}, {"s_total", m.s_total},
                   {"i_x", m.i_x}, {"i_p", m.i_p}, {"i_product", m.i_product},
                   {"e_x", m.e_x}, {"e_p", m.e_p}, {"e_product", m.e_product},
                   {"os_x", m.os_x}, {"os_p", m.os_p}, {"os_total", m.os_total},
                   {"barrier_action", s.barrier_action},
                   {"allowed_action", s.allowed_action},
                   {"lobe_count", s.lobe_count},
                   {"converged", s.converged},
                   {"error", s.error}});
  }
  return arr;
}

std::vector<StateReport> states_from_json(const json& arr) {
  std::vector<StateReport> out;
  for (const json& j : arr) {
    StateReport s;
    s.n = j.at("n");
    s.energy = j.at("energy");
    s.uncertainty.mean_x = j.at("mean_x");
    s.uncertainty.mean_p = j.at("mean_p");
    s.uncertainty.delta_x = j.at("delta_x");
    s.uncertainty.delta_p = j.at("delta_p");
    s.uncertainty.product = j.at("uncertainty_product");
    s.occupancy.p_well_I = j.at("p_well_I");
    s.occupancy.p_well_II = j.at("p_well_II");
    s.occupancy.barrier_x = j.at("barrier_x");
    s.occupancy.classification = occupancy_from(j.at("occupancy").get<std::string>());
    s.nodes.total = j.at("total_nodes");
    s.nodes.effective = j.at("effective_nodes");
    InfoMeasures& m = s.info;
    m.s_x = j.at("s_x"); m.s_p = j.at("s_p"); m.s_total = j.at("s_total");
    m.i_x = j.at("i_x"); m.i_p = j.at("i_p"); m.i_product = j.at("i_product");
    m.e_x = j.at("e_x"); m.e_p = j.at("e_p"); m.e_product = j.at("e_product");
    m.os_x = j.at("os_x"); m.os_p = j.at("os_p"); m.os_total = j.at("os_total");
    s.barrier_action = j.at("barrier_action");
    s.allowed_action = j.at("allowed_action");
    s.lobe_count = j.at("lobe_count");
    s.converged = j.at("converged");
    s.error = j.at("error");
    out.push_back(std::move(s));
  }
  return out;
}

json to_json(const std::vector<PointResult>& results) {
  json points = json::array();
  for (const PointResult& r : results) {
    const QuarticPotential& p = r.point.potential;
    json jp = {{"alpha", r.point.alpha},
               {"beta", r.point.beta},
               {"gamma", r.point.gamma},
               {"coefficients", {p.c4(), p.c3(), p.c2(), p.c1(), p.c0()}},
               {"states", states_to_json(r.states)}};
    if (!r.error.empty()) jp["error"] = r.error;
    points.push_back(std::move(jp));
  }
  return {{"schema_version", kSchemaVersion}, {"points", points}};
}

fs::path default_cache_dir() {
  if (const char* d = std::getenv("DWELL_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "dwell";
  if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "dwell";
  return ".dwell-cache";
}

ResultCache::ResultCache(fs::path dir) : dir_(std::move(dir)) {}

std::string ResultCache::key(const QuarticPotential& pot, const JobConfig& c) {
  std::string canon = "schema=" + std::to_string(kSchemaVersion);
  for (double v : {pot.c4(), pot.c3(), pot.c2(), pot.c1(), pot.c0()}) canon += ";" + format_double(v);
  canon += ";n_basis=" + std::to_string(c.n_basis) + ";n_states=" + std::to_string(c.n_states) +
           ";points=" + std::to_string(c.grid_points) + ";rho_floor=" + format_double(c.rho_floor);
  return hex16(fnv1a(canon));
}

fs::path ResultCache::path_for(const std::string& key) const { return dir_ / (key + ".json"); }

std::optional<std::vector<StateReport>> ResultCache::load(const std::string& key) const {
  std::ifstream in(path_for(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  const std::size_t mark = text.rfind("\nchecksum ");
  if (mark == std::string::npos) return std::nullopt;
  const std::string body = text.substr(0, mark);
  std::string sum = text.substr(mark + 10);
  while (!sum.empty() && (sum.back() == '\n' || sum.back() == '\r')) sum.pop_back();
  if (sum != hex16(fnv1a(body))) return std::nullopt;
  try {
    return states_from_json(json::parse(body).at("states"));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void ResultCache::store(const std::string& key, const std::vector<StateReport>& states) const {
  fs::create_directories(dir_);
  const std::string body =
      json{{"schema_version", kSchemaVersion}, {"states", states_to_json(states)}}.dump();
  const fs::path target = path_for(key);
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << body << "\nchecksum " << hex16(fnv1a(body)) << "\n";
    if (!out) throw Error("cannot write cache file " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::vector<PointResult> run_sweep(const JobConfig& config, SweepStats* stats) {
  const std::vector<PointSpec> points = expand(config);
  std::vector<PointResult> results(points.size());
  std::optional<ResultCache> cache;
  if (config.use_cache) {
    cache.emplace(config.cache_dir.empty() ? default_cache_dir() : config.cache_dir);
  }

  AnalysisOptions opts;
  opts.n_basis = config.n_basis;
  opts.n_states = config.n_states;
  opts.grid_points = config.grid_points;
  opts.rho_floor = config.rho_floor;

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      PointResult& r = results[i];
      r.point = points[i];
      try {
        std::string key;
        if (cache) {
          key = ResultCache::key(r.point.potential, config);
          if (auto hit = cache->load(key)) {
            r.states = std::move(*hit);
            r.cache_hit = true;
            continue;
          }
        }
        r.states = analyze(r.point.potential, opts);
        if (cache) cache->store(key, r.states);
      } catch (const std::exception& e) {
        r.states.clear();
        r.error = e.what();
      }
    }
  };

  int n_workers = config.workers > 0 ? config.workers
                                     : static_cast<int>(std::thread::hardware_concurrency());
  n_workers = std::clamp<int>(n_workers, 1, static_cast<int>(std::max<std::size_t>(points.size(), 1)));
  std::vector<std::thread> pool;
  for (int w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (stats) {
    stats->points = static_cast<int>(results.size());
    stats->cache_hits = static_cast<int>(std::count_if(results.begin(), results.end(),
                                                       [](const auto& r) { return r.cache_hit; }));
    stats->failures = static_cast<int>(std::count_if(results.begin(), results.end(),
                                                     [](const auto& r) { return !r.error.empty(); }));
  }
  return results;
}

}  // namespace dwell
