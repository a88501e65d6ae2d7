// dwell: spectra, information measures and localization rules for quartic
// double-well potentials.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dwell/errors.hpp"
#include "dwell/phase_space.hpp"
#include "dwell/rules.hpp"
#include "dwell/spectrum.hpp"
#include "dwell/sweep.hpp"
#include "dwell/tables.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;

// Raised for bad input discovered after CLI11 parsing; maps to exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PotentialArgs {
  std::string alpha = "1";
  std::string beta;
  std::string gamma;
  std::vector<double> poly;
  std::string v0;
};

struct OutputArgs {
  std::string format = "csv";
  std::string output = "-";
  std::string out_dir;
};

struct NumericArgs {
  int basis = 100;
  int states = 8;
  int points = dwell::kDefaultGridPoints;
  double rho_floor = 0.01;
};

void add_potential(CLI::App* cmd, PotentialArgs& p, bool ranges) {
  const std::string what = ranges ? " (value, list a,b,c or range start:stop:step)" : "";
  cmd->add_option("--alpha", p.alpha, "quartic coefficient" + what)->capture_default_str();
  cmd->add_option("--beta", p.beta, "depth parameter, V has -beta x^2" + what);
  cmd->add_option("--gamma", p.gamma, "asymmetry, V has +gamma x" + what);
  cmd->add_option("--poly", p.poly, "explicit coefficients c4,c3,c2,c1,c0")->delimiter(',')->expected(5);
  cmd->add_option("--v0", p.v0, "constant shift, or 'min' to put min V at 0 (default: min for "
                                "alpha/beta/gamma, 0 for --poly)");
}

void add_numeric(CLI::App* cmd, NumericArgs& n) {
  cmd->add_option("--basis", n.basis, "oscillator basis size N")->capture_default_str();
  cmd->add_option("--states", n.states, "number of states")->capture_default_str();
  cmd->add_option("--points", n.points, "grid points")->capture_default_str();
  cmd->add_option("--rho-floor", n.rho_floor, "well probability below which nodes are ignored")
      ->capture_default_str();
}

void add_output(CLI::App* cmd, OutputArgs& o, const std::string& default_format) {
  o.format = default_format;
  cmd->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("-o,--output", o.output, "output file, '-' for stdout")->capture_default_str();
  cmd->add_option("--out-dir", o.out_dir, "write <command>.<format> into this directory");
}

std::vector<double> range_arg(const std::string& text, const char* name) {
  if (text.empty()) throw UsageError(std::string("--") + name + " is required");
  std::vector<double> v;
  try {
    v = dwell::parse_range(text);
  } catch (const dwell::InvalidArgument& e) {
    throw UsageError(std::string("--") + name + ": " + e.what());
  }
  if (v.empty()) throw UsageError(std::string("--") + name + ": empty range '" + text + "'");
  return v;
}

dwell::JobConfig make_config(const PotentialArgs& p, const NumericArgs& n, bool ranges) {
  dwell::JobConfig c;
  c.n_basis = n.basis;
  c.n_states = n.states;
  c.grid_points = n.points;
  c.rho_floor = n.rho_floor;
  if (!p.v0.empty() && p.v0 != "min") {
    try {
      c.v0 = std::stod(p.v0);
    } catch (const std::exception&) {
      throw UsageError("--v0 must be a number or 'min'");
    }
  }
  if (!p.poly.empty()) {
    c.poly = {p.poly[0], p.poly[1], p.poly[2], p.poly[3], p.poly[4]};
    if (p.v0 == "min") {
      const dwell::QuarticPotential pot(p.poly[0], p.poly[1], p.poly[2], p.poly[3], p.poly[4]);
      c.v0 = -dwell::global_minimum(pot).value;
    } else if (!c.v0) {
      c.v0 = 0.0;
    }
  } else {
    c.alphas = range_arg(p.alpha, "alpha");
    c.betas = range_arg(p.beta, "beta");
    c.gammas = range_arg(p.gamma, "gamma");
    if (!ranges && (c.alphas.size() > 1 || c.betas.size() > 1 || c.gammas.size() > 1)) {
      throw UsageError("solve takes single values; use sweep for ranges");
    }
  }
  try {
    c.validate();
    (void)dwell::expand(c);
  } catch (const dwell::InvalidArgument& e) {
    throw UsageError(e.what());
  }
  return c;
}

void write_output(const OutputArgs& o, const std::string& command, const std::string& text) {
  std::string path = o.output;
  if (!o.out_dir.empty()) {
    fs::create_directories(o.out_dir);
    path = (fs::path(o.out_dir) / (command + "." + o.format)).string();
  }
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw dwell::Error("cannot write " + path);
}

std::string render(const std::vector<dwell::PointResult>& results, const dwell::JobConfig& c,
                   const OutputArgs& o) {
  if (o.format == "json") return dwell::to_json(results).dump(2) + "\n";
  return dwell::to_csv(results, c.n_states);
}

int cmd_solve(const PotentialArgs& p, const NumericArgs& n, const OutputArgs& o) {
  dwell::JobConfig c = make_config(p, n, false);
  c.use_cache = false;
  c.workers = 1;
  const auto results = dwell::run_sweep(c);
  for (const auto& r : results) {
    if (!r.error.empty()) {
      std::cerr << "dwell: solve failed: " << r.error << "\n";
      return kExitSolver;
    }
  }
  write_output(o, "solve", render(results, c, o));
  return 0;
}

int cmd_sweep(const PotentialArgs& p, const NumericArgs& n, const OutputArgs& o, int workers,
              bool no_cache, const std::string& cache_dir, bool quiet) {
  dwell::JobConfig c = make_config(p, n, true);
  c.workers = workers;
  c.use_cache = !no_cache;
  c.cache_dir = cache_dir;
  dwell::SweepStats stats;
  const auto results = dwell::run_sweep(c, &stats);
  write_output(o, "sweep", render(results, c, o));
  if (!quiet) {
    std::cerr << "points=" << stats.points << " cache_hits=" << stats.cache_hits
              << " failures=" << stats.failures << "\n";
  }
  for (const auto& r : results) {
    if (!r.error.empty()) std::cerr << "dwell: gamma=" << r.point.gamma << " beta=" << r.point.beta
                                    << ": " << r.error << "\n";
  }
  return stats.failures == stats.points ? kExitSolver : 0;
}

json pairs_json(const std::vector<std::pair<int, int>>& pairs) {
  json a = json::array();
  for (const auto& [x, y] : pairs) a.push_back({x, y});
  return a;
}

int cmd_validate(const std::string& alphas_text, const std::string& betas_text,
                 const std::string& gammas_text, const dwell::RulesOptions& base, double beta_probe,
                 const OutputArgs& o) {
  const auto alphas = range_arg(alphas_text, "alpha");
  const auto betas = range_arg(betas_text, "beta");
  const auto gammas = range_arg(gammas_text, "gamma");

  json out = {{"schema_version", dwell::kSchemaVersion}, {"delta_gamma", json::array()},
              {"rules", json::array()}};
  for (double a : alphas) {
    dwell::DeltaGammaOptions dg;
    dg.beta_probe = beta_probe;
    dg.n_basis = base.n_basis;
    const dwell::DeltaGammaEstimate est = dwell::estimate_delta_gamma(a, dg);
    out["delta_gamma"].push_back({{"alpha", a},
                                  {"delta_gamma", est.delta_gamma},
                                  {"uncertainty", est.uncertainty},
                                  {"beta_probe", est.beta_probe},
                                  {"transitions", est.transitions}});
    std::cerr << "alpha=" << a << " delta_gamma=" << dwell::format_double(est.delta_gamma)
              << " +- " << dwell::format_double(est.uncertainty) << "\n";

    dwell::RulesOptions opts = base;
    opts.delta_gamma = est.delta_gamma;
    for (double b : betas) {
      const dwell::RulesReport rep = dwell::validate_rules(a, b, gammas, opts);
      json points = json::array();
      for (const auto& pv : rep.points) {
        json pred = json::array(), meas = json::array();
        for (auto occ : pv.predicted_occupancy) pred.push_back(dwell::to_string(occ));
        for (auto occ : pv.measured_occupancy) meas.push_back(dwell::to_string(occ));
        points.push_back({{"gamma", pv.gamma},
                          {"k", pv.k.k},
                          {"k_integer", pv.k.k_integer ? json(*pv.k.k_integer) : json()},
                          {"participates", pv.participates},
                          {"predicted_pairs", pairs_json(pv.predicted_pairs)},
                          {"detected_pairs", pairs_json(pv.detected_pairs)},
                          {"pairs_agree", pv.pairs_agree},
                          {"predicted_occupancy", pred},
                          {"measured_occupancy", meas},
                          {"p_well_I", pv.p_well_I},
                          {"occupancy_agree", pv.occupancy_agree},
                          {"occupancy_compared", pv.occupancy_compared}});
      }
      out["rules"].push_back({{"alpha", a},
                              {"beta", b},
                              {"delta_gamma", rep.delta_gamma},
                              {"pairs_agree", rep.pairs_agree},
                              {"pairs_compared", rep.pairs_compared},
                              {"occupancy_agree", rep.occupancy_agree},
                              {"occupancy_compared", rep.occupancy_compared},
                              {"points", points}});
      std::cerr << "alpha=" << a << " beta=" << b;
      if (rep.pairs_compared == 0) {
        std::cerr << " below threshold beta\n";
      } else {
        std::cerr << " pairs " << rep.pairs_agree << "/" << rep.pairs_compared << " occupancy "
                  << rep.occupancy_agree << "/" << rep.occupancy_compared << "\n";
      }
    }
  }
  write_output(o, "validate-rules", out.dump(2) + "\n");
  return 0;
}

int cmd_phase_space(const PotentialArgs& p, const NumericArgs& n, const OutputArgs& o, int nodes,
                    bool contours) {
  const dwell::JobConfig c = make_config(p, n, false);
  const dwell::PointSpec point = dwell::expand(c).front();
  const dwell::Spectrum spec = dwell::solve(point.potential, c.n_basis, c.n_states);
  json states = json::array();
  std::string csv = contours ? "n,lobe,x,p\n" : "n,energy,barrier_action,allowed_action,lobe_count\n";
  for (int s = 0; s < c.n_states; ++s) {
    const double e = spec.energies[s];
    const dwell::PhaseSpaceResult r = dwell::area(point.potential, e, nodes);
    json lobes = json::array();
    for (std::size_t l = 0; l < r.lobes.size(); ++l) {
      const auto& lobe = r.lobes[l];
      lobes.push_back({{"x_lo", lobe.x_lo}, {"x_hi", lobe.x_hi}});
      if (contours) {
        lobes.back()["x"] = lobe.x;
        lobes.back()["p"] = lobe.p;
        for (std::size_t i = 0; i < lobe.x.size(); ++i) {
          csv += std::to_string(s) + "," + std::to_string(l) + "," +
                 dwell::format_double(lobe.x[i]) + "," + dwell::format_double(lobe.p[i]) + "\n";
        }
      }
    }
    if (!contours) {
      csv += std::to_string(s) + "," + dwell::format_double(e) + "," +
             dwell::format_double(r.barrier_action) + "," + dwell::format_double(r.allowed_action) +
             "," + std::to_string(r.lobe_count) + "\n";
    }
    states.push_back({{"n", s},
                      {"energy", e},
                      {"barrier_action", r.barrier_action},
                      {"allowed_action", r.allowed_action},
                      {"lobe_count", r.lobe_count},
                      {"lobes", lobes}});
  }
  if (o.format == "json") {
    write_output(o, "phase-space", json{{"schema_version", dwell::kSchemaVersion}, {"states", states}}.dump(2) + "\n");
  } else {
    write_output(o, "phase-space", csv);
  }
  return 0;
}

// Flat key=value file: each key names a long flag of the subcommand. Only
// options absent from the command line are filled.
void apply_config(CLI::App* sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ConfigError("cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw CLI::ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    auto trim = [](std::string t) {
      const auto a = t.find_first_not_of(" \t\r\"");
      const auto b = t.find_last_not_of(" \t\r\"");
      return a == std::string::npos ? std::string() : t.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    CLI::Option* opt = key == "config" ? nullptr : sub->get_option_no_throw("--" + key);
    if (opt == nullptr) {
      throw CLI::ConfigError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (opt->count() > 0) continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra, information measures and localization rules for quartic double wells"};
  app.require_subcommand(1);

  PotentialArgs pot;
  NumericArgs num;
  OutputArgs out;
  std::string config_path;
  const std::string config_help = "key=value file; command-line flags take precedence";

  auto* solve = app.add_subcommand("solve", "solve one potential and report every state");
  solve->add_option("--config", config_path, config_help);
  add_potential(solve, pot, false);
  add_numeric(solve, num);
  add_output(solve, out, "csv");

  int workers = 0;
  bool no_cache = false;
  bool quiet = false;
  std::string cache_dir;
  auto* sweep = app.add_subcommand("sweep", "cartesian (alpha, beta, gamma) sweep with caching");
  sweep->add_option("--config", config_path, config_help);
  add_potential(sweep, pot, true);
  add_numeric(sweep, num);
  add_output(sweep, out, "csv");
  sweep->add_option("--workers", workers, "worker threads (0: all cores)")->capture_default_str();
  sweep->add_flag("--no-cache", no_cache, "neither read nor write the result cache");
  sweep->add_option("--cache-dir", cache_dir, "cache directory (default: $DWELL_CACHE_DIR)");
  sweep->add_flag("-q,--quiet", quiet, "no summary on stderr");

  std::string v_alpha = "0.5,1,2", v_beta = "5,10,15,20,25,30", v_gamma = "0:8:1";
  double beta_probe = 20.0;
  dwell::RulesOptions rules;
  auto* validate = app.add_subcommand("validate-rules", "check the k rules against computed spectra");
  validate->add_option("--config", config_path, config_help);
  validate->add_option("--alpha", v_alpha, "alpha values")->capture_default_str();
  validate->add_option("--beta", v_beta, "beta values")->capture_default_str();
  validate->add_option("--gamma", v_gamma, "gamma values")->capture_default_str();
  validate->add_option("--beta-probe", beta_probe, "starting beta for the delta-gamma probe")
      ->capture_default_str();
  validate->add_option("--basis", rules.n_basis, "oscillator basis size")->capture_default_str();
  validate->add_option("--n-check", rules.n_check, "highest state whose occupancy is compared")
      ->capture_default_str();
  validate->add_option("--n-max", rules.n_max, "highest state in compared pairs")->capture_default_str();
  validate->add_option("--rel-tol", rules.rel_tol, "quasi-degeneracy tolerance")->capture_default_str();
  validate->add_option("--k-tol", rules.k_tol, "integer-k tolerance")->capture_default_str();
  add_output(validate, out, "json");

  int table_id = 0;
  int table_basis = 100;
  auto* table = app.add_subcommand("table", "recompute a benchmark table (1-5) as CSV");
  table->add_option("which", table_id, "table number")->required()->check(CLI::Range(1, 5));
  table->add_option("--basis", table_basis, "oscillator basis size")->capture_default_str();
  table->add_option("-o,--output", out.output, "output file, '-' for stdout")->capture_default_str();

  int ps_nodes = dwell::kPhaseSpaceNodes;
  bool contours = false;
  auto* phase = app.add_subcommand("phase-space", "action integrals and allowed lobes per state");
  phase->add_option("--config", config_path, config_help);
  add_potential(phase, pot, false);
  add_numeric(phase, num);
  add_output(phase, out, "csv");
  phase->add_option("--nodes", ps_nodes, "Gauss-Legendre nodes")->capture_default_str();
  phase->add_flag("--contours", contours, "emit sampled lobe contours");

  try {
    app.parse(argc, argv);
    if (!config_path.empty()) {
      for (CLI::App* sub : app.get_subcommands()) apply_config(sub, config_path);
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*solve) return cmd_solve(pot, num, out);
    if (*sweep) return cmd_sweep(pot, num, out, workers, no_cache, cache_dir, quiet);
    if (*validate) return cmd_validate(v_alpha, v_beta, v_gamma, rules, beta_probe, out);
    if (*table) {
      write_output(out, "table", dwell::benchmark_table(table_id, table_basis).to_csv());
      return 0;
    }
    if (*phase) return cmd_phase_space(pot, num, out, ps_nodes, contours);
  } catch (const UsageError& e) {
    std::cerr << "dwell: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const dwell::InvalidArgument& e) {
    std::cerr << "dwell: " << e.what() << "\n";
    return kExitUsage;
  } catch (const dwell::BasisTooSmall& e) {
    std::cerr << "dwell: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "dwell: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitUsage;
}
