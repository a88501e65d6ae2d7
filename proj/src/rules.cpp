#include "dwell/rules.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/tools/minima.hpp>

#include "dwell/errors.hpp"
#include "dwell/potential.hpp"

namespace dwell {

AsymmetryIndex AsymmetryIndex::from_k(double k, double k_tol) {
  if (!(k >= 0.0) || !std::isfinite(k)) throw InvalidArgument("k must be finite and >= 0");
  AsymmetryIndex idx;
  idx.k = k;
  const double nearest = std::round(k);
  if (std::abs(k - nearest) <= k_tol) idx.k_integer = static_cast<int>(nearest);
  idx.floor_parity = static_cast<int>(std::floor(k)) % 2;
  return idx;
}

AsymmetryIndex AsymmetryIndex::from_gamma(double gamma, double delta_gamma, double k_tol) {
  if (!(delta_gamma > 0.0)) throw InvalidArgument("delta_gamma must be positive");
  AsymmetryIndex idx = from_k(std::abs(gamma) / delta_gamma, k_tol);
  idx.delta_gamma = delta_gamma;
  return idx;
}

DegeneracyPrediction predict_degeneracy(const AsymmetryIndex& k, int n_max) {
  if (n_max < 1) throw InvalidArgument("n_max must be >= 1");
  DegeneracyPrediction out;
  if (!k.k_integer) return out;
  const int ki = *k.k_integer;
  out.non_degenerate_below = ki;
  for (int n = ki; n + 1 <= n_max; n += 2) out.pairs.emplace_back(n, n + 1);
  return out;
}

Occupancy predict_occupancy(const AsymmetryIndex& k, int n) {
  if (k.k_integer) {
    return n < *k.k_integer ? Occupancy::WellI : Occupancy::Both;
  }
  if (n < k.k) return Occupancy::WellI;
  return n % 2 == k.floor_parity ? Occupancy::WellI : Occupancy::WellII;
}

int predict_effective_nodes(const AsymmetryIndex& k, int n) {
  const Occupancy own = predict_occupancy(k, n);
  int count = 0;
  for (int m = 0; m < n; ++m) count += predict_occupancy(k, m) == own;
  return count;
}

namespace {

std::vector<double> probe_transitions(double alpha, double beta, const DeltaGammaOptions& o,
                                      double step) {
  const int m = static_cast<int>(std::lround((o.gamma_hi - o.gamma_lo) / step));
  const int n_states = o.n_pairs + 1;
  std::vector<std::vector<double>> energies(m + 1);
  for (int i = 0; i <= m; ++i) {
    energies[i] = solve_energies(QuarticPotential::double_well(alpha, beta, o.gamma_lo + i * step),
                                 o.n_basis, n_states);
  }

  std::vector<double> found;
  for (int n = 0; n < o.n_pairs; ++n) {
    std::vector<double> gap(m + 1);
    for (int i = 0; i <= m; ++i) gap[i] = energies[i][n + 1] - energies[i][n];
    std::vector<double> sorted = gap;
    std::nth_element(sorted.begin(), sorted.begin() + m / 2, sorted.end());
    const double median = sorted[m / 2];

    auto gap_at = [&](double g) {
      const auto e = solve_energies(QuarticPotential::double_well(alpha, beta, g), o.n_basis, n + 2);
      return e[n + 1] - e[n];
    };
    for (int i = 0; i <= m; ++i) {
      const bool left_ok = i == 0 || gap[i] <= gap[i - 1];
      const bool right_ok = i == m || gap[i] <= gap[i + 1];
      const bool strict = (i > 0 && gap[i] < gap[i - 1]) || (i < m && gap[i] < gap[i + 1]);
      if (!(left_ok && right_ok && strict) || gap[i] > 0.1 * median) continue;
      const double g = o.gamma_lo + i * step;
      const double a = std::max(o.gamma_lo, g - step);
      const double b = std::min(o.gamma_hi, g + step);
      found.push_back(boost::math::tools::brent_find_minima(gap_at, a, b, 40).first);
    }
  }
  std::sort(found.begin(), found.end());

  std::vector<double> merged;
  std::size_t i = 0;
  while (i < found.size()) {
    std::size_t j = i + 1;
    while (j < found.size() && found[j] - found[j - 1] <= 2.0 * step) ++j;
    merged.push_back(std::accumulate(found.begin() + i, found.begin() + j, 0.0) / (j - i));
    i = j;
  }
  return merged;
}

}  // namespace

DeltaGammaEstimate estimate_delta_gamma(double alpha, const DeltaGammaOptions& options) {
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  if (!(options.gamma_hi > options.gamma_lo)) throw InvalidArgument("empty gamma range");
  const double step =
      options.step > 0.0 ? options.step : 0.01 * (options.gamma_hi - options.gamma_lo);

  double beta = options.beta_probe;
  for (int attempt = 0; attempt <= options.max_doublings; ++attempt, beta *= 2.0) {
    const std::vector<double> t = probe_transitions(alpha, beta, options, step);
    if (t.size() < 2) continue;
    DeltaGammaEstimate est;
    est.beta_probe = beta;
    est.transitions = t;
    est.delta_gamma = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
      est.uncertainty = std::max(est.uncertainty, std::abs(t[i + 1] - t[i] - est.delta_gamma));
    }
    return est;
  }
  throw NoTransitionsFound("fewer than two gap minima up to beta = " + std::to_string(beta / 2.0));
}

int count_transition_neighbourhoods(const std::vector<Occupancy>& seq) {
  int count = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i] == Occupancy::Both) {
      if (i == 0 || seq[i - 1] != Occupancy::Both) ++count;
    } else if (i > 0 && seq[i - 1] != Occupancy::Both && seq[i - 1] != seq[i]) {
      ++count;
    }
  }
  return count;
}

RulesReport validate_rules(double alpha, double beta, const std::vector<double>& gammas,
                           const RulesOptions& o) {
  if (o.n_check < 0 || o.n_max < 1) throw InvalidArgument("n_check >= 0 and n_max >= 1 required");
  RulesReport report;
  report.alpha = alpha;
  report.beta = beta;
  report.delta_gamma = o.delta_gamma ? *o.delta_gamma : estimate_delta_gamma(alpha).delta_gamma;

  const int n_states = std::max(o.n_max, o.n_check) + 1;
  for (double gamma : gammas) {
    PointValidation pv;
    pv.gamma = gamma;
    pv.k = AsymmetryIndex::from_gamma(gamma, report.delta_gamma, o.k_tol);

    const QuarticPotential pot = zero_minimum(QuarticPotential::double_well(alpha, beta, gamma));
    const Spectrum spec = solve(pot, o.n_basis, n_states);
    const std::vector<double> e(spec.energies.begin(), spec.energies.begin() + o.n_max + 1);

    for (const auto& [n, m] : predict_degeneracy(pv.k, o.n_max).pairs) pv.predicted_pairs.emplace_back(n, m);
    for (const auto& p : quasi_degenerate_pairs(e, o.rel_tol)) pv.detected_pairs.emplace_back(p.lower, p.upper);
    pv.pairs_agree = pv.predicted_pairs == pv.detected_pairs;

    const WellGeometry geo = critical_points(pot);
    const Grid grid = build_grid(pot, spec.energies[o.n_check], o.grid_points);
    const auto occ = well_occupancies(spec, o.n_check + 1, geo, grid);

    // Exact parity blocks keep symmetric pairs unmixed however small the gap.
    std::vector<bool> resolvable(o.n_check + 1, true);
    for (int n = 0; !pot.is_even() && n + 1 < n_states; ++n) {
      const double tiny = 1e-9 * (1.0 + std::abs(spec.energies[n]));
      if (spec.energies[n + 1] - spec.energies[n] < tiny) {
        if (n <= o.n_check) resolvable[n] = false;
        if (n + 1 <= o.n_check) resolvable[n + 1] = false;
      }
    }

    bool any_small_gap = !pv.detected_pairs.empty();
    bool all_localized = true;
    bool any_in_II = false;
    for (int n = 0; n <= o.n_check; ++n) {
      pv.predicted_occupancy.push_back(predict_occupancy(pv.k, n));
      pv.measured_occupancy.push_back(occ[n].classification);
      pv.p_well_I.push_back(occ[n].p_well_I);
      if (occ[n].classification == Occupancy::Both) all_localized = false;
      if (occ[n].classification == Occupancy::WellII) any_in_II = true;
    }
    pv.resolvable = resolvable;
    pv.participates = geo.is_double_well() && (any_small_gap || (all_localized && any_in_II));

    if (pv.participates) {
      for (int n = 0; n <= o.n_check; ++n) {
        // Members of a pair split below working precision mix arbitrarily.
        if (pv.predicted_occupancy[n] == Occupancy::Both && !resolvable[n]) continue;
        ++pv.occupancy_compared;
        pv.occupancy_agree += pv.predicted_occupancy[n] == pv.measured_occupancy[n];
      }
      ++report.pairs_compared;
      report.pairs_agree += pv.pairs_agree;
      report.occupancy_compared += pv.occupancy_compared;
      report.occupancy_agree += pv.occupancy_agree;
    }
    report.points.push_back(std::move(pv));
  }
  return report;
}

}  // namespace dwell
