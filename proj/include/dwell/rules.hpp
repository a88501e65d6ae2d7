#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dwell/observables.hpp"
#include "dwell/spectrum.hpp"

namespace dwell {

inline constexpr double kDefaultKTol = 0.02;

struct AsymmetryIndex {
  double delta_gamma = 2.0;
  double k = 0.0;
  std::optional<int> k_integer;  // set when |k - round(k)| <= k_tol
  int floor_parity = 0;          // parity of floor(k)

  static AsymmetryIndex from_gamma(double gamma, double delta_gamma, double k_tol = kDefaultKTol);
  static AsymmetryIndex from_k(double k, double k_tol = kDefaultKTol);
};

struct DegeneracyPrediction {
  std::vector<std::pair<int, int>> pairs;
  int non_degenerate_below = 0;
};

/// Pairs (n, n+1) with n >= k and n of the same parity as an integer k
/// (0 counts as even); none for fractional k. Only pairs with n+1 <= n_max.
DegeneracyPrediction predict_degeneracy(const AsymmetryIndex& k, int n_max);

/// n < k: well I. n >= k: both wells at integer k, otherwise well I when n and
/// floor(k) share parity and well II when they do not.
Occupancy predict_occupancy(const AsymmetryIndex& k, int n);

/// Nodes that fall in a significant well: the number of lower states
/// predicted to live in the same well as n.
int predict_effective_nodes(const AsymmetryIndex& k, int n);

struct DeltaGammaOptions {
  double beta_probe = 20.0;
  double gamma_lo = 0.0;
  double gamma_hi = 8.0;
  double step = 0.0;       // 0: 1% of the range
  int n_pairs = 6;         // gaps E_{n+1} - E_n for n < n_pairs
  int n_basis = 100;
  int max_doublings = 4;   // of beta_probe while fewer than two transitions show up
};

struct DeltaGammaEstimate {
  double delta_gamma = 0.0;
  double uncertainty = 0.0;  // max |spacing - mean|
  double beta_probe = 0.0;   // value actually used
  std::vector<double> transitions;
};

/// Mean spacing of the gamma values where some adjacent gap has a sharp
/// minimum. Throws NoTransitionsFound when fewer than two are located.
DeltaGammaEstimate estimate_delta_gamma(double alpha, const DeltaGammaOptions& options = {});

struct RulesOptions {
  int n_basis = 100;
  int n_check = 5;              // occupancy compared for n <= n_check
  int n_max = 10;               // degeneracy compared for pairs with n+1 <= n_max
  double rel_tol = 1e-6;
  double k_tol = kDefaultKTol;
  std::optional<double> delta_gamma;  // estimated when absent
  int grid_points = kDefaultGridPoints;
};

struct PointValidation {
  double gamma = 0.0;
  AsymmetryIndex k;
  bool participates = false;
  std::vector<std::pair<int, int>> predicted_pairs;
  std::vector<std::pair<int, int>> detected_pairs;
  bool pairs_agree = false;
  std::vector<Occupancy> predicted_occupancy;
  std::vector<Occupancy> measured_occupancy;
  std::vector<double> p_well_I;
  std::vector<bool> resolvable;  // false for members of pairs split below 1e-9 relative
  int occupancy_agree = 0;
  int occupancy_compared = 0;
};

struct RulesReport {
  double alpha = 1.0;
  double beta = 0.0;
  double delta_gamma = 0.0;
  std::vector<PointValidation> points;
  int pairs_agree = 0;
  int pairs_compared = 0;
  int occupancy_agree = 0;
  int occupancy_compared = 0;
};

/// Cross-checks the rule engine against computed spectra on a gamma grid.
/// A point takes part only above the threshold beta: some adjacent gap is
/// below rel_tol, or every checked state is localized with at least one in
/// well II.
RulesReport validate_rules(double alpha, double beta, const std::vector<double>& gammas,
                           const RulesOptions& options = {});

/// Occupancy sweep for one state: counts maximal runs of both-well points
/// plus direct I <-> II switches between neighbouring points.
int count_transition_neighbourhoods(const std::vector<Occupancy>& sequence);

}  // namespace dwell
