#pragma once

#include <string>
#include <vector>

#include "dwell/observables.hpp"
#include "dwell/phase_space.hpp"
#include "dwell/potential.hpp"
#include "dwell/wavefunction.hpp"

namespace dwell {

/// Everything computed for one eigenstate.
struct StateReport {
  int n = 0;
  double energy = 0.0;
  UncertaintyReport uncertainty;
  WellOccupancy occupancy;
  NodeCount nodes;
  InfoMeasures info;
  double barrier_action = 0.0;
  double allowed_action = 0.0;
  int lobe_count = 0;
  bool converged = false;
  std::string error;  // empty on success
};

struct AnalysisOptions {
  int n_basis = 100;
  int n_states = 8;
  int grid_points = kDefaultGridPoints;
  double rho_floor = 0.01;
};

/// Solves pot and fills a StateReport for states 0..n_states-1. Failures of
/// a single state's measures land in its error field; a failed solve throws.
std::vector<StateReport> analyze(const QuarticPotential& pot, const AnalysisOptions& options = {});

}  // namespace dwell
