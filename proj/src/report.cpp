#include "dwell/report.hpp"

#include "dwell/errors.hpp"
#include "dwell/spectrum.hpp"

namespace dwell {

std::vector<StateReport> analyze(const QuarticPotential& pot, const AnalysisOptions& o) {
  if (o.n_states < 1) throw InvalidArgument("n_states must be >= 1");
  if (3 * o.n_states > o.n_basis) {
    throw BasisTooSmall("n_states must not exceed n_basis / 3");
  }
  const Spectrum spec = solve(pot, o.n_basis, o.n_states);
  const double e_max = spec.energies.back();
  const WellGeometry geo = critical_points(pot);
  const Grid xgrid = build_grid(pot, e_max, o.grid_points);
  const Grid pgrid = build_momentum_grid(spec, o.n_states, e_max, o.grid_points);

  const auto psi = eval_position_states(spec, o.n_states, xgrid);
  const auto dpsi = eval_position_states(spec, o.n_states, xgrid, true);
  const auto phi = eval_momentum_states(spec, o.n_states, pgrid);
  const auto dphi = eval_momentum_states(spec, o.n_states, pgrid, true);
  const auto occ = well_occupancies(spec, o.n_states, geo, xgrid);

  std::vector<StateReport> out(o.n_states);
  for (int n = 0; n < o.n_states; ++n) {
    StateReport& r = out[n];
    r.n = n;
    r.energy = spec.energies[n];
    r.converged = spec.certified(n);
    r.occupancy = occ[n];
    try {
      r.uncertainty = uncertainties(spec, n);
      r.nodes = count_nodes(psi[n], pot, r.energy, o.rho_floor);
      r.info = measures_from(psi[n], dpsi[n], phi[n], dphi[n]);
      const PhaseSpaceResult ps = area(pot, r.energy);
      r.barrier_action = ps.barrier_action;
      r.allowed_action = ps.allowed_action;
      r.lobe_count = ps.lobe_count;
    } catch (const Error& e) {
      r.error = e.what();
    }
  }
  return out;
}

}  // namespace dwell
