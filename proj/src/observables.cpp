#include "dwell/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dwell/basis.hpp"
#include "dwell/errors.hpp"
#include "dwell/quadrature.hpp"

namespace dwell {

std::string_view to_string(Occupancy occ) {
  switch (occ) {
    case Occupancy::WellI: return "I";
    case Occupancy::WellII: return "II";
    case Occupancy::Both: return "both";
  }
  return "?";
}

UncertaintyReport uncertainties(const Spectrum& spec, int n) {
  if (n < 0 || n >= spec.n_states()) throw InvalidArgument("state index out of range");
  const int nb = spec.basis.n_basis;
  const Eigen::VectorXd c = spec.coefficients.col(n);
  const Eigen::VectorXd xc = position_operator(nb + 1, nb, spec.basis.sigma) * c;
  const Eigen::VectorXd dc = derivative_operator(nb + 1, nb, spec.basis.sigma) * c;

  UncertaintyReport r;
  r.mean_x = c.dot(xc.head(nb));
  // Real coefficients make <p> = -i c.Dc vanish identically.
  r.mean_p = 0.0;
  const double x2 = xc.squaredNorm();
  const double p2 = dc.squaredNorm();
  r.delta_x = std::sqrt(std::max(x2 - r.mean_x * r.mean_x, 0.0));
  r.delta_p = std::sqrt(std::max(p2 - r.mean_p * r.mean_p, 0.0));
  r.product = r.delta_x * r.delta_p;
  return r;
}

Occupancy classify_occupancy(double p) {
  if (p >= 0.9) return Occupancy::WellI;
  if (p <= 0.1) return Occupancy::WellII;
  return Occupancy::Both;
}

std::vector<WellOccupancy> well_occupancies(const Spectrum& spec, int n_states,
                                            const WellGeometry& geometry, const Grid& grid) {
  std::vector<WellOccupancy> out(n_states);
  if (!geometry.barrier) return out;
  const double xb = geometry.barrier->x;
  if (!(xb > grid.x0 && xb < grid.back())) throw InvalidArgument("barrier outside grid");

  auto side_grid = [&](double lo, double hi) {
    int m = static_cast<int>(std::ceil((hi - lo) / grid.dx)) + 1;
    m = std::max(m, 65);
    if (m % 2 == 0) ++m;
    return Grid::uniform(lo, hi, m);
  };
  const auto left = eval_position_states(spec, n_states, side_grid(grid.x0, xb));
  const auto right = eval_position_states(spec, n_states, side_grid(xb, grid.back()));
  const bool deeper_right = geometry.deeper_well_side == WellSide::Right;

  for (int n = 0; n < n_states; ++n) {
    const double pl = simpson(density(left[n]).values, left[n].grid.dx);
    const double pr = simpson(density(right[n]).values, right[n].grid.dx);
    const double total = pl + pr;
    WellOccupancy& w = out[n];
    w.barrier_x = xb;
    w.p_well_I = (deeper_right ? pr : pl) / total;
    w.p_well_II = (deeper_right ? pl : pr) / total;
    w.classification = classify_occupancy(w.p_well_I);
  }
  return out;
}

WellOccupancy well_occupancy(const Spectrum& spec, int n, const WellGeometry& geometry,
                             const Grid& grid) {
  if (n < 0 || n >= spec.n_states()) throw InvalidArgument("state index out of range");
  Spectrum single = spec;
  single.coefficients = spec.coefficients.col(n);
  single.energies = {spec.energies[n]};
  return well_occupancies(single, 1, geometry, grid).front();
}

RealGridFunction density(const RealGridFunction& psi) {
  RealGridFunction rho{psi.grid, psi.values};
  for (double& v : rho.values) v *= v;
  return rho;
}

RealGridFunction density(const ComplexGridFunction& psi) {
  RealGridFunction rho{psi.grid, std::vector<double>(psi.values.size())};
  for (std::size_t i = 0; i < psi.values.size(); ++i) rho.values[i] = std::norm(psi.values[i]);
  return rho;
}

void check_normalized(const RealGridFunction& rho) {
  const double norm = simpson(rho.values, rho.grid.dx);
  if (!(std::abs(norm - 1.0) <= 1e-4)) {
    throw NotNormalized("density integrates to " + std::to_string(norm));
  }
}

double shannon(const RealGridFunction& rho) {
  check_normalized(rho);
  std::vector<double> f(rho.values.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double r = rho.values[i];
    f[i] = r > 0.0 ? -r * std::log(r) : 0.0;
  }
  return simpson(f, rho.grid.dx);
}

double fisher_from_density(const RealGridFunction& rho, const RealGridFunction& drho) {
  check_normalized(rho);
  std::vector<double> f(rho.values.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double r = rho.values[i];
    f[i] = r < 1e-300 ? 0.0 : drho.values[i] * drho.values[i] / r;
  }
  return simpson(f, rho.grid.dx);
}

double fisher(const RealGridFunction& psi, const RealGridFunction& dpsi) {
  RealGridFunction drho{psi.grid, std::vector<double>(psi.values.size())};
  for (std::size_t i = 0; i < drho.values.size(); ++i) {
    drho.values[i] = 2.0 * psi.values[i] * dpsi.values[i];
  }
  return fisher_from_density(density(psi), drho);
}

double fisher(const ComplexGridFunction& psi, const ComplexGridFunction& dpsi) {
  RealGridFunction drho{psi.grid, std::vector<double>(psi.values.size())};
  for (std::size_t i = 0; i < drho.values.size(); ++i) {
    drho.values[i] = 2.0 * std::real(std::conj(psi.values[i]) * dpsi.values[i]);
  }
  return fisher_from_density(density(psi), drho);
}

double onicescu(const RealGridFunction& rho) {
  check_normalized(rho);
  std::vector<double> f(rho.values.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = rho.values[i] * rho.values[i];
  return simpson(f, rho.grid.dx);
}

double os(double s, double e) { return std::exp(2.0 * s / 3.0) * e; }

InfoMeasures measures_from(const RealGridFunction& psi, const RealGridFunction& dpsi,
                           const ComplexGridFunction& phi, const ComplexGridFunction& dphi) {
  const RealGridFunction rx = density(psi);
  const RealGridFunction rp = density(phi);
  InfoMeasures m;
  m.s_x = shannon(rx);
  m.s_p = shannon(rp);
  m.s_total = m.s_x + m.s_p;
  m.i_x = fisher(psi, dpsi);
  m.i_p = fisher(phi, dphi);
  m.i_product = m.i_x * m.i_p;
  m.e_x = onicescu(rx);
  m.e_p = onicescu(rp);
  m.e_product = m.e_x * m.e_p;
  m.os_x = os(m.s_x, m.e_x);
  m.os_p = os(m.s_p, m.e_p);
  m.os_total = m.os_x * m.os_p;
  return m;
}

std::vector<InfoMeasures> info_measures(const Spectrum& spec, int n_states, const Grid& xgrid,
                                        const Grid& pgrid) {
  const auto psi = eval_position_states(spec, n_states, xgrid);
  const auto dpsi = eval_position_states(spec, n_states, xgrid, true);
  const auto phi = eval_momentum_states(spec, n_states, pgrid);
  const auto dphi = eval_momentum_states(spec, n_states, pgrid, true);
  std::vector<InfoMeasures> out;
  for (int n = 0; n < n_states; ++n) out.push_back(measures_from(psi[n], dpsi[n], phi[n], dphi[n]));
  return out;
}

}  // namespace dwell
