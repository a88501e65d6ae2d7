#pragma once

#include <cmath>
#include <numbers>
#include <string_view>
#include <vector>

#include "dwell/potential.hpp"
#include "dwell/spectrum.hpp"
#include "dwell/wavefunction.hpp"

namespace dwell {

struct UncertaintyReport {
  double mean_x = 0.0;
  double mean_p = 0.0;
  double delta_x = 0.0;
  double delta_p = 0.0;
  double product = 0.0;
};

/// Exact moments of the truncated expansion from ladder-operator algebra.
UncertaintyReport uncertainties(const Spectrum& spec, int n);

struct InfoMeasures {
  double s_x = 0.0, s_p = 0.0, s_total = 0.0;
  double i_x = 0.0, i_p = 0.0, i_product = 0.0;
  double e_x = 0.0, e_p = 0.0, e_product = 0.0;
  double os_x = 0.0, os_p = 0.0, os_total = 0.0;
};

// Gaussian values (hbar = 1). Lower bounds for S, I and dx dp; E and OS are
// not bounded by theirs in either direction.
inline const double kShannonBound = 1.0 + std::log(std::numbers::pi);
inline constexpr double kFisherBound = 4.0;
inline constexpr double kOnicescuBound = 1.0 / (2.0 * std::numbers::pi);
inline const double kOSBound = 0.5 * std::cbrt(1.0 / std::numbers::pi) * std::exp(2.0 / 3.0);
inline constexpr double kUncertaintyBound = 0.5;

enum class Occupancy { WellI, WellII, Both };
std::string_view to_string(Occupancy occ);

struct WellOccupancy {
  double p_well_I = 1.0;
  double p_well_II = 0.0;
  double barrier_x = 0.0;
  Occupancy classification = Occupancy::WellI;
};

Occupancy classify_occupancy(double p_well_I);

/// Probability on the deeper-well side of the barrier (left when symmetric).
/// Each side is integrated on its own Simpson grid ending exactly at x_b, with
/// spacing no coarser than the given grid.
WellOccupancy well_occupancy(const Spectrum& spec, int n, const WellGeometry& geometry,
                             const Grid& grid);
std::vector<WellOccupancy> well_occupancies(const Spectrum& spec, int n_states,
                                            const WellGeometry& geometry, const Grid& grid);

/// Throws NotNormalized when the density integrates to 1 +- more than 1e-4.
void check_normalized(const RealGridFunction& rho);

double shannon(const RealGridFunction& rho);
/// int rho'^2 / rho from an analytic derivative; points with rho < 1e-300 skipped.
double fisher_from_density(const RealGridFunction& rho, const RealGridFunction& drho);
/// Same with rho = |psi|^2 and rho' = 2 Re(conj(psi) psi').
double fisher(const RealGridFunction& psi, const RealGridFunction& dpsi);
double fisher(const ComplexGridFunction& psi, const ComplexGridFunction& dpsi);
double onicescu(const RealGridFunction& rho);
double os(double s, double e);

RealGridFunction density(const RealGridFunction& psi);
RealGridFunction density(const ComplexGridFunction& psi);

InfoMeasures measures_from(const RealGridFunction& psi, const RealGridFunction& dpsi,
                           const ComplexGridFunction& phi, const ComplexGridFunction& dphi);

/// All four measures in both spaces for states 0..n_states-1.
std::vector<InfoMeasures> info_measures(const Spectrum& spec, int n_states, const Grid& xgrid,
                                        const Grid& pgrid);

}  // namespace dwell
