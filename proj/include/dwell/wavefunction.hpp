#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "dwell/potential.hpp"
#include "dwell/spectrum.hpp"

namespace dwell {

/// Uniform 1D grid x_i = x0 + i dx, i = 0 .. points-1.
struct Grid {
  double x0 = 0.0;
  double dx = 1.0;
  int points = 0;

  double operator[](int i) const { return x0 + dx * i; }
  double back() const { return x0 + dx * (points - 1); }
  std::vector<double> coordinates() const;

  /// points samples spanning [lo, hi] inclusive.
  static Grid uniform(double lo, double hi, int points);
};

template <class T>
struct GridFunction {
  Grid grid;
  std::vector<T> values;
};

using RealGridFunction = GridFunction<double>;
using ComplexGridFunction = GridFunction<std::complex<double>>;

inline constexpr int kDefaultGridPoints = 4096;

/// Position grid wide enough for every state up to e_max: outermost turning
/// points at e_max, each pushed outward past the classically forbidden decay
/// region, then rounded outward to a multiple of 1/8.
Grid build_grid(const QuarticPotential& pot, double e_max, int points = kDefaultGridPoints);

/// Symmetric momentum grid [-p_max, p_max]. Starts from
/// p_max = 1.5 sqrt(e_max - V_min) and widens until |psi~_n(+-p_max)|^2 of the
/// first n_states states is negligible (1e-16 of the peak density).
Grid build_momentum_grid(const Spectrum& spec, int n_states, double e_max,
                         int points = kDefaultGridPoints);

/// Largest |sqrt(2 sigma) x| the Hermite recurrence accepts before exp(-y^2/2)
/// leaves the normal double range.
inline constexpr double kHermiteArgumentLimit = 37.5;

/// Normalized Hermite functions psi_l(y), l = 0..n-1 (unit L2 norm in y),
/// from psi_{l+1} = y sqrt(2/(l+1)) psi_l - sqrt(l/(l+1)) psi_{l-1}.
std::vector<double> hermite_functions(int n, double y);

/// n_basis x points table of phi_l(x_i; sigma).
Eigen::MatrixXd basis_table(int n_basis, double sigma, const Grid& grid);
/// Same for d phi_l / dx, from phi_l' = sqrt(2 sigma)(sqrt(2l) phi_{l-1} - y phi_l).
Eigen::MatrixXd basis_derivative_table(int n_basis, double sigma, const Grid& grid);

RealGridFunction eval_position(const Spectrum& spec, int n, const Grid& grid);
RealGridFunction eval_position_derivative(const Spectrum& spec, int n, const Grid& grid);

/// Unitary convention psi~(p) = (2 pi)^{-1/2} int psi(x) exp(-i p x) dx, giving
/// psi~_n(p) = sum_l c_l (-i)^l phi_l(p; 1/(4 sigma)).
ComplexGridFunction eval_momentum(const Spectrum& spec, int n, const Grid& grid);
ComplexGridFunction eval_momentum_derivative(const Spectrum& spec, int n, const Grid& grid);

/// Batched variants: states 0..n_states-1 sharing one basis table.
std::vector<RealGridFunction> eval_position_states(const Spectrum& spec, int n_states,
                                                   const Grid& grid, bool derivative = false);
std::vector<ComplexGridFunction> eval_momentum_states(const Spectrum& spec, int n_states,
                                                      const Grid& grid, bool derivative = false);

struct NodeCount {
  int total = 0;
  int effective = 0;
};

/// Sign changes of psi strictly between the outermost turning points at
/// energy. Samples below 1e-10 max|psi| are treated as numerically zero and
/// skipped. A node is effective when the well holding it (split at the
/// barrier) carries probability >= rho_floor.
NodeCount count_nodes(const RealGridFunction& psi, const QuarticPotential& pot, double energy,
                      double rho_floor = 0.01);

}  // namespace dwell
