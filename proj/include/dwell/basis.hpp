#pragma once

#include <Eigen/Dense>

#include "dwell/potential.hpp"

namespace dwell {

/// Scaled harmonic-oscillator basis
///   phi_l(x; sigma) = (2 sigma/pi)^{1/4} (2^l l!)^{-1/2} H_l(sqrt(2 sigma) x) exp(-sigma x^2),
/// so that <0|x^2|0> = 1/(4 sigma). Units: hbar = 2m = 1, H = p^2 + V(x).
struct BasisSpec {
  int n_basis = 100;
  double sigma = 1.0;

  /// Throws InvalidArgument unless n_basis >= 4 and sigma > 0.
  void validate() const;
};

/// Tr h as a function of sigma (only the sigma-dependent diagonal plus c0).
double basis_trace(const QuarticPotential& pot, const BasisSpec& basis);

/// Scale sigma minimizing Tr h: the unique positive root of
/// 8 S1 s^3 - 2 c2 S1 s - 3 c4 S2 = 0, S1 = sum(2l+1), S2 = sum(2l^2+2l+1).
double optimal_sigma(const QuarticPotential& pot, int n_basis);

/// Real symmetric Hamiltonian h_lm = <l|p^2 + V|m> in the position basis.
/// Built from ladder operators: x = (a + a^+)/(2 sqrt(sigma)),
/// p^2 = sigma (2 a^+ a + 1) - sigma (a^2 + a^+2).
Eigen::MatrixXd assemble_position(const QuarticPotential& pot, const BasisSpec& basis);

/// Hermitian momentum-space matrix g = D h D^+, D = diag((-i)^l).
Eigen::MatrixXcd assemble_momentum(const QuarticPotential& pot, const BasisSpec& basis);

/// Truncated ladder matrices on an (rows x cols) block, used for exact moments.
/// position_operator(N+1, N, sigma) maps an N-vector to its exact image under x.
Eigen::MatrixXd position_operator(int rows, int cols, double sigma);
/// -i p in the oscillator basis (real): -i p = d/dx = sqrt(sigma) (a - a^+).
Eigen::MatrixXd derivative_operator(int rows, int cols, double sigma);

}  // namespace dwell
