#pragma once

#include <vector>

#include <Eigen/Dense>

#include "dwell/basis.hpp"
#include "dwell/potential.hpp"

namespace dwell {

/// Lowest eigenpairs of the position-space Hamiltonian.
struct Spectrum {
  QuarticPotential potential;
  BasisSpec basis;
  std::vector<double> energies;    // ascending, one per requested state
  Eigen::MatrixXd coefficients;    // n_basis x n_states, column n = state n

  int n_states() const { return static_cast<int>(energies.size()); }
  /// Only the bottom third of the basis is trusted against truncation.
  int n_certified() const { return basis.n_basis / 3 + 1; }
  bool certified(int n) const { return n >= 0 && n < n_certified(); }
  Eigen::VectorXd state(int n) const { return coefficients.col(n); }
};

/// Diagonalize at the trace-optimal sigma. Throws BasisTooSmall when
/// n_states exceeds n_basis / 2 and ConvergenceFailure when any returned
/// eigenpair misses the residual bound 1e-10 max(1, |E|).
Spectrum solve(const QuarticPotential& pot, int n_basis, int n_states);

/// Same with an explicit basis (sigma not re-optimized).
Spectrum solve(const QuarticPotential& pot, const BasisSpec& basis, int n_states);

/// Eigenvalues only, ascending, first n_states. Cheaper path for sweeps.
std::vector<double> solve_energies(const QuarticPotential& pot, int n_basis, int n_states);

/// Ascending eigenvalues of a Hermitian matrix.
std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& g);

struct DegeneratePair {
  int lower;
  int upper;
  double gap;
};

/// Adjacent pairs with |E_{n+1} - E_n| <= rel_tol (1 + |E_n|), taken greedily
/// from the bottom so that pairs never overlap.
std::vector<DegeneratePair> quasi_degenerate_pairs(const std::vector<double>& energies,
                                                   double rel_tol = 1e-6);
std::vector<DegeneratePair> quasi_degenerate_pairs(const Spectrum& spec, double rel_tol = 1e-6);

}  // namespace dwell
