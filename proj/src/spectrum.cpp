#include "dwell/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dwell/errors.hpp"

namespace dwell {

namespace {

void check_request(int n_basis, int n_states) {
  if (n_states < 1) throw InvalidArgument("at least one state must be requested");
  if (2 * n_states > n_basis) {
    throw BasisTooSmall("requested " + std::to_string(n_states) + " states from a basis of " +
                        std::to_string(n_basis) + "; at most n_basis / 2 are available");
  }
}

struct Eigenpairs {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

Eigenpairs diagonalize(const Eigen::MatrixXd& h, bool want_vectors) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      h, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceFailure("symmetric eigensolver failed");
  Eigenpairs out;
  out.values = solver.eigenvalues();
  if (want_vectors) out.vectors = solver.eigenvectors();
  return out;
}

// h couples only l, m of equal parity when V is even: solve both blocks and
// interleave them, state n taking parity (-1)^n.
Eigenpairs diagonalize_even(const Eigen::MatrixXd& h, int n_states) {
  const int n = static_cast<int>(h.rows());
  const int n_even = (n + 1) / 2;
  const int n_odd = n / 2;
  Eigen::MatrixXd he(n_even, n_even);
  Eigen::MatrixXd ho(n_odd, n_odd);
  for (int i = 0; i < n_even; ++i)
    for (int j = 0; j < n_even; ++j) he(i, j) = h(2 * i, 2 * j);
  for (int i = 0; i < n_odd; ++i)
    for (int j = 0; j < n_odd; ++j) ho(i, j) = h(2 * i + 1, 2 * j + 1);

  const Eigenpairs even = diagonalize(he, true);
  const Eigenpairs odd = diagonalize(ho, true);

  Eigenpairs out;
  out.values.resize(n_states);
  out.vectors = Eigen::MatrixXd::Zero(n, n_states);
  for (int s = 0; s < n_states; ++s) {
    const int j = s / 2;
    if (s % 2 == 0) {
      out.values(s) = even.values(j);
      for (int i = 0; i < n_even; ++i) out.vectors(2 * i, s) = even.vectors(i, j);
    } else {
      out.values(s) = odd.values(j);
      for (int i = 0; i < n_odd; ++i) out.vectors(2 * i + 1, s) = odd.vectors(i, j);
    }
  }
  // A quasi-degenerate pair can come out inverted by round-off; the values
  // are then equal to working precision and are simply reordered.
  for (int s = 0; s + 1 < n_states; ++s) {
    if (out.values(s + 1) < out.values(s)) std::swap(out.values(s), out.values(s + 1));
  }
  return out;
}

}  // namespace

Spectrum solve(const QuarticPotential& pot, int n_basis, int n_states) {
  return solve(pot, BasisSpec{n_basis, optimal_sigma(pot, n_basis)}, n_states);
}

Spectrum solve(const QuarticPotential& pot, const BasisSpec& basis, int n_states) {
  basis.validate();
  check_request(basis.n_basis, n_states);
  const Eigen::MatrixXd h = assemble_position(pot, basis);

  Eigenpairs pairs;
  if (pot.is_even()) {
    pairs = diagonalize_even(h, n_states);
  } else {
    Eigenpairs full = diagonalize(h, true);
    pairs.values = full.values.head(n_states);
    pairs.vectors = full.vectors.leftCols(n_states);
  }

  Spectrum spec{pot, basis, {}, {}};
  spec.energies.assign(pairs.values.data(), pairs.values.data() + n_states);
  spec.coefficients = pairs.vectors;

  for (int s = 0; s < n_states; ++s) {
    Eigen::VectorXd c = spec.coefficients.col(s);
    // Fix the arbitrary sign: largest-magnitude coefficient positive.
    Eigen::Index imax = 0;
    c.cwiseAbs().maxCoeff(&imax);
    if (c(imax) < 0.0) spec.coefficients.col(s) *= -1.0;

    const double e = spec.energies[s];
    const double residual = (h * spec.coefficients.col(s) - e * spec.coefficients.col(s)).norm();
    if (!(residual <= 1e-10 * std::max(1.0, std::abs(e)))) {
      throw ConvergenceFailure("eigenpair " + std::to_string(s) + " residual " +
                               std::to_string(residual) + " exceeds bound");
    }
  }
  return spec;
}

std::vector<double> solve_energies(const QuarticPotential& pot, int n_basis, int n_states) {
  check_request(n_basis, n_states);
  const BasisSpec basis{n_basis, optimal_sigma(pot, n_basis)};
  const Eigenpairs pairs = diagonalize(assemble_position(pot, basis), false);
  return {pairs.values.data(), pairs.values.data() + n_states};
}

std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(g, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceFailure("hermitian eigensolver failed");
  const Eigen::VectorXd& v = solver.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

std::vector<DegeneratePair> quasi_degenerate_pairs(const std::vector<double>& energies,
                                                   double rel_tol) {
  if (!(rel_tol > 0.0)) throw InvalidArgument("rel_tol must be positive");
  std::vector<DegeneratePair> pairs;
  for (std::size_t n = 0; n + 1 < energies.size();) {
    const double gap = std::abs(energies[n + 1] - energies[n]);
    if (gap <= rel_tol * (1.0 + std::abs(energies[n]))) {
      pairs.push_back({static_cast<int>(n), static_cast<int>(n + 1), gap});
      n += 2;
    } else {
      n += 1;
    }
  }
  return pairs;
}

std::vector<DegeneratePair> quasi_degenerate_pairs(const Spectrum& spec, double rel_tol) {
  return quasi_degenerate_pairs(spec.energies, rel_tol);
}

}  // namespace dwell
