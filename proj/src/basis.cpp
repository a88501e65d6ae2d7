#include "dwell/basis.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "dwell/errors.hpp"
#include "dwell/potential.hpp"

namespace dwell {

void BasisSpec::validate() const {
  if (n_basis < 4) throw InvalidArgument("basis needs at least 4 functions");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidArgument("sigma must be positive");
}

double basis_trace(const QuarticPotential& pot, const BasisSpec& basis) {
  const double s = basis.sigma;
  double trace = 0.0;
  for (int l = 0; l < basis.n_basis; ++l) {
    const double dl = l;
    trace += 3.0 * pot.c4() * (2.0 * dl * dl + 2.0 * dl + 1.0) / (16.0 * s * s) +
             pot.c2() * (2.0 * dl + 1.0) / (4.0 * s) + s * (2.0 * dl + 1.0) + pot.c0();
  }
  return trace;
}

double optimal_sigma(const QuarticPotential& pot, int n_basis) {
  if (n_basis < 1) throw InvalidArgument("optimal_sigma: n_basis must be positive");
  const double n = n_basis;
  const double s1 = n * n;
  const double s2 = (2.0 * n * n * n + n) / 3.0;  // sum of 2l^2 + 2l + 1, l < N

  if (pot.c4() == 0.0) {
    if (!(pot.c2() > 0.0)) throw NoPositiveRoot("optimal_sigma: no confining term");
    return 0.5 * std::sqrt(pot.c2());
  }
  if (!(pot.c4() > 0.0)) throw NoPositiveRoot("optimal_sigma: quartic coefficient must be positive");

  // 8 S1 s^3 - 2 c2 S1 s - 3 c4 S2 = 0: exactly one positive root (Descartes).
  const std::vector<double> roots =
      cubic_real_roots(8.0 * s1, 0.0, -2.0 * pot.c2() * s1, -3.0 * pot.c4() * s2);
  double sigma = -1.0;
  for (double r : roots) sigma = std::max(sigma, r);
  if (!(sigma > 0.0)) throw NoPositiveRoot("optimal_sigma: trace has no stationary point");

  // one Newton step
  const double f = (8.0 * s1 * sigma * sigma - 2.0 * pot.c2() * s1) * sigma - 3.0 * pot.c4() * s2;
  const double df = 24.0 * s1 * sigma * sigma - 2.0 * pot.c2() * s1;
  if (df != 0.0) sigma -= f / df;
  return sigma;
}

namespace {

Eigen::MatrixXd annihilation(int dim) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (int l = 1; l < dim; ++l) a(l - 1, l) = std::sqrt(static_cast<double>(l));
  return a;
}

}  // namespace

Eigen::MatrixXd assemble_position(const QuarticPotential& pot, const BasisSpec& basis) {
  basis.validate();
  const int n = basis.n_basis;
  const int dim = n + 4;  // x^4 couples l to l +- 4; padding keeps the top block exact
  const double s = basis.sigma;

  const Eigen::MatrixXd a = annihilation(dim);
  const Eigen::MatrixXd ad = a.transpose();
  const Eigen::MatrixXd x = (a + ad) / (2.0 * std::sqrt(s));
  const Eigen::MatrixXd x2 = x * x;
  const Eigen::MatrixXd x3 = x2 * x;
  const Eigen::MatrixXd x4 = x2 * x2;

  Eigen::MatrixXd kinetic = -s * (a * a + ad * ad);
  for (int l = 0; l < dim; ++l) kinetic(l, l) += s * (2.0 * l + 1.0);

  Eigen::MatrixXd h = kinetic + pot.c4() * x4 + pot.c3() * x3 + pot.c2() * x2 + pot.c1() * x;
  h.diagonal().array() += pot.c0();

  Eigen::MatrixXd block = h.topLeftCorner(n, n);
  // Clear round-off outside the band and symmetrize.
  for (int l = 0; l < n; ++l) {
    for (int m = 0; m < n; ++m) {
      if (std::abs(l - m) > 4) block(l, m) = 0.0;
    }
  }
  return 0.5 * (block + block.transpose());
}

Eigen::MatrixXcd assemble_momentum(const QuarticPotential& pot, const BasisSpec& basis) {
  const Eigen::MatrixXd h = assemble_position(pot, basis);
  const int n = basis.n_basis;
  // (-i)^k for k mod 4
  const std::complex<double> phase[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  Eigen::MatrixXcd g(n, n);
  for (int l = 0; l < n; ++l) {
    for (int m = 0; m < n; ++m) {
      const int k = ((l - m) % 4 + 4) % 4;
      g(l, m) = phase[k] * h(l, m);
    }
  }
  return g;
}

Eigen::MatrixXd position_operator(int rows, int cols, double sigma) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(rows, cols);
  const double scale = 1.0 / (2.0 * std::sqrt(sigma));
  for (int m = 0; m < cols; ++m) {
    if (m + 1 < rows) x(m + 1, m) = scale * std::sqrt(m + 1.0);
    if (m >= 1 && m - 1 < rows) x(m - 1, m) = scale * std::sqrt(static_cast<double>(m));
  }
  return x;
}

Eigen::MatrixXd derivative_operator(int rows, int cols, double sigma) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(rows, cols);
  const double scale = std::sqrt(sigma);
  for (int m = 0; m < cols; ++m) {
    if (m + 1 < rows) d(m + 1, m) = -scale * std::sqrt(m + 1.0);
    if (m >= 1 && m - 1 < rows) d(m - 1, m) = scale * std::sqrt(static_cast<double>(m));
  }
  return d;
}

}  // namespace dwell
