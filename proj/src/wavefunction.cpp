#include "dwell/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dwell/errors.hpp"
#include "dwell/quadrature.hpp"

namespace dwell {

std::vector<double> Grid::coordinates() const {
  std::vector<double> x(points);
  for (int i = 0; i < points; ++i) x[i] = (*this)[i];
  return x;
}

Grid Grid::uniform(double lo, double hi, int points) {
  if (points < 2 || !(hi > lo)) throw InvalidArgument("uniform grid needs hi > lo and >= 2 points");
  return Grid{lo, (hi - lo) / (points - 1), points};
}

Grid build_grid(const QuarticPotential& pot, double e_max, int points) {
  if (points < 512) throw InvalidArgument("build_grid: at least 512 points required");
  const Extremum vmin = global_minimum(pot);
  std::vector<double> roots = turning_points(pot, e_max);
  double lo = vmin.x;
  double hi = vmin.x;
  if (!roots.empty()) {
    lo = roots.front();
    hi = roots.back();
  }
  // Past a turning point with slope F the WKB exponent (2/3) sqrt(F) d^{3/2}
  // reaches 20 (density ~ 1e-17) at d = (30 / sqrt(F))^{2/3}.
  auto decay_length = [&](double x) {
    const double slope = std::max(std::abs(pot.derivative(x)), 1e-3);
    return std::cbrt(900.0 / slope);
  };
  const double span = hi - lo;
  const double pad_lo = std::max(1.2 * decay_length(lo), 0.2 * span);
  const double pad_hi = std::max(1.2 * decay_length(hi), 0.2 * span);
  lo = std::floor((lo - pad_lo) * 8.0) / 8.0;
  hi = std::ceil((hi + pad_hi) * 8.0) / 8.0;
  return Grid::uniform(lo, hi, points);
}

std::vector<double> hermite_functions(int n, double y) {
  if (std::abs(y) > kHermiteArgumentLimit) {
    throw OverflowGuard("Hermite recurrence argument " + std::to_string(y) + " out of range");
  }
  std::vector<double> psi(n);
  if (n == 0) return psi;
  psi[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * y * y);
  if (n > 1) psi[1] = std::numbers::sqrt2 * y * psi[0];
  for (int l = 1; l + 1 < n; ++l) {
    psi[l + 1] = y * std::sqrt(2.0 / (l + 1.0)) * psi[l] - std::sqrt(l / (l + 1.0)) * psi[l - 1];
  }
  return psi;
}

Eigen::MatrixXd basis_table(int n_basis, double sigma, const Grid& grid) {
  Eigen::MatrixXd table(n_basis, grid.points);
  const double root = std::sqrt(2.0 * sigma);
  const double norm = std::sqrt(root);  // (2 sigma)^{1/4}
  for (int i = 0; i < grid.points; ++i) {
    const std::vector<double> psi = hermite_functions(n_basis, root * grid[i]);
    for (int l = 0; l < n_basis; ++l) table(l, i) = norm * psi[l];
  }
  return table;
}

Eigen::MatrixXd basis_derivative_table(int n_basis, double sigma, const Grid& grid) {
  Eigen::MatrixXd table(n_basis, grid.points);
  const double root = std::sqrt(2.0 * sigma);
  const double norm = std::sqrt(root) * root;
  for (int i = 0; i < grid.points; ++i) {
    const double y = root * grid[i];
    const std::vector<double> psi = hermite_functions(n_basis, y);
    for (int l = 0; l < n_basis; ++l) {
      const double lower = l > 0 ? std::sqrt(2.0 * l) * psi[l - 1] : 0.0;
      table(l, i) = norm * (lower - y * psi[l]);
    }
  }
  return table;
}

namespace {

double momentum_sigma(const Spectrum& spec) { return 1.0 / (4.0 * spec.basis.sigma); }

void check_state(const Spectrum& spec, int n) {
  if (n < 0 || n >= spec.n_states()) throw InvalidArgument("state index out of range");
}

// Real and imaginary coefficient vectors of sum_l c_l (-i)^l phi_l.
std::pair<Eigen::VectorXd, Eigen::VectorXd> momentum_coefficients(const Eigen::VectorXd& c) {
  Eigen::VectorXd re = Eigen::VectorXd::Zero(c.size());
  Eigen::VectorXd im = Eigen::VectorXd::Zero(c.size());
  for (Eigen::Index l = 0; l < c.size(); ++l) {
    switch (l % 4) {
      case 0: re(l) = c(l); break;
      case 1: im(l) = -c(l); break;
      case 2: re(l) = -c(l); break;
      default: im(l) = c(l); break;
    }
  }
  return {re, im};
}

}  // namespace

std::vector<RealGridFunction> eval_position_states(const Spectrum& spec, int n_states,
                                                   const Grid& grid, bool derivative) {
  if (n_states > spec.n_states()) throw InvalidArgument("more states requested than solved");
  const Eigen::MatrixXd table = derivative
                                    ? basis_derivative_table(spec.basis.n_basis, spec.basis.sigma, grid)
                                    : basis_table(spec.basis.n_basis, spec.basis.sigma, grid);
  const Eigen::MatrixXd values = spec.coefficients.leftCols(n_states).transpose() * table;
  std::vector<RealGridFunction> out(n_states);
  for (int n = 0; n < n_states; ++n) {
    out[n].grid = grid;
    out[n].values.resize(grid.points);
    for (int i = 0; i < grid.points; ++i) out[n].values[i] = values(n, i);
  }
  return out;
}

std::vector<ComplexGridFunction> eval_momentum_states(const Spectrum& spec, int n_states,
                                                      const Grid& grid, bool derivative) {
  if (n_states > spec.n_states()) throw InvalidArgument("more states requested than solved");
  const double s = momentum_sigma(spec);
  const Eigen::MatrixXd table = derivative ? basis_derivative_table(spec.basis.n_basis, s, grid)
                                           : basis_table(spec.basis.n_basis, s, grid);
  std::vector<ComplexGridFunction> out(n_states);
  for (int n = 0; n < n_states; ++n) {
    const auto [re, im] = momentum_coefficients(spec.coefficients.col(n));
    const Eigen::VectorXd vr = table.transpose() * re;
    const Eigen::VectorXd vi = table.transpose() * im;
    out[n].grid = grid;
    out[n].values.resize(grid.points);
    for (int i = 0; i < grid.points; ++i) out[n].values[i] = {vr(i), vi(i)};
  }
  return out;
}

RealGridFunction eval_position(const Spectrum& spec, int n, const Grid& grid) {
  check_state(spec, n);
  const Eigen::MatrixXd table = basis_table(spec.basis.n_basis, spec.basis.sigma, grid);
  const Eigen::VectorXd v = table.transpose() * spec.coefficients.col(n);
  return {grid, std::vector<double>(v.data(), v.data() + v.size())};
}

RealGridFunction eval_position_derivative(const Spectrum& spec, int n, const Grid& grid) {
  check_state(spec, n);
  const Eigen::MatrixXd table = basis_derivative_table(spec.basis.n_basis, spec.basis.sigma, grid);
  const Eigen::VectorXd v = table.transpose() * spec.coefficients.col(n);
  return {grid, std::vector<double>(v.data(), v.data() + v.size())};
}

ComplexGridFunction eval_momentum(const Spectrum& spec, int n, const Grid& grid) {
  check_state(spec, n);
  Spectrum single = spec;
  single.coefficients = spec.coefficients.col(n);
  single.energies = {spec.energies[n]};
  return eval_momentum_states(single, 1, grid, false).front();
}

ComplexGridFunction eval_momentum_derivative(const Spectrum& spec, int n, const Grid& grid) {
  check_state(spec, n);
  Spectrum single = spec;
  single.coefficients = spec.coefficients.col(n);
  single.energies = {spec.energies[n]};
  return eval_momentum_states(single, 1, grid, true).front();
}

Grid build_momentum_grid(const Spectrum& spec, int n_states, double e_max, int points) {
  if (points < 512) throw InvalidArgument("build_momentum_grid: at least 512 points required");
  const double vmin = global_minimum(spec.potential).value;
  double p_max = 1.5 * std::sqrt(std::max(e_max - vmin, 1e-6));
  const double p_limit = kHermiteArgumentLimit / std::sqrt(2.0 * momentum_sigma(spec));
  for (int iter = 0; iter < 60; ++iter) {
    const Grid probe = Grid::uniform(-p_max, p_max, 129);
    const auto states = eval_momentum_states(spec, n_states, probe);
    bool ok = true;
    for (const auto& psi : states) {
      double peak = 0.0;
      for (const auto& v : psi.values) peak = std::max(peak, std::norm(v));
      const double tail = std::max(std::norm(psi.values.front()), std::norm(psi.values.back()));
      if (tail > 1e-16 * peak) ok = false;
    }
    if (ok || p_max * 1.25 > p_limit) break;
    p_max *= 1.25;
  }
  return Grid::uniform(-p_max, p_max, points);
}

NodeCount count_nodes(const RealGridFunction& psi, const QuarticPotential& pot, double energy,
                      double rho_floor) {
  NodeCount count;
  const std::vector<double> roots = turning_points(pot, energy);
  if (roots.empty()) return count;
  const double lo = roots.front();
  const double hi = roots.back();

  const WellGeometry geo = critical_points(pot);
  const Grid& g = psi.grid;
  const double split = geo.barrier ? geo.barrier->x : std::numeric_limits<double>::infinity();

  // Probability on each side of the barrier.
  double left = 0.0;
  double total = 0.0;
  {
    std::vector<double> rho(g.points);
    for (int i = 0; i < g.points; ++i) rho[i] = psi.values[i] * psi.values[i];
    total = simpson(rho, g.dx);
    int cut = 0;
    while (cut < g.points && g[cut] < split) ++cut;
    left = cut >= 2 ? simpson(std::span<const double>(rho.data(), cut), g.dx) : 0.0;
  }
  const double p_left = total > 0.0 ? left / total : 0.0;
  const double p_right = 1.0 - p_left;

  double peak = 0.0;
  for (double v : psi.values) peak = std::max(peak, std::abs(v));
  const double noise = 1e-10 * peak;

  int prev = -1;
  for (int i = 0; i < g.points; ++i) {
    const double x = g[i];
    if (x <= lo || x >= hi) continue;
    if (std::abs(psi.values[i]) <= noise) continue;
    if (prev >= 0 && (psi.values[i] > 0.0) != (psi.values[prev] > 0.0)) {
      ++count.total;
      const double node = 0.5 * (g[i] + g[prev]);
      const double p_well = node < split ? p_left : p_right;
      if (p_well >= rho_floor) ++count.effective;
    }
    prev = i;
  }
  return count;
}

}  // namespace dwell
