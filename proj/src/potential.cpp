#include "dwell/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/roots.hpp>

#include "dwell/errors.hpp"

namespace dwell {

QuarticPotential::QuarticPotential(double c4, double c3, double c2, double c1, double c0)
    : c4_(c4), c3_(c3), c2_(c2), c1_(c1), c0_(c0) {
  const bool finite = std::isfinite(c4) && std::isfinite(c3) && std::isfinite(c2) &&
                      std::isfinite(c1) && std::isfinite(c0);
  const bool confining = c4 > 0.0 || (c4 == 0.0 && c3 == 0.0 && c2 > 0.0);
  if (!finite || !confining) {
    throw InvalidArgument("quartic potential must be finite and confining (c4 > 0)");
  }
}

QuarticPotential QuarticPotential::double_well(double alpha, double beta, double gamma,
                                               double v0) {
  return {alpha, 0.0, -beta, gamma, v0};
}

namespace {

double cubic_value(double a, double b, double c, double d, double x) {
  return ((a * x + b) * x + c) * x + d;
}

double polish_cubic_root(double a, double b, double c, double d, double x) {
  for (int it = 0; it < 4; ++it) {
    const double f = cubic_value(a, b, c, d, x);
    const double df = (3.0 * a * x + 2.0 * b) * x + c;
    if (f == 0.0 || df == 0.0) break;
    const double next = x - f / df;
    if (std::abs(cubic_value(a, b, c, d, next)) >= std::abs(f)) break;
    x = next;
  }
  return x;
}

}  // namespace

std::vector<double> cubic_real_roots(double a, double b, double c, double d) {
  if (a == 0.0) throw InvalidArgument("cubic_real_roots: leading coefficient is zero");
  const double B = b / a;
  const double C = c / a;
  const double D = d / a;
  // x = t - B/3 gives t^3 + p t + q = 0
  const double shift = B / 3.0;
  const double p = C - B * B / 3.0;
  const double q = 2.0 * B * B * B / 27.0 - B * C / 3.0 + D;
  const double disc = 0.25 * q * q + p * p * p / 27.0;

  std::vector<double> roots;
  if (p == 0.0 && q == 0.0) {
    roots.assign(3, -shift);
  } else if (disc > 0.0) {
    const double s = std::sqrt(disc);
    const double u = std::cbrt(-0.5 * q - std::copysign(s, q));
    const double t = (u != 0.0) ? u - p / (3.0 * u) : 0.0;
    roots.push_back(t - shift);
  } else {
    const double r = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
    const double phi = std::acos(arg);
    for (int k = 0; k < 3; ++k) {
      roots.push_back(r * std::cos((phi - 2.0 * std::numbers::pi * k) / 3.0) - shift);
    }
  }
  for (double& x : roots) x = polish_cubic_root(a, b, c, d, x);
  std::sort(roots.begin(), roots.end());
  return roots;
}

WellGeometry critical_points(const QuarticPotential& pot) {
  WellGeometry geo;
  if (pot.c4() == 0.0) {
    const double x = -pot.c1() / (2.0 * pot.c2());
    geo.minima.push_back({x, pot(x)});
    geo.deeper_well_side = WellSide::Symmetric;
    return geo;
  }

  std::vector<double> roots =
      cubic_real_roots(4.0 * pot.c4(), 3.0 * pot.c3(), 2.0 * pot.c2(), pot.c1());

  // Merge numerically coincident roots. An even-sized cluster is a stationary
  // inflection (no sign change of V'), so it is dropped.
  double scale = 1.0;
  for (double r : roots) scale = std::max(scale, std::abs(r));
  const double merge_tol = 1e-7 * scale;
  std::vector<double> extrema;
  for (std::size_t i = 0; i < roots.size();) {
    std::size_t j = i + 1;
    while (j < roots.size() && roots[j] - roots[j - 1] <= merge_tol) ++j;
    const std::size_t count = j - i;
    if (count % 2 == 1) {
      double mean = 0.0;
      for (std::size_t k = i; k < j; ++k) mean += roots[k];
      extrema.push_back(mean / static_cast<double>(count));
    }
    i = j;
  }

  if (extrema.size() == 3) {
    geo.minima.push_back({extrema[0], pot(extrema[0])});
    geo.barrier = Extremum{extrema[1], pot(extrema[1])};
    geo.minima.push_back({extrema[2], pot(extrema[2])});
    const double v1 = geo.minima[0].value;
    const double v2 = geo.minima[1].value;
    if (std::abs(v1 - v2) <= 1e-12 * (1.0 + std::abs(v1))) {
      geo.deeper_well_side = WellSide::Symmetric;
    } else {
      geo.deeper_well_side = v1 < v2 ? WellSide::Left : WellSide::Right;
    }
  } else {
    // With c4 > 0 a single surviving extremum is the minimum.
    const double x = extrema.empty() ? roots.front() : extrema.front();
    geo.minima.push_back({x, pot(x)});
    geo.deeper_well_side = WellSide::Symmetric;
  }
  return geo;
}

namespace {

double polish_quartic_root(const QuarticPotential& pot, double energy, double x) {
  for (int it = 0; it < 3; ++it) {
    const double f = pot(x) - energy;
    const double df = pot.derivative(x);
    if (f == 0.0 || df == 0.0) break;
    const double next = x - f / df;
    if (std::abs(pot(next) - energy) >= std::abs(f)) break;
    x = next;
  }
  return x;
}

double bracketed_root(const QuarticPotential& pot, double energy, double lo, double hi) {
  auto f = [&](double x) { return pot(x) - energy; };
  std::uintmax_t max_iter = 200;
  auto tol = boost::math::tools::eps_tolerance<double>(52);
  auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, f(lo), f(hi), tol, max_iter);
  return polish_quartic_root(pot, energy, 0.5 * (a + b));
}

}  // namespace

std::vector<double> turning_points(const QuarticPotential& pot, double energy) {
  const WellGeometry geo = critical_points(pot);

  std::vector<double> nodes;  // extrema in ascending order
  nodes.push_back(geo.minima.front().x);
  if (geo.barrier) {
    nodes.push_back(geo.barrier->x);
    nodes.push_back(geo.minima.back().x);
  }

  const double tangent_tol = 1e-12 * (1.0 + std::abs(energy));
  std::vector<double> residual(nodes.size());
  std::vector<double> roots;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    residual[i] = pot(nodes[i]) - energy;
    if (std::abs(residual[i]) <= tangent_tol) {
      residual[i] = 0.0;
      roots.push_back(nodes[i]);
      roots.push_back(nodes[i]);
    }
  }

  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (residual[i] * residual[i + 1] < 0.0) {
      roots.push_back(bracketed_root(pot, energy, nodes[i], nodes[i + 1]));
    }
  }

  // Outer branches: V - E grows without bound away from the outermost extrema.
  auto outer = [&](double start, double f_start, double direction) {
    if (!(f_start < 0.0)) return;
    double step = std::max(1.0, std::abs(start));
    double far = start + direction * step;
    while (pot(far) - energy <= 0.0) {
      step *= 2.0;
      far = start + direction * step;
    }
    const double lo = std::min(start, far);
    const double hi = std::max(start, far);
    roots.push_back(bracketed_root(pot, energy, lo, hi));
  };
  outer(nodes.front(), residual.front(), -1.0);
  outer(nodes.back(), residual.back(), +1.0);

  std::sort(roots.begin(), roots.end());
  return roots;
}

QuarticPotential mirror(const QuarticPotential& pot) {
  return {pot.c4(), -pot.c3(), pot.c2(), -pot.c1(), pot.c0()};
}

Extremum global_minimum(const QuarticPotential& pot) {
  const WellGeometry geo = critical_points(pot);
  return *std::min_element(geo.minima.begin(), geo.minima.end(),
                           [](const Extremum& a, const Extremum& b) { return a.value < b.value; });
}

QuarticPotential zero_minimum(const QuarticPotential& pot) {
  return pot.shifted(-global_minimum(pot).value);
}

}  // namespace dwell
