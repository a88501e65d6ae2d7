#include "dwell/phase_space.hpp"

#include <cmath>
#include <numbers>

#include "dwell/errors.hpp"
#include "dwell/quadrature.hpp"

namespace dwell {

namespace {

struct Interval {
  double a;
  double b;
  bool allowed;
};

std::vector<Interval> intervals(const QuarticPotential& pot, double energy) {
  const std::vector<double> roots = turning_points(pot, energy);
  std::vector<Interval> out;
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
    const double a = roots[i];
    const double b = roots[i + 1];
    if (!(b > a)) continue;  // tangency
    out.push_back({a, b, pot(0.5 * (a + b)) < energy});
  }
  return out;
}

// V - E divided by (x - a)(x - b); coefficients highest degree first.
std::vector<double> deflate(const QuarticPotential& pot, double energy, double a, double b) {
  std::vector<double> c = {pot.c4(), pot.c3(), pot.c2(), pot.c1(), pot.c0() - energy};
  while (c.size() > 1 && c.front() == 0.0) c.erase(c.begin());
  for (double r : {a, b}) {
    std::vector<double> q(c.size() - 1);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
      acc = acc * r + c[i];
      q[i] = acc;
    }
    c = q;
  }
  return c;
}

double horner(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (double ci : c) v = v * x + ci;
  return v;
}

double sqrt_integral(const QuarticPotential& pot, double energy, double a, double b,
                     const GaussLegendre& rule) {
  const std::vector<double> q = deflate(pot, energy, a, b);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double h = 0.5 * std::numbers::pi;
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = h * rule.nodes[i];
    const double c = std::cos(t);
    const double x = mid + half * std::sin(t);
    sum += rule.weights[i] * half * half * c * c * std::sqrt(std::abs(horner(q, x)));
  }
  return h * sum;
}

Lobe sample_lobe(const QuarticPotential& pot, double energy, double a, double b, int points) {
  Lobe lobe{a, b, std::vector<double>(points), std::vector<double>(points)};
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int j = 0; j < points; ++j) {
    const double t = -0.5 * std::numbers::pi + std::numbers::pi * j / (points - 1);
    const double x = j == 0 ? a : (j == points - 1 ? b : mid + half * std::sin(t));
    lobe.x[j] = x;
    lobe.p[j] = std::sqrt(std::max(energy - pot(x), 0.0));
  }
  return lobe;
}

}  // namespace

PhaseSpaceResult area(const QuarticPotential& pot, double energy, int nodes, int contour_points) {
  if (nodes < 2 || contour_points < 2) throw InvalidArgument("area: too few nodes");
  const GaussLegendre rule = gauss_legendre(nodes);
  PhaseSpaceResult r;
  const std::vector<Interval> parts = intervals(pot, energy);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Interval& iv = parts[i];
    if (iv.allowed) {
      r.allowed_action += 2.0 * sqrt_integral(pot, energy, iv.a, iv.b, rule);
      r.lobes.push_back(sample_lobe(pot, energy, iv.a, iv.b, contour_points));
    } else if (i > 0 && i + 1 < parts.size()) {
      r.barrier_action += sqrt_integral(pot, energy, iv.a, iv.b, rule);
    }
  }
  r.lobe_count = static_cast<int>(r.lobes.size());
  return r;
}

std::vector<Lobe> lobe_structure(const QuarticPotential& pot, double energy, int contour_points) {
  std::vector<Lobe> lobes;
  for (const Interval& iv : intervals(pot, energy)) {
    if (iv.allowed) lobes.push_back(sample_lobe(pot, energy, iv.a, iv.b, contour_points));
  }
  return lobes;
}

}  // namespace dwell
