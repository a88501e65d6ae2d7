#include "dwell/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "dwell/errors.hpp"

namespace dwell {

double simpson(std::span<const double> f, double dx) {
  const std::size_t n = f.size();
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * dx * (f[0] + f[1]);
  if (n == 3) return dx / 3.0 * (f[0] + 4.0 * f[1] + f[2]);

  const std::size_t intervals = n - 1;
  std::size_t simpson_end = intervals;  // index of the last sample covered by Simpson
  double tail = 0.0;
  if (intervals % 2 == 1) {
    simpson_end = intervals - 3;
    tail = 3.0 * dx / 8.0 *
           (f[simpson_end] + 3.0 * f[simpson_end + 1] + 3.0 * f[simpson_end + 2] + f[simpson_end + 3]);
  }
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i < simpson_end; ++i) {
    (i % 2 == 1 ? odd : even) += f[i];
  }
  const double body = simpson_end == 0
                          ? 0.0
                          : dx / 3.0 * (f[0] + 4.0 * odd + 2.0 * even + f[simpson_end]);
  return body + tail;
}

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("gauss_legendre: need at least one node");
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      const double pn = n == 1 ? x : p1;
      dp = n * (x * pn - p0) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace dwell
