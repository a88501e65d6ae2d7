#pragma once

#include <span>
#include <vector>

namespace dwell {

/// Composite Simpson rule on uniform samples. An odd number of intervals is
/// closed with the 3/8 rule on the last three. Needs at least 3 samples
/// (two samples fall back to the trapezoid).
double simpson(std::span<const double> samples, double dx);

struct GaussLegendre {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Newton on the Legendre recurrence).
GaussLegendre gauss_legendre(int n);

}  // namespace dwell
