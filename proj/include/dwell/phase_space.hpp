#pragma once

#include <vector>

#include "dwell/potential.hpp"

namespace dwell {

/// One classically allowed interval [x_lo, x_hi] with its upper contour
/// p(x) = sqrt(E - V(x)); the lower half is the mirror image -p(x).
struct Lobe {
  double x_lo = 0.0;
  double x_hi = 0.0;
  std::vector<double> x;
  std::vector<double> p;
};

struct PhaseSpaceResult {
  double barrier_action = 0.0;  // int sqrt(V - E) over forbidden gaps between allowed lobes
  double allowed_action = 0.0;  // 2 int sqrt(E - V) over allowed intervals
  std::vector<Lobe> lobes;
  int lobe_count = 0;
};

inline constexpr int kPhaseSpaceNodes = 64;
inline constexpr int kContourPoints = 512;

/// Both action integrals between exact turning points. Between roots a < b
/// the integrand sqrt|V - E| factors as sqrt((x-a)(b-x)) sqrt|q(x)| with q the
/// deflated quotient; x = mid + half sin(t) turns the first factor into
/// half cos(t) and leaves a smooth Gauss-Legendre integrand.
PhaseSpaceResult area(const QuarticPotential& pot, double energy, int nodes = kPhaseSpaceNodes,
                      int contour_points = kContourPoints);

/// Allowed intervals with sampled contours (no action integrals).
std::vector<Lobe> lobe_structure(const QuarticPotential& pot, double energy,
                                 int contour_points = kContourPoints);

}  // namespace dwell
