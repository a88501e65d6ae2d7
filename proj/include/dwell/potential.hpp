#pragma once

#include <optional>
#include <vector>

namespace dwell {

/// V(x) = c4 x^4 + c3 x^3 + c2 x^2 + c1 x + c0.
///
/// Always confining: either c4 > 0, or the pure harmonic case c4 = c3 = 0
/// with c2 > 0. The constructor throws InvalidArgument otherwise.
class QuarticPotential {
 public:
  QuarticPotential(double c4, double c3, double c2, double c1, double c0);

  /// alpha x^4 - beta x^2 + gamma x + v0.
  static QuarticPotential double_well(double alpha, double beta, double gamma,
                                      double v0 = 0.0);

  double c4() const { return c4_; }
  double c3() const { return c3_; }
  double c2() const { return c2_; }
  double c1() const { return c1_; }
  double c0() const { return c0_; }

  double operator()(double x) const {
    return (((c4_ * x + c3_) * x + c2_) * x + c1_) * x + c0_;
  }
  double derivative(double x) const {
    return ((4.0 * c4_ * x + 3.0 * c3_) * x + 2.0 * c2_) * x + c1_;
  }
  double second_derivative(double x) const {
    return (12.0 * c4_ * x + 6.0 * c3_) * x + 2.0 * c2_;
  }

  /// True when V(-x) = V(x) exactly.
  bool is_even() const { return c3_ == 0.0 && c1_ == 0.0; }

  QuarticPotential shifted(double dv) const {
    return {c4_, c3_, c2_, c1_, c0_ + dv};
  }

  friend bool operator==(const QuarticPotential&, const QuarticPotential&) = default;

 private:
  double c4_, c3_, c2_, c1_, c0_;
};

struct Extremum {
  double x;
  double value;
};

enum class WellSide { Left, Right, Symmetric };

struct WellGeometry {
  std::vector<Extremum> minima;    // ascending x, one or two entries
  std::optional<Extremum> barrier;  // present iff two minima
  WellSide deeper_well_side = WellSide::Symmetric;

  bool is_double_well() const { return barrier.has_value(); }
};

/// Local minima and the barrier maximum of V (roots of V').
WellGeometry critical_points(const QuarticPotential& pot);

/// Sorted real roots of V(x) = E, counted with multiplicity (0, 2 or 4).
std::vector<double> turning_points(const QuarticPotential& pot, double energy);

/// x -> -x.
QuarticPotential mirror(const QuarticPotential& pot);

/// Global minimum of V.
Extremum global_minimum(const QuarticPotential& pot);

/// Copy of pot shifted so that its global minimum is exactly zero.
QuarticPotential zero_minimum(const QuarticPotential& pot);

/// Real roots of a x^3 + b x^2 + c x + d (a != 0), ascending, Newton-polished.
/// A numerically double root is returned twice.
std::vector<double> cubic_real_roots(double a, double b, double c, double d);

}  // namespace dwell
