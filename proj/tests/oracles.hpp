#pragma once
// Independent reference computations used only by the tests.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;  // already multiplied by exp(y^2): integrates f(y) dy
};

/// Gauss-Hermite nodes from the Golub-Welsch Jacobi matrix. The returned
/// weights integrate f(y) directly (not f(y) exp(-y^2)): they are the
/// Christoffel numbers 1 / sum_k psi_k(y_i)^2 of the Hermite functions,
/// evaluated from the three-term recurrence in plain double loops.
inline Rule gauss_hermite(int n) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) j(i, i - 1) = j(i - 1, i) = std::sqrt(i / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  Rule r;
  for (int i = 0; i < n; ++i) {
    const double y = es.eigenvalues()(i);
    double p0 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * y * y);
    double p1 = std::sqrt(2.0) * y * p0;
    double sum = p0 * p0 + p1 * p1;
    for (int k = 1; k + 1 < n; ++k) {
      const double p2 = std::sqrt(2.0 / (k + 1)) * y * p1 - std::sqrt(double(k) / (k + 1)) * p0;
      p0 = p1;
      p1 = p2;
      sum += p2 * p2;
    }
    r.nodes.push_back(y);
    r.weights.push_back(1.0 / sum);
  }
  return r;
}

/// phi_l(x; sigma) by the explicit Hermite polynomial recurrence
/// H_{l+1} = 2y H_l - 2l H_{l-1}, normalized with lgamma; independent of the
/// library's normalized recurrence. Good to l ~ 60 for |y| < 12.
inline double phi_explicit(int l, double sigma, double x) {
  const double y = std::sqrt(2.0 * sigma) * x;
  double h0 = 1.0, h1 = 2.0 * y;
  double h = l == 0 ? h0 : h1;
  for (int k = 1; k < l; ++k) {
    h = 2.0 * y * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h;
  }
  const double log_norm = 0.5 * (l * std::log(2.0) + std::lgamma(l + 1.0) + 0.5 * std::log(std::numbers::pi));
  return std::pow(2.0 * sigma, 0.25) * h * std::exp(-0.5 * y * y - log_norm);
}

/// Golden-section minimization on [a, b].
inline double golden_min(const std::function<double(double)>& f, double a, double b, int iters = 200) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters; ++i) {
    if (fc < fd) {
      b = d; d = c; fd = fc; c = b - r * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd; d = a + r * (b - a); fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

/// Sign changes of f on a uniform scan of [a, b], refined by bisection.
inline std::vector<double> scan_roots(const std::function<double(double)>& f, double a, double b, int n = 200000) {
  std::vector<double> roots;
  double x0 = a, f0 = f(a);
  for (int i = 1; i <= n; ++i) {
    const double x1 = a + (b - a) * i / n;
    const double f1 = f(x1);
    if ((f0 < 0) != (f1 < 0)) {
      double lo = x0, hi = x1, flo = f0;
      for (int k = 0; k < 200; ++k) {
        const double m = 0.5 * (lo + hi);
        const double fm = f(m);
        if ((fm < 0) == (flo < 0)) { lo = m; flo = fm; } else { hi = m; }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

/// Unitary Fourier transform (2 pi)^{-1/2} int psi(x) exp(-i p x) dx by the
/// trapezoid rule on the samples.
inline std::complex<double> fourier(const std::vector<double>& x, const std::vector<double>& psi, double p) {
  std::complex<double> sum = 0.0;
  const double dx = x[1] - x[0];
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = (i == 0 || i + 1 == x.size()) ? 0.5 : 1.0;
    sum += w * psi[i] * std::exp(std::complex<double>(0.0, -p * x[i]));
  }
  return sum * dx / std::sqrt(2.0 * std::numbers::pi);
}

/// Fourth-order central difference of samples (one-sided at the ends).
inline std::vector<double> five_point_derivative(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
  }
  d[0] = (f[1] - f[0]) / h;
  d[1] = (f[2] - f[0]) / (2.0 * h);
  d[n - 2] = (f[n - 1] - f[n - 3]) / (2.0 * h);
  d[n - 1] = (f[n - 1] - f[n - 2]) / h;
  return d;
}

inline double trapezoid(const std::vector<double>& f, double h) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += (i == 0 || i + 1 == f.size() ? 0.5 : 1.0) * f[i];
  return s * h;
}

}  // namespace oracle
