#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "dwell/basis.hpp"
#include "dwell/errors.hpp"
#include "oracles.hpp"

using namespace dwell;

namespace {

// Closed-form matrix elements for alpha x^4 - beta x^2 + gamma x, transcribed
// term by term.
double closed_form(double a, double b, double g, double s, int l, int m) {
  const double t = b + 4 * s * s;
  switch (l - m) {
    case 4: return a / (16 * s * s) * std::sqrt(double(l) * (l - 1) * (l - 2) * (l - 3));
    case 2: return (a * (2 * l - 1) - 2 * t * s) / (8 * s * s) * std::sqrt(double(l) * (l - 1));
    case 1: return g * std::sqrt(l / (4 * s));
    case 0: return 3 * a / (16 * s * s) * (2.0 * l * l + 2 * l + 1) - t * (2 * l + 1) / (4 * s) + 2 * s * (2 * l + 1);
    case -1: return g * std::sqrt((l + 1) / (4 * s));
    case -2: return (a * (2 * l + 3) - 2 * t * s) / (8 * s * s) * std::sqrt((l + 1.0) * (l + 2));
    case -4: return a / (16 * s * s) * std::sqrt((l + 1.0) * (l + 2) * (l + 3) * (l + 4));
    default: return 0.0;
  }
}

}  // namespace

TEST_CASE("optimal sigma: pure quartic with one function") {
  const auto pot = QuarticPotential::double_well(1, 0, 0);
  CHECK(optimal_sigma(pot, 1) == doctest::Approx(std::cbrt(3.0 / 8.0)).epsilon(1e-14));
}

TEST_CASE("optimal sigma matches golden-section minimization of the trace") {
  const auto pot = QuarticPotential::double_well(1, 20, 0);
  const double s = optimal_sigma(pot, 100);
  const double ref = oracle::golden_min([&](double x) { return basis_trace(pot, {100, x}); }, 1e-6, 50);
  CHECK(s == doctest::Approx(ref).epsilon(1e-7));
}

TEST_CASE("optimal sigma is a local minimum of the trace for random potentials") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ua(0.05, 5), ub(-10, 40);
  for (int t = 0; t < 100; ++t) {
    const auto pot = QuarticPotential::double_well(ua(rng), ub(rng), 1.0);
    const int n = 100;
    const double s = optimal_sigma(pot, n);
    const double tr = basis_trace(pot, {n, s});
    CHECK(tr <= basis_trace(pot, {n, s * 1.01}));
    CHECK(tr <= basis_trace(pot, {n, s * 0.99}));
    // trace stationarity
    const double h = 1e-5 * s;
    const double d = (basis_trace(pot, {n, s + h}) - basis_trace(pot, {n, s - h})) / (2 * h);
    CHECK(std::abs(d) <= 1e-8 * std::abs(tr) + 1e-6);
  }
}

TEST_CASE("harmonic limit is diagonal with eigenvalues 2 sigma (2l+1)") {
  const double s = 0.7;
  const QuarticPotential pot(0, 0, 4 * s * s, 0, 0);
  CHECK(optimal_sigma(pot, 20) == doctest::Approx(s));
  const Eigen::MatrixXd h = assemble_position(pot, {20, s});
  for (int l = 0; l < 20; ++l) {
    for (int m = 0; m < 20; ++m) {
      const double expect = l == m ? 2 * s * (2 * l + 1) : 0.0;
      CHECK(h(l, m) == doctest::Approx(expect).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("linear term element h_10 = gamma sqrt(1/(4 sigma))") {
  const Eigen::MatrixXd h = assemble_position(QuarticPotential::double_well(1, 0, 3), {10, 1.0});
  CHECK(h(1, 0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(h(0, 1) == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("ladder assembly reproduces the closed-form elements") {
  const double a = 1.3, b = 17.0, g = 2.5, s = 1.7;
  const int n = 40;
  const Eigen::MatrixXd h = assemble_position(QuarticPotential::double_well(a, b, g), {n, s});
  double worst = 0.0;
  for (int l = 0; l < n; ++l) {
    for (int m = 0; m < n; ++m) {
      worst = std::max(worst, std::abs(h(l, m) - closed_form(a, b, g, s, l, m)) /
                                  (1.0 + std::abs(h(l, m))));
    }
  }
  CHECK(worst < 1e-13);
}

TEST_CASE("matrix elements agree with Gauss-Hermite quadrature") {
  const QuarticPotential pot(0.8, -0.6, -5.0, 1.2, 0.3);
  const double s = 0.9;
  const int n = 31;
  const Eigen::MatrixXd h = assemble_position(pot, {n + 10, s});
  const auto rule = oracle::gauss_hermite(220);
  // -phi'' = (2 sigma (2m+1) - 4 sigma^2 x^2) phi for the oscillator functions.
  const double r = std::sqrt(2 * s);
  for (int l = 0; l < n; ++l) {
    for (int m = l; m < n; ++m) {
      double acc = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = rule.nodes[i] / r;
        const double pl = oracle::phi_explicit(l, s, x), pm = oracle::phi_explicit(m, s, x);
        acc += rule.weights[i] / r * pl * pm * (2 * s * (2 * m + 1) - 4 * s * s * x * x + pot(x));
      }
      CHECK(h(l, m) == doctest::Approx(acc).epsilon(1e-10).scale(1.0 + std::abs(h(l, l))));
    }
  }
}

TEST_CASE("band structure: zero beyond |l-m| = 4, odd offsets only from odd terms") {
  const Eigen::MatrixXd h = assemble_position(QuarticPotential::double_well(1, 5, 0), {30, 1.1});
  for (int l = 0; l < 30; ++l) {
    for (int m = 0; m < 30; ++m) {
      if (std::abs(l - m) > 4 || (l - m) % 2 != 0) CHECK(h(l, m) == 0.0);
    }
  }
  const Eigen::MatrixXd h3 = assemble_position(QuarticPotential(1, 0.5, -5, 0, 0), {30, 1.1});
  CHECK(h3(3, 0) != 0.0);
  CHECK(h3(4, 0) != 0.0);
  CHECK(h3(5, 0) == 0.0);
  CHECK((h3 - h3.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("momentum matrix is D h D^+ with the signs of the printed table") {
  const QuarticPotential pot = QuarticPotential::double_well(1, 0, 3);
  const BasisSpec b{10, 1.0};
  const Eigen::MatrixXd h = assemble_position(pot, b);
  const Eigen::MatrixXcd g = assemble_momentum(pot, b);
  // (l - m) = 1 carries -i h, (l - m) = -1 carries +i h
  CHECK(std::abs(g(1, 0) - std::complex<double>(0, -1.5)) < 1e-15);
  CHECK(std::abs(g(0, 1) - std::complex<double>(0, 1.5)) < 1e-15);
  CHECK(std::abs(g(2, 0) + h(2, 0)) < 1e-15);
  CHECK(std::abs(g(4, 0) - h(4, 0)) < 1e-15);

  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(10, 10);
  const std::complex<double> mi(0, -1);
  for (int l = 0; l < 10; ++l) d(l, l) = std::pow(mi, l);
  const Eigen::MatrixXcd ref = d * h.cast<std::complex<double>>() * d.adjoint();
  CHECK((g - ref).cwiseAbs().maxCoeff() <= 1e-14 * h.cwiseAbs().maxCoeff());
  CHECK((g - g.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  for (int l = 0; l < 10; ++l)
    for (int m = 0; m < 10; ++m) CHECK(std::abs(g(l, m)) == doctest::Approx(std::abs(h(l, m))));
}

TEST_CASE("symmetric potential gives a real momentum matrix with flipped |l-m|=2 signs") {
  const QuarticPotential pot = QuarticPotential::double_well(1, 8, 0);
  const Eigen::MatrixXd h = assemble_position(pot, {12, 1.0});
  const Eigen::MatrixXcd g = assemble_momentum(pot, {12, 1.0});
  CHECK(g.imag().cwiseAbs().maxCoeff() == 0.0);
  CHECK(g(2, 0).real() == -h(2, 0));
  CHECK(g(0, 0).real() == h(0, 0));
}

TEST_CASE("basis validation") {
  CHECK_THROWS_AS((BasisSpec{3, 1.0}.validate()), InvalidArgument);
  CHECK_THROWS_AS((BasisSpec{10, 0.0}.validate()), InvalidArgument);
}

TEST_CASE("position and derivative operators give exact moments of truncated vectors") {
  const double s = 1.3;
  const int n = 8;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  c(0) = 1.0;
  const Eigen::VectorXd xc = position_operator(n + 1, n, s) * c;
  CHECK(xc.squaredNorm() == doctest::Approx(1.0 / (4 * s)));
  const Eigen::VectorXd dc = derivative_operator(n + 1, n, s) * c;
  CHECK(dc.squaredNorm() == doctest::Approx(s));
}
