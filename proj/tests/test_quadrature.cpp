#include <gtest/gtest.h>

#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <numbers>

#include "sbt/quadrature.hpp"

using namespace sbt;

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  for (int n : {2, 5, 10, 20, 40}) {
    const GaussRule& r = gauss_legendre(n);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double acc = 0.0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) acc += r.weights[i] * std::pow(r.nodes[i], p);
      const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
      EXPECT_NEAR(acc, exact, 1e-14) << "n=" << n << " p=" << p;
    }
  }
}

TEST(GaussLegendre, RejectsBadOrder) {
  EXPECT_THROW(gauss_legendre(0), PreconditionError);
  EXPECT_THROW(gauss_legendre(kMaxGaussOrder + 1), PreconditionError);
}

TEST(Adaptive, SmoothIntegrals) {
  auto r = integrate([](double x) { return std::exp(x); }, 0.0, 1.0);
  EXPECT_NEAR(r.value, std::exp(1.0) - 1.0, 1e-13);
  auto g = integrate_with_breaks([](double x) { return std::exp(-x * x); }, {-10.0, 0.0, 10.0});
  EXPECT_NEAR(g.value, std::sqrt(std::numbers::pi), 1e-12);
}

TEST(Adaptive, KinkNeedsRefinement) {
  auto r = integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0);
  EXPECT_NEAR(r.value, 0.5 * (0.09 + 0.49), 1e-10);
}

TEST(Adaptive, EndpointPowerSingularities) {
  QuadratureSpec s;
  s.rel_tol = 1e-12;
  auto one = [](double) { return 1.0; };
  EXPECT_NEAR(integrate(one, 0.0, 1.0, s.with_exponents(-0.5, 0.0)).value, 2.0, 1e-12);
  for (double a : {-0.9, -0.5, 0.3})
    for (double b : {-0.95, -0.2, 0.0, 1.7}) {
      const double exact = boost::math::beta(a + 1.0, b + 1.0);
      const double got = integrate(one, 0.0, 1.0, s.with_exponents(a, b)).value;
      EXPECT_NEAR(got / exact, 1.0, 1e-11) << a << " " << b;
    }
  // Shifted interval with a non-constant smooth part.
  const double got = integrate([](double x) { return std::cos(x); }, 1.0, 3.0, s.with_exponents(-0.98, 0.0)).value;
  auto ref = integrate([](double u) { return std::cos(1.0 + std::pow(u, 50.0)) * 50.0; }, 0.0,
                       std::pow(2.0, 0.02), s);
  EXPECT_NEAR(got, ref.value, 1e-9);
}

TEST(Adaptive, TinyOrderNearRightEnd) {
  // (1 - x)^{-0.98} e^{-x}: the weight concentrates at the right end.
  QuadratureSpec s;
  s.abs_tol = 1e-300;
  s.rel_tol = 1e-12;
  const double got = integrate([](double x) { return std::exp(-x); }, 0.0, 1.0, s.with_exponents(0.0, -0.98)).value;
  // e^{-1} int_0^1 u^{-0.98} e^{u} du, series in u.
  double series = 0.0, fact = 1.0;
  for (int k = 0; k < 40; ++k) {
    if (k) fact *= k;
    series += 1.0 / (fact * (k + 0.02));
  }
  EXPECT_NEAR(got / (std::exp(-1.0) * series), 1.0, 1e-11);
}

TEST(Adaptive, ReportsExhaustion) {
  QuadratureSpec s;
  s.max_levels = 2;
  s.rel_tol = 1e-14;
  s.abs_tol = 1e-300;
  EXPECT_THROW(integrate([](double x) { return std::sin(1.0 / (x + 1e-4)); }, 0.0, 1.0, s), QuadratureError);
}

TEST(Adaptive, ValidatesSpec) {
  QuadratureSpec s;
  EXPECT_THROW(integrate([](double) { return 1.0; }, 0.0, 1.0, s.with_exponents(-1.0, 0.0)), PreconditionError);
  EXPECT_THROW(integrate([](double) { return 1.0; }, 1.0, 0.0), PreconditionError);
  s.order = 1;
  EXPECT_THROW(integrate([](double) { return 1.0; }, 0.0, 1.0, s), PreconditionError);
}

TEST(Adaptive, TwoDimensional) {
  QuadratureSpec s;
  auto r = integrate_2d([](double x, double y) { return x * x * std::exp(y); }, 0.0, 1.0, 0.0, 2.0, s, s);
  EXPECT_NEAR(r.value, (std::exp(2.0) - 1.0) / 3.0, 1e-11);
}
