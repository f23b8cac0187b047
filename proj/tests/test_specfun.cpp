#include <gtest/gtest.h>

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "sbt/specfun.hpp"

using namespace sbt;

namespace {

// Midpoint rule after r = u^4, which makes the integrand smooth when 4g - 1 is a
// nonnegative integer, followed by one Richardson step.
double truncated_gamma_midpoint(double t, double g, double a, int n) {
  auto mid = [&](int m) {
    const double U = std::pow(t, 0.25), h = U / m;
    double acc = 0.0;
    for (int j = 0; j < m; ++j) {
      const double u = (j + 0.5) * h;
      acc += 4.0 * std::pow(u, 4.0 * g - 1.0) * std::exp(-a * u * u * u * u);
    }
    return acc * h / std::tgamma(g);
  };
  return (4.0 * mid(2 * n) - mid(n)) / 3.0;
}

double laguerre_explicit(int k, double alpha, double x) {
  double acc = 0.0, xp = 1.0, fact = 1.0;
  for (int j = 0; j <= k; ++j) {
    if (j) {
      xp *= x;
      fact *= j;
    }
    // binom(k + alpha, k - j) for real alpha
    const double binom = std::tgamma(k + alpha + 1.0) / (std::tgamma(k - j + 1.0) * std::tgamma(alpha + j + 1.0));
    acc += (j % 2 ? -1.0 : 1.0) * binom * xp / fact;
  }
  return acc;
}

}  // namespace

TEST(TruncatedGamma, MidpointOracle) {
  const double v = truncated_gamma(1.0, 0.75, 9.0);
  EXPECT_NEAR(v / truncated_gamma_midpoint(1.0, 0.75, 9.0, 5000), 1.0, 1e-8);
}

TEST(TruncatedGamma, IncompleteGammaOracle) {
  for (double g : {0.02, 0.25, 0.5, 1.0, 1.5, 2.0, 3.5})
    for (double t : {0.1, 0.5, 1.0, 2.0})
      for (double a : {0.1, 1.0, 2.5, 9.0, 100.0, 400.0, 1e5}) {
        const double exact = std::pow(a, -g) * boost::math::gamma_p(g, a * t);
        EXPECT_NEAR(truncated_gamma(t, g, a) / exact, 1.0, 1e-12) << g << " " << t << " " << a;
      }
}

TEST(TruncatedGamma, ZeroRateClosedForm) {
  EXPECT_NEAR(truncated_gamma(2.0, 1.5, 0.0), std::pow(2.0, 1.5) / std::tgamma(2.5), 1e-15);
}

TEST(TruncatedGamma, Preconditions) {
  EXPECT_THROW(truncated_gamma(0.0, 1.0, 1.0), PreconditionError);
  EXPECT_THROW(truncated_gamma(1.0, 0.0, 1.0), PreconditionError);
  EXPECT_THROW(truncated_gamma(1.0, 1.0, -1.0), PreconditionError);
}

// Property: decreasing in a, increasing in t, lambda^{2g} tg -> 1 from below.
TEST(TruncatedGamma, MonotoneProperties) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> ug(0.05, 2.0), ut(0.05, 3.0), ua(0.0, 50.0);
  for (int i = 0; i < 200; ++i) {
    const double g = ug(gen), t = ut(gen), a = ua(gen);
    EXPECT_GT(truncated_gamma(t, g, a), truncated_gamma(t, g, a + 0.5));
    EXPECT_LE(truncated_gamma(t, g, a), truncated_gamma(t + 0.1, g, a));
    const double scaled = std::pow(a, g) * truncated_gamma(t, g, a);
    EXPECT_LE(scaled, 1.0 + 1e-15);
    EXPECT_GT(scaled, 0.0);
  }
}

TEST(RiemannLiouville, Monomials) {
  // RL_order[r^p](t) = Gamma(p+1)/Gamma(p+1+order) t^{p+order}
  for (double order : {0.02, 0.5, 1.0, 2.3})
    for (double p : {0.0, 1.0, 2.5}) {
      auto f = [p](double r) { return std::pow(r, p); };
      const double t = 0.7;
      const double exact = std::tgamma(p + 1.0) / std::tgamma(p + 1.0 + order) * std::pow(t, p + order);
      QuadratureSpec s;
      s.abs_tol = 1e-300;
      s.rel_tol = 1e-13;
      EXPECT_NEAR(riemann_liouville(f, t, order, s).value / exact, 1.0, 1e-11) << order << " " << p;
    }
}

TEST(RiemannLiouville, LeftExponent) {
  // (1/Gamma(q)) int_0^t (t-r)^{q-1} r^{-1/2} dr = Gamma(1/2) t^{q-1/2} / Gamma(q+1/2)
  for (double q : {0.05, 0.5, 2.0}) {
    const double t = 1.3;
    const double exact = std::sqrt(std::numbers::pi) * std::pow(t, q - 0.5) / std::tgamma(q + 0.5);
    const double got = riemann_liouville([](double) { return 1.0; }, t, q, QuadratureSpec{}, -0.5).value;
    EXPECT_NEAR(got / exact, 1.0, 1e-10);
  }
}

TEST(RiemannLiouville, FixedRuleMatchesAdaptive) {
  for (double order : {0.02, 0.5, 1.5})
    for (double left : {0.0, -0.5}) {
      const FixedRule rule = riemann_liouville_rule(0.8, order, left);
      for (double lam : {0.0, 1.0, 10.0}) {
        auto f = [lam](double r) { return std::exp(-lam * r) / (1.0 + r); };
        QuadratureSpec s;
        s.abs_tol = 1e-300;
        s.rel_tol = 1e-13;
        const double ref = riemann_liouville(f, 0.8, order, s, left).value;
        EXPECT_NEAR(rule(f) / ref, 1.0, 1e-12) << order << " " << left << " " << lam;
      }
    }
}

TEST(Laguerre, ExplicitSum) {
  for (int k = 0; k <= 10; ++k)
    for (double alpha : {0.0, 1.0, 2.5})
      for (double x : {-3.0, -0.5, 0.0, 0.7, 4.0})
        EXPECT_NEAR(laguerre_poly(k, alpha, x), laguerre_explicit(k, alpha, x),
                    1e-11 * std::max(1.0, std::abs(laguerre_explicit(k, alpha, x))))
            << k << " " << alpha << " " << x;
}

TEST(Hermite, ExplicitH3AndNormalization) {
  for (cplx z : {cplx(0.3, 0.0), cplx(-1.2, 0.4), cplx(0.5, -0.8)}) {
    const cplx h3 = 8.0 * z * z * z - 12.0 * z;
    const cplx expect = h3 * std::exp(-0.5 * z * z) / std::sqrt(8.0 * 6.0 * std::sqrt(std::numbers::pi));
    EXPECT_NEAR(std::abs(hermite_fn(3, z) - expect), 0.0, 1e-14);
  }
}

TEST(Hermite, Orthonormal) {
  QuadratureSpec s;
  s.rel_tol = 1e-13;
  s.abs_tol = 1e-14;
  for (int j = 0; j <= 6; ++j)
    for (int k = j; k <= 6; ++k) {
      auto f = [&](double x) {
        const auto phi = hermite_functions(6, x);
        return (phi[j] * phi[k]).real();
      };
      const double v = integrate_with_breaks(f, {-20.0, 0.0, 20.0}, s).value;
      EXPECT_NEAR(v, j == k ? 1.0 : 0.0, 1e-12);
    }
}

TEST(Hermite, OverflowGuard) { EXPECT_THROW(hermite_fn(2, cplx(0.0, 40.0)), RangeError); }
