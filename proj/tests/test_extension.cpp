#include <gtest/gtest.h>

#include <cmath>

#include "sbt/extension.hpp"

using namespace sbt;

namespace {

// b(rho) = (2 / Gamma(s/2)) (lambda rho / 2)^{s/2} K_{s/2}(lambda rho)
double bessel_mode(double s, double lambda2, double rho) {
  const double z = std::sqrt(lambda2) * rho, nu = 0.5 * s;
  return 2.0 / std::tgamma(nu) * std::pow(0.5 * z, nu) * std::cyl_bessel_k(nu, z);
}

// RK4 for b'' = lambda^2 b - (1-s)/rho b' from rho0 to rho1.
double shoot(double s, double lambda2, double rho0, double rho1, double b0, double db0, int steps) {
  auto rhs = [&](double r, double b, double db) { return lambda2 * b - (1.0 - s) / r * db; };
  double r = rho0, b = b0, db = db0;
  const double h = (rho1 - rho0) / steps;
  for (int i = 0; i < steps; ++i) {
    const double k1b = db, k1d = rhs(r, b, db);
    const double k2b = db + 0.5 * h * k1d, k2d = rhs(r + 0.5 * h, b + 0.5 * h * k1b, db + 0.5 * h * k1d);
    const double k3b = db + 0.5 * h * k2d, k3d = rhs(r + 0.5 * h, b + 0.5 * h * k2b, db + 0.5 * h * k2d);
    const double k4b = db + h * k3d, k4d = rhs(r + h, b + h * k3b, db + h * k3d);
    b += h / 6.0 * (k1b + 2 * k2b + 2 * k3b + k4b);
    db += h / 6.0 * (k1d + 2 * k2d + 2 * k3d + k4d);
    r += h;
  }
  return b;
}

double c_s_exact(double s) { return -std::pow(2.0, 1.0 - s) * std::tgamma(1.0 - 0.5 * s) / std::tgamma(0.5 * s); }

}  // namespace

TEST(Mode, BesselOracle) {
  for (double s : {0.3, 0.5, 1.0, 1.6})
    for (double l2 : {1.0, 9.0, 400.0})
      for (double rho : {1e-3, 0.05, 0.5, 1.0, 3.0}) {
        const double exact = bessel_mode(s, l2, rho);
        EXPECT_NEAR(extension_mode(s, l2, rho) / exact, 1.0, 1e-11) << s << " " << l2 << " " << rho;
      }
}

TEST(Mode, DerivativeAgainstBessel) {
  // d/dz [z^nu K_nu(z)] = -z^nu K_{nu-1}(z), K_{-mu} = K_mu
  for (double s : {0.4, 1.0, 1.5})
    for (double rho : {0.01, 0.3, 2.0}) {
      const double l2 = 4.0, lam = 2.0, z = lam * rho, nu = 0.5 * s;
      const double exact = -2.0 / std::tgamma(nu) * std::pow(0.5, nu) * std::pow(z, nu) * std::cyl_bessel_k(std::abs(nu - 1.0), z) * lam;
      EXPECT_NEAR(extension_mode_derivative(s, l2, rho) / exact, 1.0, 1e-10);
    }
}

TEST(Mode, ShootingOracle) {
  for (double s : {0.3, 0.7, 1.4}) {
    const double l2 = 9.0, r0 = 0.2, r1 = 1.5;
    const double b = shoot(s, l2, r0, r1, extension_mode(s, l2, r0), extension_mode_derivative(s, l2, r0), 4000);
    EXPECT_NEAR(extension_mode(s, l2, r1) / b, 1.0, 1e-9) << s;
  }
}

TEST(Mode, BoundaryValueAndDecay) {
  EXPECT_NEAR(extension_mode(0.5, 4.0, 1e-9), 1.0, 1e-4);
  EXPECT_EQ(extension_mode(0.5, 0.0, 3.0), 1.0);
  EXPECT_LT(extension_mode(0.5, 4.0, 10.0), 1e-7);
  EXPECT_THROW(extension_mode(2.0, 1.0, 1.0), PreconditionError);
  EXPECT_THROW(extension_mode(0.5, 1.0, 0.0), PreconditionError);
}

TEST(Residual, SecondOrderConvergence) {
  for (double s : {0.3, 0.5, 0.7})
    for (double l2 : {1.0, 9.0}) {
      const double ord = residual_order(s, l2);
      EXPECT_NEAR(ord, 2.0, 0.2) << s << " " << l2;
    }
  const ExtensionMode m = mode_table(0.6, 9.0);
  EXPECT_LT(m.max_residual, 1e-3);
  EXPECT_TRUE(std::isnan(m.residual.front()));
}

TEST(Residual, GridChecks) {
  EXPECT_THROW(mode_table(0.5, 1.0, geometric_grid(0.01, 1.0, 3)), PreconditionError);
  std::vector<double> uneven{0.1, 0.11, 0.125, 0.13};
  EXPECT_THROW(mode_table(0.5, 1.0, uneven), PreconditionError);
  const auto g = geometric_grid(0.01, 1.0, 10);
  EXPECT_LE(g.back(), 1.0);
  EXPECT_GT(g.back() * std::exp2(0.1), 1.0);
  const auto exact = geometric_grid(0.01, 0.64, 10);
  EXPECT_EQ(exact.size(), 61u);
  EXPECT_NEAR(exact.back(), 0.64, 1e-14);
}

TEST(BoundaryLimit, MatchesClosedFormConstant) {
  for (double s : {0.3, 0.5, 0.7, 1.0})
    for (double l2 : {1.0, 4.0, 9.0, 16.0}) {
      const BoundaryLimit b = boundary_limit(s, l2);
      EXPECT_NEAR(b.c_s / c_s_exact(s), 1.0, 1e-8) << s << " " << l2;
    }
}

// Property: rho^{1-s} b' / lambda^s is independent of lambda.
TEST(BoundaryLimit, ScalesLikeLambdaToTheS) {
  for (double s : {0.3, 0.5, 0.7}) {
    const double base = boundary_limit(s, 1.0).estimate;
    for (double l2 : {4.0, 9.0, 16.0, 50.0})
      EXPECT_NEAR(boundary_limit(s, l2).estimate / base, std::pow(l2, 0.5 * s), 5e-3 * std::pow(l2, 0.5 * s));
  }
}

TEST(BoundaryLimit, Preconditions) {
  EXPECT_THROW(boundary_limit(1.5, 1.0), PreconditionError);
  EXPECT_THROW(boundary_limit(0.5, 1.0, 1), PreconditionError);
  EXPECT_EQ(boundary_limit(0.5, 0.0).estimate, 0.0);
}
