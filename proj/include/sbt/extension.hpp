#pragma once

// Per-mode solution of the extension problem
//     (Delta + d^2/drho^2 + (1-s)/rho d/drho) u = 0,  u(., 0) = f.
// For a frequency lambda the mode is b(rho), normalized so b(0+) = 1:
//     b(rho) = (1/Gamma(s/2)) int_0^inf v^{s/2-1} e^{-v - c/v} dv,  c = lambda^2 rho^2 / 4.

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "sbt/errors.hpp"
#include "sbt/quadrature.hpp"
#include "sbt/report.hpp"
#include "sbt/specfun.hpp"

namespace sbt {

namespace detail {

inline void check_extension_args(double s, double lambda2, double rho) {
  if (!(s > 0.0 && s < 2.0)) throw PreconditionError("extension: s must lie in (0, 2)");
  if (!(lambda2 >= 0.0)) throw PreconditionError("extension: lambda^2 must be nonnegative");
  if (!(rho > 0.0)) throw PreconditionError("extension: rho must be positive");
}

// int_0^inf v^{p-1} e^{-v - c/v} dv in x = ln v, c > 0.
inline double bessel_type_integral(double p, double c) {
  const double sc = std::sqrt(c);
  const double lo = std::log(c / (2.0 * sc + 60.0));
  const double hi = std::log(2.0 * sc + 60.0);
  // Peak of the integrand in x.
  const double peak = std::log(0.5 * ((p) + std::sqrt(p * p + 4.0 * c)));
  auto f = [p, c](double x) {
    const double v = std::exp(x);
    return std::exp(p * x - v - c / v);
  };
  QuadratureSpec q;
  q.abs_tol = 1e-300;
  q.rel_tol = 1e-14;
  q.max_levels = 30;
  std::vector<double> pts{lo, hi};
  if (peak > lo && peak < hi) pts.insert(pts.begin() + 1, peak);
  return integrate_with_breaks(f, pts, q).value;
}

// Below this c the mode equals its rho -> 0 asymptote to double precision.
inline constexpr double kTinyC = 1e-280;

}  // namespace detail

/// b(rho) for frequency lambda^2.
inline double extension_mode(double s, double lambda2, double rho) {
  detail::check_extension_args(s, lambda2, rho);
  if (lambda2 == 0.0) return 1.0;
  const double c = 0.25 * lambda2 * rho * rho;
  if (c < detail::kTinyC) return 1.0;
  return detail::bessel_type_integral(0.5 * s, c) / gamma_fn(0.5 * s);
}

/// db/drho = -(lambda^2 rho / (2 Gamma(s/2))) int v^{s/2-2} e^{-v-c/v} dv.
inline double extension_mode_derivative(double s, double lambda2, double rho) {
  detail::check_extension_args(s, lambda2, rho);
  if (lambda2 == 0.0) return 0.0;
  const double c = 0.25 * lambda2 * rho * rho;
  if (c < detail::kTinyC) throw RangeError("extension_mode_derivative: rho too small");
  return -0.5 * lambda2 * rho * detail::bessel_type_integral(0.5 * s - 1.0, c) / gamma_fn(0.5 * s);
}

/// rho_min * 2^{j / points_per_octave}, j = 0, 1, ..., up to rho_max (inclusive when it lands on the grid).
inline std::vector<double> geometric_grid(double rho_min, double rho_max, int points_per_octave) {
  if (!(rho_min > 0.0) || !(rho_max > rho_min)) throw PreconditionError("geometric_grid: need 0 < rho_min < rho_max");
  if (points_per_octave < 1) throw PreconditionError("geometric_grid: points per octave must be positive");
  const int n = static_cast<int>(std::floor(points_per_octave * std::log2(rho_max / rho_min) + 1e-9));
  std::vector<double> g(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) g[j] = rho_min * std::exp2(double(j) / points_per_octave);
  return g;
}

struct ExtensionMode {
  double s = 0.5;
  double lambda2 = 1.0;
  std::vector<double> rho;
  std::vector<double> b;
  std::vector<double> residual;  // NaN at the two end points
  double max_residual = 0.0;
  double h = 0.0;                // log-grid step
};

/// Tabulates b on a geometric grid and its finite-difference ODE residual.
///
/// The residual is the equation multiplied by rho^2 and written in x = ln rho,
///     b_xx - s b_x - lambda^2 rho^2 b,
/// with central differences; the grid must have at least 5 points per octave.
inline ExtensionMode mode_table(double s, double lambda2, const std::vector<double>& rho) {
  if (rho.size() < 3) throw PreconditionError("mode_table: need at least three grid points");
  ExtensionMode m;
  m.s = s;
  m.lambda2 = lambda2;
  m.rho = rho;
  m.h = std::log(rho[1] / rho[0]);
  if (m.h > std::log(2.0) / 5.0 + 1e-12) throw PreconditionError("mode_table: grid coarser than 5 points per octave");
  for (std::size_t j = 2; j < rho.size(); ++j)
    if (std::abs(std::log(rho[j] / rho[j - 1]) - m.h) > 1e-9 * m.h)
      throw PreconditionError("mode_table: grid must be geometric");
  m.b.resize(rho.size());
  for (std::size_t j = 0; j < rho.size(); ++j) m.b[j] = extension_mode(s, lambda2, rho[j]);
  m.residual.assign(rho.size(), std::numeric_limits<double>::quiet_NaN());
  const double h2 = m.h * m.h;
  for (std::size_t j = 1; j + 1 < rho.size(); ++j) {
    const double bx = (m.b[j + 1] - m.b[j - 1]) / (2.0 * m.h);
    const double bxx = (m.b[j + 1] - 2.0 * m.b[j] + m.b[j - 1]) / h2;
    m.residual[j] = bxx - s * bx - lambda2 * rho[j] * rho[j] * m.b[j];
    m.max_residual = std::max(m.max_residual, std::abs(m.residual[j]));
  }
  return m;
}

inline ExtensionMode mode_table(double s, double lambda2, double rho_min = 1e-2, double rho_max = 1.0,
                                int points_per_octave = 20) {
  return mode_table(s, lambda2, geometric_grid(rho_min, rho_max, points_per_octave));
}

/// Max residual on the default grid.
inline double ode_residual(double s, double lambda2, const std::vector<double>& rho) {
  return mode_table(s, lambda2, rho).max_residual;
}

/// Observed order of the residual between `ppo` and `2 ppo` points per octave.
inline double residual_order(double s, double lambda2, int ppo = 20, double rho_min = 1e-2, double rho_max = 1.0) {
  const double r1 = mode_table(s, lambda2, rho_min, rho_max, ppo).max_residual;
  const double r2 = mode_table(s, lambda2, rho_min, rho_max, 2 * ppo).max_residual;
  return std::log2(r1 / r2);
}

struct BoundaryLimit {
  double estimate = 0.0;  // lim rho^{1-s} b'(rho)
  double c_s = std::numeric_limits<double>::quiet_NaN();  // estimate / lambda^s
  double error = 0.0;     // difference between the last two extrapolation levels
  int levels = 0;
};

/// Richardson extrapolation of rho^{1-s} b'(rho) as rho -> 0 on rho_j = rho_0 2^{-j}.
/// The correction exponents are 2-s, 2, 4-s, 4, ...
inline BoundaryLimit boundary_limit(double s, double lambda2, int levels = 8, double rel_tol = 1e-8) {
  if (!(s > 0.0 && s <= 1.0)) throw PreconditionError("boundary_limit: s must lie in (0, 1]");
  if (!(lambda2 >= 0.0)) throw PreconditionError("boundary_limit: lambda^2 must be nonnegative");
  if (levels < 2) throw PreconditionError("boundary_limit: need at least two levels");
  BoundaryLimit out;
  out.levels = levels;
  if (lambda2 == 0.0) return out;
  const double rho0 = 0.5 / std::sqrt(lambda2);
  std::vector<double> T(levels);
  for (int j = 0; j < levels; ++j) {
    const double rho = rho0 * std::exp2(-j);
    T[j] = std::pow(rho, 1.0 - s) * extension_mode_derivative(s, lambda2, rho);
  }
  std::vector<double> exps;
  for (int k = 1; static_cast<int>(exps.size()) < levels - 1; ++k) {
    exps.push_back(2.0 * k - s);
    exps.push_back(2.0 * k);
  }
  double best = T.back();
  for (int k = 0; k < levels - 1; ++k) {
    const double f = std::exp2(exps[k]);
    for (std::size_t j = 0; j + 1 < T.size(); ++j) T[j] = (f * T[j + 1] - T[j]) / (f - 1.0);
    T.pop_back();
    out.error = std::abs(T.back() - best);
    best = T.back();
  }
  out.estimate = T[0];
  out.c_s = out.estimate / std::pow(lambda2, 0.5 * s);
  if (!(out.error <= rel_tol * std::abs(out.estimate)))
    throw QuadratureError("boundary_limit: extrapolation did not converge", out.error);
  return out;
}

}  // namespace sbt
