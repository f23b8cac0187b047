#pragma once

// Special functions used throughout: truncated gamma integrals,
// Riemann-Liouville fractional integrals, Laguerre polynomials and
// normalized Hermite functions at complex argument.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "sbt/errors.hpp"
#include "sbt/quadrature.hpp"

namespace sbt {

using cplx = std::complex<double>;

/// Gamma function. glibc's tgamma is accurate to a few ulp over the range
/// used here (arguments in (0, 40]).
inline double gamma_fn(double x) { return std::tgamma(x); }

struct TruncatedGammaParams {
  double t = 1.0;      // time horizon, > 0
  double gamma = 1.0;  // order, > 0
  double a = 0.0;      // decay rate, >= 0

  void validate() const {
    if (!(t > 0.0)) throw PreconditionError("truncated_gamma: t must be positive");
    if (!(gamma > 0.0)) throw PreconditionError("truncated_gamma: gamma must be positive");
    if (!(a >= 0.0)) throw PreconditionError("truncated_gamma: decay rate must be nonnegative");
  }
};

/// (1/Gamma(g)) int_0^t r^(g-1) e^(-a r) dr.
/// The integrand is cut where e^(-a r) drops below e^(-60).
inline double truncated_gamma(const TruncatedGammaParams& p, const QuadratureSpec& spec = {}) {
  p.validate();
  if (p.a == 0.0) return std::pow(p.t, p.gamma) / gamma_fn(p.gamma + 1.0);
  const double x = p.a * p.t;
  if (x > p.gamma + 1.0) {
    // a^-g (1 - Q(g, x)) with Q the regularized upper tail, integrated in w = u - x.
    const double g = p.gamma;
    auto tail = [x, g](double w) { return std::pow(1.0 + w / x, g - 1.0) * std::exp(-w); };
    const double w_max = 70.0 / (1.0 - std::max(0.0, g - 1.0) / x);
    QuadratureSpec s = spec.with_exponents(0.0, 0.0).with_tolerance(1e-300, std::min(spec.rel_tol, 1e-13));
    const double integral = integrate_with_breaks(tail, {0.0, 1.0, 8.0, w_max}, s).value;
    const double Q = std::exp((g - 1.0) * std::log(x) - x - std::lgamma(g)) * integral;
    return std::pow(p.a, -g) * (1.0 - Q);
  }
  const double upper = std::min(p.t, 60.0 / p.a);
  auto smooth = [a = p.a](double r) { return std::exp(-a * r); };
  // Relative accuracy is what matters: the value can be as small as a^-gamma.
  const double magnitude = std::min(std::pow(upper, p.gamma) / p.gamma, gamma_fn(p.gamma) * std::pow(p.a, -p.gamma));
  QuadratureSpec s = spec.with_exponents(p.gamma - 1.0, 0.0);
  s.abs_tol = std::max(std::min(spec.abs_tol, 1e-2 * spec.rel_tol * magnitude), std::numeric_limits<double>::min());
  const QuadratureResult r = integrate(smooth, 0.0, upper, s);
  return r.value / gamma_fn(p.gamma);
}

inline double truncated_gamma(double t, double gamma, double a, const QuadratureSpec& spec = {}) {
  return truncated_gamma(TruncatedGammaParams{t, gamma, a}, spec);
}

/// (1/Gamma(order)) int_0^t (t-r)^(order-1) r^left_exponent f(r) dr.
///
/// `f` is the smooth part of the integrand; a power-law singularity of the
/// integrand itself at r = 0 is declared through `left_exponent`.
template <class F>
QuadratureResult riemann_liouville(F&& f, double t, double order, const QuadratureSpec& spec = {},
                                   double left_exponent = 0.0) {
  if (!(t > 0.0)) throw PreconditionError("riemann_liouville: t must be positive");
  if (!(order > 0.0)) throw PreconditionError("riemann_liouville: order must be positive");
  QuadratureResult r = integrate(f, 0.0, t, spec.with_exponents(left_exponent, order - 1.0));
  const double g = gamma_fn(order);
  r.value /= g;
  r.error /= g;
  return r;
}

/// Fixed nodes and weights for (1/Gamma(order)) int_0^t (t-r)^(order-1) r^left_exponent f(r) dr.
///
/// Each half of [0, t] gets a substituted end panel, geometrically graded panels and
/// `bulk_panels` uniform panels, all of Gauss-Legendre order 20. Meant for integrands
/// evaluated many times with smooth parameter dependence.
struct FixedRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  template <class F>
  double operator()(F&& f) const {
    double acc = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) acc += weights[j] * f(nodes[j]);
    return acc;
  }
};

inline FixedRule riemann_liouville_rule(double t, double order, double left_exponent = 0.0, int bulk_panels = 16) {
  if (!(t > 0.0) || !(order > 0.0)) throw PreconditionError("riemann_liouville_rule: t and order must be positive");
  if (!(left_exponent > -1.0)) throw PreconditionError("riemann_liouville_rule: exponent must exceed -1");
  if (bulk_panels < 1) throw PreconditionError("riemann_liouville_rule: need at least one bulk panel");
  const GaussRule& g = gauss_legendre(20);
  const double half = 0.5 * t, g_order = gamma_fn(order);
  FixedRule rule;
  // near: exponent at the end being resolved; at(d): position at distance d from it.
  auto side = [&](double near, double far, auto&& at) {
    auto far_factor = [&](double d) { return far == 0.0 ? 1.0 : std::pow(t - d, far); };
    const double d0 = detail::kSingularPanel * half, bulk = half / bulk_panels;
    const double kappa = 1.0 / (near + 1.0), u1 = std::pow(d0, near + 1.0);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double u = 0.5 * u1 * (g.nodes[i] + 1.0);
      const double d = std::pow(u, kappa);
      rule.nodes.push_back(at(d));
      rule.weights.push_back(0.5 * u1 * g.weights[i] * kappa * far_factor(d) / g_order);
    }
    std::vector<double> breaks{d0};
    for (double d = d0 * detail::kGradingRatio; d < bulk; d *= detail::kGradingRatio) breaks.push_back(d);
    for (int j = 1; j <= bulk_panels; ++j) breaks.push_back(j == bulk_panels ? half : j * bulk);
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
      const double a = breaks[p], b = breaks[p + 1];
      for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const double d = 0.5 * (a + b) + 0.5 * (b - a) * g.nodes[i];
        rule.nodes.push_back(at(d));
        rule.weights.push_back(0.5 * (b - a) * g.weights[i] * std::pow(d, near) * far_factor(d) / g_order);
      }
    }
  };
  side(left_exponent, order - 1.0, [](double d) { return d; });
  side(order - 1.0, left_exponent, [t](double d) { return t - d; });
  return rule;
}

/// Generalized Laguerre polynomial L_k^alpha(x) by the three-term recurrence.
inline double laguerre_poly(int k, double alpha, double x) {
  if (k < 0) throw PreconditionError("laguerre_poly: level must be nonnegative");
  if (k == 0) return 1.0;
  double lm1 = 1.0;
  double l = 1.0 + alpha - x;
  for (int j = 1; j < k; ++j) {
    const double next = ((2.0 * j + 1.0 + alpha - x) * l - (j + alpha) * lm1) / (j + 1.0);
    lm1 = l;
    l = next;
  }
  return l;
}

namespace detail {
inline void check_hermite_range(cplx z) {
  const double expo = 0.5 * (z.imag() * z.imag() - z.real() * z.real());
  if (expo > 700.0) throw RangeError("hermite_fn: |Im z| too large, e^{-z^2/2} overflows");
}
}  // namespace detail

/// Normalized Hermite functions Phi_0..Phi_kmax at complex z,
/// Phi_k(z) = (2^k k! sqrt(pi))^{-1/2} H_k(z) e^{-z^2/2}.
inline std::vector<cplx> hermite_functions(int kmax, cplx z) {
  if (kmax < 0) throw PreconditionError("hermite_functions: level must be nonnegative");
  detail::check_hermite_range(z);
  std::vector<cplx> phi(static_cast<std::size_t>(kmax) + 1);
  phi[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * z * z);
  if (kmax >= 1) phi[1] = std::sqrt(2.0) * z * phi[0];
  for (int k = 1; k < kmax; ++k) {
    phi[k + 1] = std::sqrt(2.0 / (k + 1.0)) * z * phi[k] - std::sqrt(k / (k + 1.0)) * phi[k - 1];
  }
  return phi;
}

inline cplx hermite_fn(int k, cplx z) { return hermite_functions(k, z).back(); }

}  // namespace sbt
