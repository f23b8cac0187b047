#pragma once

// One-dimensional Gauss-Legendre quadrature: fixed composite rules and a
// globally adaptive bisection scheme with power-law endpoint weights
//
//     int_a^b (x-a)^alpha (b-x)^beta f(x) dx,   alpha, beta > -1,
//
// where f is the smooth part of the integrand. The singular factors are
// absorbed by the change of variables u = (x-a)^(alpha+1) (resp. b-x) before
// any panel is laid down, so accuracy does not degrade as alpha -> -1.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "sbt/errors.hpp"

namespace sbt {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

inline constexpr int kMaxGaussOrder = 64;

namespace detail {

inline GaussRule build_gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged root
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace detail

/// Gauss-Legendre rule of the given order on [-1, 1]. Tables are built once.
inline const GaussRule& gauss_legendre(int order) {
  static const std::array<GaussRule, kMaxGaussOrder + 1> table = [] {
    std::array<GaussRule, kMaxGaussOrder + 1> t{};
    for (int n = 1; n <= kMaxGaussOrder; ++n) t[n] = detail::build_gauss_legendre(n);
    return t;
  }();
  if (order < 1 || order > kMaxGaussOrder)
    throw PreconditionError("Gauss-Legendre order out of range: " + std::to_string(order));
  return table[order];
}

/// Single-panel Gauss-Legendre approximation of int_a^b f.
template <class F>
double gauss_panel(F&& f, double a, double b, const GaussRule& rule) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

/// Composite rule with `panels` equal panels.
template <class F>
double composite_gauss(F&& f, double a, double b, int order, int panels) {
  const GaussRule& rule = gauss_legendre(order);
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int j = 0; j < panels; ++j) sum += gauss_panel(f, a + j * h, a + (j + 1) * h, rule);
  return sum;
}

struct QuadratureSpec {
  int order = 20;               // Gauss-Legendre points per panel, >= 2
  int panels = 1;               // initial panel count
  double left_exponent = 0.0;   // alpha in (x-a)^alpha, > -1
  double right_exponent = 0.0;  // beta in (b-x)^beta, > -1
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_levels = 20;          // bisection depth limit per initial panel

  void validate() const {
    if (order < 2 || order > kMaxGaussOrder) throw PreconditionError("quadrature order must be in [2, 64]");
    if (panels < 1) throw PreconditionError("quadrature needs at least one panel");
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw PreconditionError("quadrature tolerances must be positive");
    if (!(left_exponent > -1.0) || !(right_exponent > -1.0))
      throw PreconditionError("endpoint singularity exponents must exceed -1");
    if (max_levels < 0) throw PreconditionError("max_levels must be nonnegative");
  }

  QuadratureSpec with_exponents(double alpha, double beta) const {
    QuadratureSpec s = *this;
    s.left_exponent = alpha;
    s.right_exponent = beta;
    return s;
  }
  QuadratureSpec with_tolerance(double abs, double rel) const {
    QuadratureSpec s = *this;
    s.abs_tol = abs;
    s.rel_tol = rel;
    return s;
  }
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;            // estimated absolute error
  std::size_t evaluations = 0;

  QuadratureResult& operator+=(const QuadratureResult& o) {
    value += o.value;
    error += o.error;
    evaluations += o.evaluations;
    return *this;
  }
};

namespace detail {

struct Panel {
  double a, b;
  int level;
  double left, right;  // order-p estimates on the two halves
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
QuadratureResult adaptive_gauss(F&& f, const std::vector<double>& breaks, const QuadratureSpec& spec, double abs_tol) {
  const GaussRule& rule = gauss_legendre(spec.order);
  QuadratureResult out;
  if (breaks.size() < 2 || breaks.front() == breaks.back()) return out;

  const std::size_t per_panel = rule.nodes.size();
  auto make = [&](double l, double r, int level, double coarse) {
    const double m = 0.5 * (l + r);
    Panel p{l, r, level, gauss_panel(f, l, m, rule), gauss_panel(f, m, r, rule), 0.0};
    p.error = std::abs(p.left + p.right - coarse);
    out.evaluations += 2 * per_panel;
    return p;
  };

  std::priority_queue<Panel> open;
  double frozen_value = 0.0, frozen_error = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double h = (breaks[i + 1] - breaks[i]) / spec.panels;
    for (int j = 0; j < spec.panels; ++j) {
      const double l = breaks[i] + j * h;
      const double r = (j + 1 == spec.panels) ? breaks[i + 1] : breaks[i] + (j + 1) * h;
      const double coarse = gauss_panel(f, l, r, rule);
      out.evaluations += per_panel;
      open.push(make(l, r, 0, coarse));
    }
  }

  constexpr std::size_t kMaxPanels = 1u << 18;
  for (;;) {
    // Sums are recomputed from the queue to avoid drift in running totals.
    double value = frozen_value, error = frozen_error;
    {
      auto copy = open;
      while (!copy.empty()) {
        value += copy.top().left + copy.top().right;
        error += copy.top().error;
        copy.pop();
      }
    }
    const double tol = std::max(abs_tol, spec.rel_tol * std::abs(value));
    if (error <= tol || open.empty()) {
      out.value = value;
      out.error = error;
      if (error > tol)
        throw QuadratureError("adaptive quadrature exhausted its refinement budget at value " + sci(value), error);
      return out;
    }
    // Refine a batch of the worst panels before re-summing.
    const std::size_t batch = std::max<std::size_t>(1, open.size() / 4);
    for (std::size_t k = 0; k < batch && !open.empty(); ++k) {
      Panel p = open.top();
      open.pop();
      if (p.level >= spec.max_levels || open.size() > kMaxPanels) {
        frozen_value += p.left + p.right;
        frozen_error += p.error;
        continue;
      }
      const double m = 0.5 * (p.a + p.b);
      open.push(make(p.a, m, p.level + 1, p.left));
      open.push(make(m, p.b, p.level + 1, p.right));
    }
  }
}

}  // namespace detail

namespace detail {

// Relative width of the end panel handled by power substitution, and the
// growth ratio of the graded panels between it and the interval midpoint.
inline constexpr double kSingularPanel = 1e-12;
inline constexpr double kGradingRatio = 6.0;

template <class F>
QuadratureResult adaptive_gauss(F&& f, double a, double b, const QuadratureSpec& spec, double abs_tol) {
  return adaptive_gauss(f, std::vector<double>{a, b}, spec, abs_tol);
}

// Distances from a singular endpoint: the substituted end panel [0, d0], then
// geometrically graded panels out to `len`.
inline std::vector<double> graded_distances(double len) {
  std::vector<double> pts{kSingularPanel * len};
  for (double d = kSingularPanel * kGradingRatio; d < 1.0; d *= kGradingRatio) pts.push_back(d * len);
  pts.push_back(len);
  return pts;
}

// Panels are parameterized by the distance d to the singular endpoint so the
// power factor is evaluated without cancellation.
template <class F>
QuadratureResult integrate_singular(F&& f, double a, double b, const QuadratureSpec& spec) {
  const double alpha = spec.left_exponent;
  const double beta = spec.right_exponent;
  if (alpha == 0.0 && beta == 0.0) return adaptive_gauss(f, a, b, spec, spec.abs_tol);

  const bool split = alpha != 0.0 && beta != 0.0;
  const double len = b - a;
  const double half = split ? 0.5 * len : len;
  const double part_tol = (split ? 0.25 : 0.5) * spec.abs_tol;

  QuadratureResult total;
  auto side = [&](double near_exp, double far_exp, auto&& at) {
    // at(d) = f at distance d from the singular end
    const std::vector<double> breaks = graded_distances(half);
    const double kappa = 1.0 / (near_exp + 1.0);
    auto far = [&](double d) { return far_exp == 0.0 ? 1.0 : std::pow(len - d, far_exp); };
    auto g = [&](double u) {
      const double d = std::pow(u, kappa);
      return at(d) * far(d) * kappa;
    };
    auto full = [&](double d) { return at(d) * std::pow(d, near_exp) * far(d); };
    total += adaptive_gauss(g, 0.0, std::pow(breaks.front(), near_exp + 1.0), spec, part_tol);
    total += adaptive_gauss(full, breaks, spec, part_tol);
  };
  if (alpha != 0.0) side(alpha, beta, [&](double d) { return f(a + d); });
  if (beta != 0.0) side(beta, alpha, [&](double d) { return f(b - d); });
  return total;
}

}  // namespace detail

/// Adaptive integral of (x-a)^alpha (b-x)^beta f(x) over [a, b] with the
/// exponents taken from `spec`. `f` must be finite at both endpoints.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
  spec.validate();
  if (!(b >= a)) throw PreconditionError("integration interval must satisfy a <= b");
  // Positive integer exponents are polynomial factors; substituting them away
  // would only introduce a fractional power.
  auto is_poly = [](double e) { return e > 0.0 && e == std::floor(e); };
  if (is_poly(spec.left_exponent) || is_poly(spec.right_exponent)) {
    const double pa = is_poly(spec.left_exponent) ? spec.left_exponent : 0.0;
    const double pb = is_poly(spec.right_exponent) ? spec.right_exponent : 0.0;
    auto g = [&](double x) { return f(x) * std::pow(x - a, pa) * std::pow(b - x, pb); };
    return detail::integrate_singular(g, a, b, spec.with_exponents(spec.left_exponent - pa, spec.right_exponent - pb));
  }
  return detail::integrate_singular(f, a, b, spec);
}

/// Adaptive integral split at the given interior breakpoints.
template <class F>
QuadratureResult integrate_with_breaks(F&& f, std::vector<double> points, const QuadratureSpec& spec = {}) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  QuadratureResult total;
  if (points.size() < 2) return total;
  const double pieces = static_cast<double>(points.size() - 1);
  const QuadratureSpec part = spec.with_tolerance(spec.abs_tol / pieces, spec.rel_tol);
  for (std::size_t i = 0; i + 1 < points.size(); ++i) total += integrate(f, points[i], points[i + 1], part);
  return total;
}

/// Nested adaptive integral of f(x, y) over [ax, bx] x [ay, by]; y outer.
template <class F>
QuadratureResult integrate_2d(F&& f, double ax, double bx, double ay, double by, const QuadratureSpec& outer,
                              const QuadratureSpec& inner) {
  double worst_inner = 0.0;
  std::size_t inner_evals = 0;
  auto row = [&](double y) {
    auto fx = [&](double x) { return f(x, y); };
    const QuadratureResult r = integrate(fx, ax, bx, inner);
    worst_inner = std::max(worst_inner, r.error);
    inner_evals += r.evaluations;
    return r.value;
  };
  QuadratureResult out = integrate(row, ay, by, outer);
  out.error += (by - ay) * worst_inner;
  out.evaluations = inner_evals;
  return out;
}

}  // namespace sbt
