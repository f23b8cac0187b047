#pragma once

// Hermite expansions on R^n, the semigroup T_t = e^{-tH} and its holomorphic
// extension, the Bergman weights U_t, U_{t,gamma} and p_t, and the identities
// relating them.
//
// Constants. With p_t(y, v) = c_n (sinh t)^{-n} e^{-coth(t) (|y|^2 + |v|^2) / 4},
// the k = 0 Laguerre integral
//     int int e^{|y|^2 + |v|^2} p_{2t}(2y, 2v) dy dv = c_n pi^n e^{2nt}
// forces c_n = pi^{-n}. Then
//     int p_{2t}(2y, 2v) e^{-2 y.xi} dy = (2/pi)^{n/2} (sinh 4t)^{-n/2} e^{-coth(2t)|v|^2 + tanh(2t)|xi|^2},
// which is the density of U_t against Lebesgue measure d xi dv. The same
// weight written against d xi dv / (2 pi)^{n/2} has prefactor 2^n.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "sbt/errors.hpp"
#include "sbt/frac_sobolev.hpp"
#include "sbt/quadrature.hpp"
#include "sbt/report.hpp"
#include "sbt/specfun.hpp"

namespace sbt {

using MultiIndex = std::vector<int>;

inline int level_of(const MultiIndex& a) {
  int k = 0;
  for (int v : a) k += v;
  return k;
}

/// Coefficients c_alpha of f = sum c_alpha Phi_alpha, |alpha| <= N.
class HermiteExpansion {
 public:
  HermiteExpansion(int n, int cutoff) : n_(n), cutoff_(cutoff) {
    if (n < 1 || n > 3) throw PreconditionError("HermiteExpansion: dimension must be 1, 2 or 3");
    if (cutoff < 0) throw PreconditionError("HermiteExpansion: cutoff must be nonnegative");
    for (int k = 0; k <= cutoff; ++k) add_level(k, MultiIndex{}, n, k);
    for (std::size_t i = 0; i < alphas_.size(); ++i) index_[alphas_[i]] = i;
    coeffs_.assign(alphas_.size(), cplx{});
  }

  int dim() const { return n_; }
  int cutoff() const { return cutoff_; }
  std::size_t size() const { return coeffs_.size(); }
  const MultiIndex& alpha(std::size_t i) const { return alphas_[i]; }
  int level(std::size_t i) const { return level_of(alphas_[i]); }
  cplx& operator[](std::size_t i) { return coeffs_[i]; }
  const cplx& operator[](std::size_t i) const { return coeffs_[i]; }

  bool contains(const MultiIndex& a) const { return index_.count(a) != 0; }
  cplx at(const MultiIndex& a) const {
    auto it = index_.find(a);
    if (it == index_.end()) throw PreconditionError("HermiteExpansion: multi-index outside cutoff");
    return coeffs_[it->second];
  }
  void set(const MultiIndex& a, cplx v) {
    auto it = index_.find(a);
    if (it == index_.end()) throw PreconditionError("HermiteExpansion: multi-index outside cutoff");
    coeffs_[it->second] = v;
  }
  void set(int k, cplx v) { set(MultiIndex{k}, v); }

  /// ||P_k f||^2 for k = 0..N.
  std::vector<double> level_masses() const {
    std::vector<double> m(static_cast<std::size_t>(cutoff_) + 1, 0.0);
    for (std::size_t i = 0; i < size(); ++i) m[level(i)] += std::norm(coeffs_[i]);
    return m;
  }
  double l2_norm_squared() const {
    double s = 0.0;
    for (const cplx& c : coeffs_) s += std::norm(c);
    return s;
  }

  /// Per-level multiplier: new c_alpha = mult(|alpha|) c_alpha.
  template <class M>
  HermiteExpansion apply(M&& mult) const {
    HermiteExpansion out = *this;
    std::vector<double> per(static_cast<std::size_t>(cutoff_) + 1);
    for (int k = 0; k <= cutoff_; ++k) per[k] = mult(k);
    for (std::size_t i = 0; i < size(); ++i) out.coeffs_[i] *= per[level(i)];
    return out;
  }

  /// Holomorphic synthesis sum c_alpha prod_j Phi_{alpha_j}(z_j).
  cplx evaluate(const std::vector<cplx>& z) const {
    if (static_cast<int>(z.size()) != n_) throw PreconditionError("HermiteExpansion::evaluate: wrong dimension");
    std::vector<std::vector<cplx>> phi(n_);
    for (int j = 0; j < n_; ++j) phi[j] = hermite_functions(cutoff_, z[j]);
    cplx acc{};
    for (std::size_t i = 0; i < size(); ++i) {
      if (coeffs_[i] == cplx{}) continue;
      cplx term = coeffs_[i];
      for (int j = 0; j < n_; ++j) term *= phi[j][alphas_[i][j]];
      acc += term;
    }
    return acc;
  }
  cplx evaluate(cplx z) const { return evaluate(std::vector<cplx>{z}); }

 private:
  void add_level(int k, MultiIndex prefix, int remaining_dims, int remaining) {
    if (remaining_dims == 1) {
      prefix.push_back(remaining);
      alphas_.push_back(std::move(prefix));
      return;
    }
    for (int a = remaining; a >= 0; --a) {
      MultiIndex p = prefix;
      p.push_back(a);
      add_level(k, std::move(p), remaining_dims - 1, remaining - a);
    }
  }

  int n_;
  int cutoff_;
  std::vector<MultiIndex> alphas_;
  std::vector<cplx> coeffs_;
  std::map<MultiIndex, std::size_t> index_;
};

/// T_t: level multiplier e^{-(2k+n)t}; t = 0 is the identity.
inline HermiteExpansion tt_transform(const HermiteExpansion& e, double t) {
  if (!(t >= 0.0)) throw PreconditionError("tt_transform: t must be nonnegative");
  const int n = e.dim();
  return e.apply([t, n](int k) { return std::exp(-(2.0 * k + n) * t); });
}

/// H_C^m: level multiplier (2k+n)^m.
inline HermiteExpansion hermite_power(const HermiteExpansion& e, int m) {
  if (m < 0) throw PreconditionError("hermite_power: m must be nonnegative");
  const int n = e.dim();
  return e.apply([m, n](int k) { return std::pow(2.0 * k + n, m); });
}

/// a_{t,gamma}(k) = e^{-t(2k+n)} truncated_gamma(t, gamma, 2k+n).
inline double a_t_gamma(double t, double gamma, int k, int n) {
  return std::exp(-t * (2.0 * k + n)) * truncated_gamma(t, gamma, 2.0 * k + n);
}

/// T_t^s: level multiplier (2k+n)^m a_{t, m - s/2}(k). The omitted sign is (-1)^m.
inline HermiteExpansion tts_transform(const HermiteExpansion& e, double t, double s) {
  const SobolevParams p{s, t, GeneratorScaling::Unit};
  p.validate();
  const int n = e.dim(), m = p.m();
  const double g = p.gamma();
  return e.apply([&](int k) { return std::pow(2.0 * k + n, m) * a_t_gamma(t, g, k, n); });
}

enum class HermiteMeasure {
  Lebesgue,  // d xi dv
  Scaled     // d xi dv / (2 pi)^{n/2}
};

/// U_t(xi + i v) for n = xi.size(), density against the chosen measure.
inline double u_t(const std::vector<double>& xi, const std::vector<double>& v, double t,
                  HermiteMeasure measure = HermiteMeasure::Lebesgue) {
  if (!(t > 0.0)) throw PreconditionError("u_t: t must be positive");
  if (xi.size() != v.size() || xi.empty()) throw PreconditionError("u_t: xi and v must have the same dimension");
  const double n = static_cast<double>(xi.size());
  double x2 = 0.0, v2 = 0.0;
  for (std::size_t j = 0; j < xi.size(); ++j) {
    x2 += xi[j] * xi[j];
    v2 += v[j] * v[j];
  }
  const double pref = measure == HermiteMeasure::Lebesgue ? std::pow(2.0 / std::numbers::pi, 0.5 * n)
                                                          : std::pow(2.0, n);
  return pref * std::pow(std::sinh(4.0 * t), -0.5 * n) * std::exp(-v2 / std::tanh(2.0 * t) + std::tanh(2.0 * t) * x2);
}

inline double u_t(double xi, double v, double t, HermiteMeasure measure = HermiteMeasure::Lebesgue) {
  return u_t(std::vector<double>{xi}, std::vector<double>{v}, t, measure);
}

inline double p_t_constant(int n) { return std::pow(std::numbers::pi, -double(n)); }

/// p_t(y, v) with c_n = pi^{-n}.
inline double p_t(const std::vector<double>& y, const std::vector<double>& v, double t) {
  if (!(t > 0.0)) throw PreconditionError("p_t: t must be positive");
  const int n = static_cast<int>(y.size());
  double r2 = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) r2 += y[j] * y[j] + v[j] * v[j];
  return p_t_constant(n) * std::pow(std::sinh(t), -double(n)) * std::exp(-0.25 * r2 / std::tanh(t));
}

/// U_{t,gamma}(xi + iv), n = 1: Riemann-Liouville integral of order 2 gamma of r -> U_r.
/// U_r carries (sinh 4r)^{-1/2} ~ (4r)^{-1/2}, declared as a left endpoint singularity.
inline double u_t_gamma(double xi, double v, double t, double gamma, const QuadratureSpec& spec = {}) {
  if (!(t > 0.0) || !(gamma > 0.0)) throw PreconditionError("u_t_gamma: t and gamma must be positive");
  const double x2 = xi * xi, v2 = v * v;
  const double pref = std::sqrt(2.0 / std::numbers::pi);
  auto smooth = [=](double r) {
    if (r <= 0.0) return v2 == 0.0 ? pref * 0.5 : 0.0;
    const double th = std::tanh(2.0 * r);
    return pref * std::sqrt(r / std::sinh(4.0 * r)) * std::exp(-v2 / th + th * x2);
  };
  return riemann_liouville(smooth, t, 2.0 * gamma, spec.with_tolerance(1e-300, spec.rel_tol), -0.5).value;
}

/// U_{t,gamma} on a fixed Riemann-Liouville rule, for repeated evaluation inside 2-D quadratures.
class UtGammaRule {
 public:
  UtGammaRule(double t, double gamma, int bulk_panels = 16) : t_(t), gamma_(gamma) {
    if (!(t > 0.0) || !(gamma > 0.0)) throw PreconditionError("UtGammaRule: t and gamma must be positive");
    const FixedRule rule = riemann_liouville_rule(t, 2.0 * gamma, -0.5, bulk_panels);
    const double pref = std::sqrt(2.0 / std::numbers::pi);
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double r = rule.nodes[j];
      const double th = std::tanh(2.0 * r);
      scale_.push_back(rule.weights[j] * pref * std::sqrt(r / std::sinh(4.0 * r)));
      coth_.push_back(1.0 / th);
      tanh_.push_back(th);
    }
  }

  double operator()(double xi, double v) const {
    const double x2 = xi * xi, v2 = v * v;
    double acc = 0.0;
    for (std::size_t j = 0; j < scale_.size(); ++j) acc += scale_[j] * std::exp(-coth_[j] * v2 + tanh_[j] * x2);
    return acc;
  }

  /// Largest relative gap to the adaptive evaluation over the given points.
  double check(const std::vector<std::pair<double, double>>& points) const {
    double worst = 0.0;
    for (const auto& [xi, v] : points) {
      const double ref = u_t_gamma(xi, v, t_, gamma_);
      if (ref > 0.0) worst = std::max(worst, std::abs((*this)(xi, v) - ref) / ref);
    }
    return worst;
  }

 private:
  double t_, gamma_;
  std::vector<double> scale_, coth_, tanh_;
};

namespace detail {

// Radius beyond which poly(deg 2N) * e^{-a x^2} is negligible.
inline double gaussian_radius(double rate, int N) {
  return std::sqrt((5.0 * N + 40.0) / rate);
}

inline QuadratureSpec hermite_quad(double rel) {
  QuadratureSpec q;
  q.abs_tol = 1e-300;
  q.rel_tol = rel;
  q.max_levels = 30;
  return q;
}

}  // namespace detail

/// int_R p_{2t}(2y, 2v) e^{-2 y xi} dy versus the closed form of U_t (n = 1, Lebesgue measure).
inline VerificationReport verify_ut_closed_form(double t, double v, double xi, double tol = 1e-8) {
  const double c = 1.0 / std::tanh(2.0 * t);
  const double centre = -xi / c, w = 40.0 / std::sqrt(2.0 * c);
  auto f = [&](double y) { return p_t({2.0 * y}, {2.0 * v}, 2.0 * t) * std::exp(-2.0 * y * xi); };
  const QuadratureResult q = integrate_with_breaks(f, {centre - w, centre, centre + w}, detail::hermite_quad(1e-13));
  VerificationReport r = VerificationReport::compare("ut_closed_form/t=" + std::to_string(t) + "/xi=" + std::to_string(xi) +
                                                         "/v=" + std::to_string(v),
                                                     q.value, u_t(xi, v, t), tol, {{"t", t}, {"xi", xi}, {"v", v}});
  r.meta = {{"quadrature_error", q.error}, {"c_n", p_t_constant(1)}};
  return r;
}

/// (k!(n-1)!/(k+n-1)!) int int L_k^{n-1}(-2(|y|^2+|v|^2)) e^{|y|^2+|v|^2} p_{2t}(2y, 2v) dy dv
/// versus e^{2(2k+n)t}. The integrand is radial in R^{2n}; with u = |y|^2 + |v|^2 the
/// measure becomes (pi^n / Gamma(n)) u^{n-1} du.
inline VerificationReport verify_level_norm(int k, double t, int n, double tol = 1e-6) {
  if (k < 0 || n < 1) throw PreconditionError("verify_level_norm: need k >= 0, n >= 1");
  if (!(t > 0.0)) throw PreconditionError("verify_level_norm: t must be positive");
  const double a = 1.0 / std::tanh(2.0 * t) - 1.0;  // decay rate in u
  const double pref = p_t_constant(n) * std::pow(std::sinh(2.0 * t), -double(n)) *
                      std::pow(std::numbers::pi, double(n)) / gamma_fn(n);
  auto f = [&](double u) { return laguerre_poly(k, n - 1.0, -2.0 * u) * std::exp(-a * u); };
  const double U = (45.0 + (k + n) * std::log(2.0 + 4.0 * (k + n) / a)) / a + 4.0 * (k + n) / a;
  if (!std::isfinite(U) || U > 1e7) throw TruncationError("verify_level_norm: t too large for the radial truncation", U);
  QuadratureSpec q = detail::hermite_quad(1e-13).with_exponents(double(n - 1), 0.0);
  const QuadratureResult r = integrate(f, 0.0, U, q);
  double norm = 1.0;  // k!(n-1)!/(k+n-1)!
  for (int j = 1; j <= n - 1; ++j) norm *= double(j) / double(k + j);
  const double lhs = norm * pref * r.value;
  const double rhs = std::exp(2.0 * (2.0 * k + n) * t);
  VerificationReport rep = VerificationReport::compare(
      "level_norm/n=" + std::to_string(n) + "/k=" + std::to_string(k) + "/t=" + std::to_string(t), lhs, rhs, tol,
      {{"k", k}, {"t", t}, {"n", n}});
  rep.meta = {{"u_max", U}, {"quadrature_error", norm * pref * r.error}, {"c_n", p_t_constant(n)}};
  return rep;
}

struct HermiteQuadOptions {
  double rel_tol = 1e-11;
  int theta_points = 64;  // trapezoid points on the rotation circle
};

/// int int |F(xi + iv)|^2 weight(xi, v) d xi dv for n = 1, F = synthesis of `e`.
/// `xi_rate`, `v_rate` are the Gaussian decay rates of the integrand.
template <class W>
QuadratureResult hermite_bergman(const HermiteExpansion& e, W&& weight, double xi_rate, double v_rate,
                                 const HermiteQuadOptions& opts = {}) {
  if (e.dim() != 1) throw PreconditionError("hermite_bergman: quadrature side requires n = 1");
  const int N = e.cutoff();
  const double Rx = detail::gaussian_radius(xi_rate, N), Rv = detail::gaussian_radius(v_rate, N);
  auto row = [&](double v) {
    auto fx = [&](double xi) { return std::norm(e.evaluate(cplx(xi, v))) * weight(xi, v); };
    return integrate_with_breaks(fx, {-Rx, 0.0, Rx}, detail::hermite_quad(0.1 * opts.rel_tol)).value;
  };
  return integrate_with_breaks(row, {-Rv, 0.0, Rv}, detail::hermite_quad(opts.rel_tol));
}

/// int int |T_t f|^2 U_t versus ||f||^2.
inline VerificationReport verify_hermite_isometry(const HermiteExpansion& e, double t, double tol = 1e-6,
                                       const HermiteQuadOptions& opts = {}) {
  const HermiteExpansion F = tt_transform(e, t);
  const double th = std::tanh(2.0 * t);
  const QuadratureResult q =
      hermite_bergman(F, [t](double xi, double v) { return u_t(xi, v, t); }, 1.0 - th, 1.0 / th - 1.0, opts);
  VerificationReport r = VerificationReport::compare("hermite_isometry/t=" + std::to_string(t) + "/N=" + std::to_string(e.cutoff()),
                                                     q.value, e.l2_norm_squared(), tol,
                                                     {{"t", t}, {"cutoff", e.cutoff()}});
  r.meta = {{"quadrature_error", q.error}, {"measure", "lebesgue"}};
  return r;
}

/// int int |Phi_k|^2 U_t versus e^{2(2k+1)t}.
inline VerificationReport verify_level_isometry(int k, double t, double tol = 1e-6, const HermiteQuadOptions& opts = {}) {
  HermiteExpansion e(1, k);
  e.set(k, 1.0);
  const double th = std::tanh(2.0 * t);
  const QuadratureResult q =
      hermite_bergman(e, [t](double xi, double v) { return u_t(xi, v, t); }, 1.0 - th, 1.0 / th - 1.0, opts);
  VerificationReport r = VerificationReport::compare("level_isometry/t=" + std::to_string(t) + "/k=" + std::to_string(k),
                                                     q.value, std::exp(2.0 * (2.0 * k + 1.0) * t), tol,
                                                     {{"t", t}, {"k", k}});
  r.meta = {{"quadrature_error", q.error}};
  return r;
}

/// Gutzmer's formula at the purely imaginary point (iy, iv), n = 1:
///   int (1/2pi) int_0^{2pi} e^{-2 y' xi} |F(xi + i v')|^2 d theta d xi
///   = sum_k L_k(-2(y^2+v^2)) e^{y^2+v^2} ||P_k f||^2,
/// with (y', v') = (y cos theta - v sin theta, y sin theta + v cos theta).
inline VerificationReport gutzmer(const HermiteExpansion& e, double y, double v, double tol = 1e-6,
                                  const HermiteQuadOptions& opts = {}) {
  if (e.dim() != 1) throw PreconditionError("gutzmer: n = 1 only");
  const int N = e.cutoff(), M = opts.theta_points;
  if (M < 4) throw PreconditionError("gutzmer: need at least four theta points");
  const double r = std::hypot(y, v);
  auto slice = [&](double theta) {
    const double yp = y * std::cos(theta) - v * std::sin(theta);
    const double vp = y * std::sin(theta) + v * std::cos(theta);
    const double R = detail::gaussian_radius(1.0, N) + std::abs(yp);
    auto f = [&](double xi) { return std::exp(-2.0 * yp * xi) * std::norm(e.evaluate(cplx(xi, vp))); };
    return integrate_with_breaks(f, {-R, -yp, R}, detail::hermite_quad(1e-2 * opts.rel_tol)).value;
  };
  auto trap = [&](int m) {
    double acc = 0.0;
    for (int j = 0; j < m; ++j) acc += slice(2.0 * std::numbers::pi * j / m);
    return acc / m;
  };
  const double lhs = trap(M);
  const double coarse = r == 0.0 ? lhs : trap(M / 2);
  const std::vector<double> masses = e.level_masses();
  double rhs = 0.0;
  for (int k = 0; k <= N; ++k) rhs += laguerre_poly(k, 0.0, -2.0 * r * r) * std::exp(r * r) * masses[k];
  VerificationReport rep = VerificationReport::compare(
      "gutzmer/y=" + std::to_string(y) + "/v=" + std::to_string(v), lhs, rhs, tol, {{"y", y}, {"v", v}, {"cutoff", N}});
  rep.meta = {{"theta_points", M}, {"theta_refinement_change", std::abs(lhs - coarse)}};
  return rep;
}

/// Two quantities per call, keyed as in NormBundle:
///   l2        = ||f||^2
///   hs        = sum (2k+n)^s ||P_k f||^2                      (W_H^{s,2} norm)
///   hts       = sum e^{-2t(2k+n)} (2k+n)^{2m} RL_{2m-s}[e^{2r(2k+n)}](t) ||P_k f||^2
///   holo_s    = int int |H_C^m T_t f|^2 U_{t, m-s/2}          (n = 1 quadrature)
///   bergman_s = int int |T_t^s f|^2 U_t                       (n = 1 quadrature)
inline NormBundle hermite_sobolev_norms(const HermiteExpansion& e, double t, double s, bool quadrature = true,
                                        const HermiteQuadOptions& opts = {}) {
  const SobolevParams p{s, t, GeneratorScaling::Unit};
  p.validate();
  const int n = e.dim(), m = p.m();
  const std::vector<double> masses = e.level_masses();
  NormBundle b;
  b.l2 = e.l2_norm_squared();
  b.hs = 0.0;
  b.hts = 0.0;
  for (int k = 0; k <= e.cutoff(); ++k) {
    if (masses[k] == 0.0) continue;
    const double lam = 2.0 * k + n;
    b.hs += std::pow(lam, s) * masses[k];
    auto g = [lam](double r) { return std::exp(2.0 * r * lam); };
    const double window = riemann_liouville(g, t, 2.0 * m - s, QuadratureSpec{}.with_tolerance(1e-300, 1e-13)).value;
    b.hts += std::exp(-2.0 * t * lam) * std::pow(lam, 2 * m) * window * masses[k];
  }
  if (!quadrature || n != 1) return b;

  const double th = std::tanh(2.0 * t);
  const HermiteExpansion G = hermite_power(tt_transform(e, t), m);
  const UtGammaRule weight(t, p.gamma());
  const QuadratureResult q_holo = hermite_bergman(G, weight, 1.0 - th, 1.0 / th - 1.0, opts);
  const double Rx = detail::gaussian_radius(1.0 - th, e.cutoff()), Rv = detail::gaussian_radius(1.0 / th - 1.0, e.cutoff());
  b.errors["weight_rule_gap"] =
      weight.check({{0.0, 0.0}, {0.5 * Rx, 0.0}, {0.0, 0.5 * Rv}, {0.5 * Rx, 0.5 * Rv}, {Rx, 1e-3}, {1e-3, Rv}});
  b.holo_s = q_holo.value;
  b.errors["holo_s_quadrature"] = q_holo.error;
  const QuadratureResult q_tts = hermite_bergman(
      tts_transform(e, t, s), [t](double xi, double v) { return u_t(xi, v, t); }, 1.0 - th, 1.0 / th - 1.0, opts);
  b.bergman_s = q_tts.value;
  b.errors["bergman_s_quadrature"] = q_tts.error;
  return b;
}

/// Spectral value of int |T_t^s f|^2 U_t = sum e^{2t(2k+n)} [(2k+n)^m a_{t,m-s/2}(k)]^2 ||P_k f||^2.
inline double tts_norm_spectral(const HermiteExpansion& e, double t, double s) {
  const std::vector<double> masses = tts_transform(e, t, s).level_masses();
  double acc = 0.0;
  for (int k = 0; k <= e.cutoff(); ++k) acc += std::exp(2.0 * t * (2.0 * k + e.dim())) * masses[k];
  return acc;
}

/// Spectral-versus-quadrature equality for the U_{t,gamma} norm of H_C^m T_t f (n = 1).
inline std::vector<VerificationReport> verify_hermite_sobolev(const HermiteExpansion& e, double t, double s, double tol = 1e-5,
                                                    const HermiteQuadOptions& opts = {}) {
  const NormBundle b = hermite_sobolev_norms(e, t, s, true, opts);
  const SobolevParams p{s, t, GeneratorScaling::Unit};
  const std::map<std::string, double> params{{"t", t}, {"s", s}, {"m", p.m()}, {"cutoff", e.cutoff()}};
  const std::string tag = "/t=" + std::to_string(t) + "/s=" + std::to_string(s);
  std::vector<VerificationReport> out;
  VerificationReport r_holo = VerificationReport::compare("hermite_sobolev" + tag, b.holo_s, b.hts, tol, params);
  r_holo.meta = to_json(b);
  out.push_back(r_holo);
  VerificationReport r_tts = VerificationReport::compare("tts_bergman" + tag, b.bergman_s, tts_norm_spectral(e, t, s), tol, params);
  r_tts.meta = {{"sign", (p.m() % 2 == 0) ? 1 : -1}};
  out.push_back(r_tts);
  return out;
}

/// Empirical constants for ||T_t^s f||^2_{B(U_t)} / sum (2k+n)^s ||P_k f||^2 over the given expansions.
inline EquivalenceConstants hermite_equivalence_constants(const std::vector<HermiteExpansion>& fs, double t, double s,
                                                          bool quadrature = false, const HermiteQuadOptions& opts = {}) {
  EquivalenceConstants c;
  for (const auto& f : fs) {
    const NormBundle b = hermite_sobolev_norms(f, t, s, false);
    if (!(b.hs > 0.0)) continue;
    double num;
    if (quadrature && f.dim() == 1) {
      const double th = std::tanh(2.0 * t);
      num = hermite_bergman(tts_transform(f, t, s), [t](double xi, double v) { return u_t(xi, v, t); }, 1.0 - th,
                            1.0 / th - 1.0, opts)
                .value;
    } else {
      num = tts_norm_spectral(f, t, s);
    }
    c.c1 = std::min(c.c1, num / b.hs);
    c.c2 = std::max(c.c2, num / b.hs);
  }
  if (!fs.empty()) {
    const int n = fs.front().dim();
    const SobolevParams p{s, t, GeneratorScaling::Unit};
    for (int k = 0; k <= fs.front().cutoff(); ++k) {
      const double lam = 2.0 * k + n;
      const double mult = std::pow(lam, p.m()) * a_t_gamma(t, p.gamma(), k, n);
      const double r = std::exp(2.0 * t * lam) * mult * mult / std::pow(lam, s);
      c.multiplier_inf = std::min(c.multiplier_inf, r);
      c.multiplier_sup = std::max(c.multiplier_sup, r);
    }
  }
  return c;
}

/// Max over `points` of |(-G'' + z^2 G) - (2k+1) G| / max|G| for G = T_t Phi_k, with G''
/// by central differences of step h along Im z = const.
inline double hermite_operator_residual(int k, double t, double h, const std::vector<cplx>& points) {
  HermiteExpansion e(1, k);
  e.set(k, 1.0);
  const HermiteExpansion G = tt_transform(e, t);
  double worst = 0.0, scale = 0.0;
  for (const cplx& z : points) {
    const cplx g = G.evaluate(z);
    const cplx d2 = (G.evaluate(z + h) - 2.0 * g + G.evaluate(z - h)) / (h * h);
    worst = std::max(worst, std::abs(-d2 + z * z * g - (2.0 * k + 1.0) * g));
    scale = std::max(scale, std::abs(g));
  }
  return worst / scale;
}

}  // namespace sbt
