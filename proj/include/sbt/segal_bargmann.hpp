#pragma once

// Segal-Bargmann transform on the torus: the multiplier C_t, the Bergman
// weights nu_t and w_{t,gamma} on the complexified torus, Bergman-space norms
// by quadrature, and the isometry / weighted-equality checks.
//
// Measure on the complexified torus T^1_C = {x + i y}: dx/(2 pi) dy.
//
// nu_t on T^n_C depends only on y. For F(x + iy) = e^{i m.(x+iy)} the x-average
// of |F|^2 is e^{-2 m.y}, so the defining moment condition
//     int_{R^n} e^{2 m.y} nu_t(y) dy = e^{t |m|^2}   for every m in Z^n
// says the Laplace transform of nu_t at 2m is e^{t|m|^2}, i.e. nu_t is the
// centred Gaussian with covariance (t/2) I:
//     nu_t(y) = (pi t)^{-n/2} e^{-|y|^2 / t}.
// The moment condition is re-checked by quadrature before the first nu_t
// weight is handed out (see WeightDensity::nu).

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "sbt/errors.hpp"
#include "sbt/quadrature.hpp"
#include "sbt/report.hpp"
#include "sbt/specfun.hpp"
#include "sbt/spectrum.hpp"

namespace sbt {

/// Which heat generator a multiplier is built from: e^{r Delta / 2} (Half) or e^{r Delta} (Unit).
enum class GeneratorScaling { Half, Unit };

inline double scaling_factor(GeneratorScaling g) { return g == GeneratorScaling::Half ? 0.5 : 1.0; }
inline std::string to_string(GeneratorScaling g) { return g == GeneratorScaling::Half ? "half" : "unit"; }
inline GeneratorScaling parse_scaling(const std::string& s) {
  if (s == "half") return GeneratorScaling::Half;
  if (s == "unit") return GeneratorScaling::Unit;
  throw PreconditionError("generator scaling must be 'half' or 'unit'");
}

/// C_t: multiply each label by e^{-t lambda^2 / 2}.
inline SpectralCoefficients ct_transform(const SpectralCoefficients& c, double t) {
  if (!(t > 0.0)) throw PreconditionError("ct_transform: t must be positive");
  return c.apply([t](const IrrepEntry& e) { return std::exp(-0.5 * t * e.lambda2); });
}

inline double nu_t(std::span<const double> y, double t) {
  if (!(t > 0.0)) throw PreconditionError("nu_t: t must be positive");
  double r2 = 0.0;
  for (double v : y) r2 += v * v;
  return std::pow(std::numbers::pi * t, -0.5 * double(y.size())) * std::exp(-r2 / t);
}

inline double nu_t(double y, double t) { return nu_t(std::span<const double>(&y, 1), t); }

/// int_R e^{2 m y} nu_r(y) dy by quadrature (one-dimensional factor).
inline QuadratureResult nu_moment(int m, double r, const QuadratureSpec& spec = {}) {
  const double c = m * r, w = 12.0 * std::sqrt(r);
  auto f = [m, r](double y) { return std::exp(2.0 * m * y) * nu_t(y, r); };
  return integrate_with_breaks(f, {c - w, c, c + w}, spec.with_tolerance(1e-300, 1e-13));
}

/// Moment identity int e^{2my} nu_r = e^{r m^2} for |m| <= m_max.
inline std::vector<VerificationReport> check_nu_moments(int m_max, double r, double tol = 1e-8) {
  std::vector<VerificationReport> out;
  for (int m = 0; m <= m_max; ++m) {
    const double lhs = nu_moment(m, r).value;
    const double rhs = std::exp(r * m * m);
    out.push_back(VerificationReport::compare("nu_moment/m=" + std::to_string(m) + "/r=" + std::to_string(r), lhs,
                                              rhs, tol, {{"m", m}, {"r", r}}));
  }
  return out;
}

/// w_{t,gamma}(y) = (1/Gamma(2 gamma)) int_0^t (t-r)^{2 gamma - 1} nu_r(y) dr, one-dimensional y.
///
/// nu_r(y) = r^{-1/2} [pi^{-1/2} e^{-y^2/r}]; the bracket is bounded at r = 0,
/// so the r^{-1/2} factor is declared as a left endpoint singularity.
inline double w_t_gamma(double y, double t, double gamma, const QuadratureSpec& spec = {}) {
  if (!(t > 0.0) || !(gamma > 0.0)) throw PreconditionError("w_t_gamma: t and gamma must be positive");
  const double y2 = y * y;
  auto smooth = [y2](double r) { return r > 0.0 ? std::exp(-y2 / r) / std::sqrt(std::numbers::pi) : (y2 == 0.0 ? 1.0 / std::sqrt(std::numbers::pi) : 0.0); };
  QuadratureSpec s = spec.with_tolerance(1e-300, std::min(spec.rel_tol, 1e-12));
  return riemann_liouville(smooth, t, 2.0 * gamma, s, -0.5).value;
}

/// Density on the complexified torus T^1_C, a function of y only.
class WeightDensity {
 public:
  enum class Kind { Nu, WGamma, Custom };

  static WeightDensity nu(double t) {
    if (!(t > 0.0)) throw PreconditionError("nu weight: t must be positive");
    static const bool moments_ok = all_pass(check_nu_moments(5, 1.0));
    if (!moments_ok) throw std::logic_error("nu_t closed form fails its moment identity");
    WeightDensity w(Kind::Nu, t, 0.0, [t](double y) { return nu_t(y, t); });
    w.finish();
    return w;
  }

  static WeightDensity w_gamma(double t, double gamma, const QuadratureSpec& spec = {}) {
    if (!(t > 0.0) || !(gamma > 0.0)) throw PreconditionError("w weight: t and gamma must be positive");
    WeightDensity w(Kind::WGamma, t, gamma, [t, gamma, spec](double y) { return w_t_gamma(y, t, gamma, spec); });
    w.finish();
    return w;
  }

  /// `scale_t` sets the y-range used by the integrability check and default radii.
  static WeightDensity custom(std::function<double(double)> f, double scale_t, std::string name = "custom") {
    WeightDensity w(Kind::Custom, scale_t, 0.0, std::move(f));
    w.name_ = std::move(name);
    w.finish();
    return w;
  }

  double operator()(double y) const { return eval_(y); }
  Kind kind() const { return kind_; }
  double t() const { return t_; }
  double gamma() const { return gamma_; }
  const std::string& name() const { return name_; }
  /// int_R weight(y) dy, computed numerically at construction.
  double mass() const { return mass_; }

  /// Closed-form mass: 1 for nu_t, t^{2 gamma}/Gamma(2 gamma + 1) for w_{t,gamma}.
  double exact_mass() const {
    switch (kind_) {
      case Kind::Nu: return 1.0;
      case Kind::WGamma: return std::pow(t_, 2.0 * gamma_) / gamma_fn(2.0 * gamma_ + 1.0);
      default: return std::numeric_limits<double>::quiet_NaN();
    }
  }

  /// Upper bound on int_{|y|>Y} e^{-2 m y} weight(y) dy. Infinite for custom weights.
  double tail_factor(int m, double Y) const {
    if (kind_ == Kind::Custom) return std::numeric_limits<double>::infinity();
    const double am = std::abs(m), st = std::sqrt(t_);
    const double g = std::exp(t_ * am * am) * 0.5 *
                     (std::erfc((Y - am * t_) / st) + std::erfc((Y + am * t_) / st));
    return kind_ == Kind::Nu ? g : g * exact_mass();
  }

 private:
  WeightDensity(Kind k, double t, double gamma, std::function<double(double)> f)
      : kind_(k), t_(t), gamma_(gamma), eval_(std::move(f)) {
    name_ = k == Kind::Nu ? "nu_t" : (k == Kind::WGamma ? "w_t_gamma" : "custom");
  }

  void finish() {
    const double R = 14.0 * std::sqrt(t_);
    QuadratureSpec s;
    s.abs_tol = 1e-14;
    s.rel_tol = 1e-10;
    const QuadratureResult r = integrate_with_breaks(*this, {-R, 0.0, R}, s);
    mass_ = r.value;
    if (!std::isfinite(mass_) || !(mass_ > 0.0)) throw PreconditionError("weight density is not integrable");
    for (double y : {-R, -1e-3, 0.0, 1e-3, R})
      if (!(eval_(y) >= 0.0)) throw PreconditionError("weight density must be nonnegative");
  }

  Kind kind_;
  double t_;
  double gamma_;
  std::function<double(double)> eval_;
  std::string name_;
  double mass_ = 0.0;
};

struct BergmanOptions {
  double y_max = 0.0;  // 0: choose from the weight's Gaussian tail
  int x_points = 0;    // 0: 4N + 4
  double tol = 1e-10;  // relative tolerance on the norm (quadrature + tail)
};

struct BergmanNorm {
  double value = 0.0;
  double quadrature_error = 0.0;
  double tail_bound = 0.0;
  double y_max = 0.0;
  int x_points = 0;
  std::size_t evaluations = 0;
};

namespace detail {

// x-average of |F(x+iy)|^2 on the torus by the M-point trapezoid rule.
inline double x_average(const std::vector<std::pair<int, cplx>>& terms, int M, double y) {
  double acc = 0.0;
  for (int j = 0; j < M; ++j) {
    const double x = 2.0 * std::numbers::pi * j / M;
    cplx F{};
    for (const auto& [m, c] : terms) F += c * std::exp(cplx(-m * y, m * x));
    acc += std::norm(F);
  }
  return acc / M;
}

}  // namespace detail

/// int_0^{2pi} int_{-Y}^{Y} |F(x+iy)|^2 weight(y) dy dx/(2pi) for F given by torus-1 coefficients
/// (F = sum c_m e^{i m z}). Trapezoid in x is exact for the band-limited |F|^2; y uses
/// adaptive Gauss-Legendre split at y = 0.
inline BergmanNorm bergman_norm(const SpectralCoefficients& F, const WeightDensity& weight,
                                 const BergmanOptions& opts = {}) {
  const IrrepSpectrum& spec = F.spectrum();
  if (spec.group() != Group::torus(1)) throw PreconditionError("bergman_norm: torus-1 coefficients required");
  const int N = spec.cutoff();

  std::vector<std::pair<int, cplx>> terms;
  double scale = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) {
    if (F[i] == cplx{}) continue;
    const int m = spec[i].label[0];
    terms.emplace_back(m, F[i]);
    scale += std::norm(F[i]) * weight.tail_factor(m, 0.0);
  }
  BergmanNorm out;
  out.x_points = opts.x_points > 0 ? opts.x_points : 4 * N + 4;
  if (out.x_points <= 2 * N) throw PreconditionError("bergman_norm: x grid must exceed 2N points");
  if (terms.empty()) return out;

  const double st = std::sqrt(weight.t());
  auto tail_at = [&](double Y) {
    double s = 0.0;
    for (const auto& [m, c] : terms) s += std::norm(c) * weight.tail_factor(m, Y);
    return s;
  };
  const bool bounded = weight.kind() != WeightDensity::Kind::Custom;
  if (opts.y_max > 0.0) {
    out.y_max = opts.y_max;
  } else {
    double Y = std::max(4.0 * st, 4.0 * st + N * weight.t());
    if (bounded) {
      for (int it = 0; it < 200 && tail_at(Y) > 1e-3 * opts.tol * scale; ++it) Y += st;
    } else {
      Y += 4.0 * st;
    }
    out.y_max = Y;
  }

  auto integrand = [&](double y) { return detail::x_average(terms, out.x_points, y) * weight(y); };
  QuadratureSpec q;
  q.abs_tol = 1e-300;
  q.rel_tol = std::min(1e-11, 1e-2 * opts.tol);
  q.max_levels = 30;
  const QuadratureResult r = integrate_with_breaks(integrand, {-out.y_max, 0.0, out.y_max}, q);
  out.value = r.value;
  out.quadrature_error = r.error;
  out.evaluations = r.evaluations;
  if (bounded) {
    out.tail_bound = tail_at(out.y_max);
  } else {
    // Estimated from the next strip out.
    const double Y = out.y_max;
    out.tail_bound = integrate_with_breaks(integrand, {Y, Y + 8.0 * st}, q).value +
                     integrate_with_breaks(integrand, {-Y - 8.0 * st, -Y}, q).value;
  }
  if (out.tail_bound > opts.tol * std::abs(out.value))
    throw TruncationError("bergman_norm: enlarge the y truncation radius", out.tail_bound);
  return out;
}

/// Bergman norm of C_t f against nu_t compared with the Plancherel mass of f.
inline VerificationReport verify_isometry(const SpectralCoefficients& f, double t, double tol = 1e-6,
                                          const BergmanOptions& opts = {}) {
  const BergmanNorm b = bergman_norm(ct_transform(f, t), WeightDensity::nu(t), opts);
  VerificationReport r = VerificationReport::compare("isometry/t=" + std::to_string(t), b.value, f.l2_norm_squared(),
                                                     tol, {{"t", t}, {"cutoff", f.spectrum().cutoff()}});
  r.meta = {{"y_max", b.y_max}, {"x_points", b.x_points}, {"quadrature_error", b.quadrature_error},
            {"tail_bound", b.tail_bound}, {"convention", "half"}};
  return r;
}

/// sigma_{t,gamma}(lambda^2) = (1/Gamma(2 gamma)) int_0^t (t-r)^{2 gamma - 1} e^{r lambda^2} dr by quadrature.
inline double sigma_t_gamma(double t, double gamma, double lambda2, const QuadratureSpec& spec = {}) {
  auto f = [lambda2](double r) { return std::exp(r * lambda2); };
  return riemann_liouville(f, t, 2.0 * gamma, spec.with_tolerance(1e-300, 1e-13)).value;
}

/// Weighted equality: int |C_t f|^2 w_{t,gamma} = sum d ||pi(f)||^2 e^{-t lambda^2} sigma_{t,gamma},
/// with e^{-t lambda^2} sigma_{t,gamma} = truncated_gamma(t, 2 gamma, lambda^2).
inline VerificationReport verify_weighted_bergman(const SpectralCoefficients& f, double t, double gamma, double tol = 1e-6,
                                       const BergmanOptions& opts = {}) {
  const BergmanNorm b = bergman_norm(ct_transform(f, t), WeightDensity::w_gamma(t, gamma), opts);
  double rhs = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] != cplx{}) rhs += f.plancherel_mass(i) * truncated_gamma(t, 2.0 * gamma, f.spectrum()[i].lambda2);
  VerificationReport r =
      VerificationReport::compare("weighted_bergman/t=" + std::to_string(t) + "/gamma=" + std::to_string(gamma), b.value, rhs,
                                  tol, {{"t", t}, {"gamma", gamma}, {"cutoff", f.spectrum().cutoff()}});
  r.meta = {{"y_max", b.y_max}, {"x_points", b.x_points}, {"quadrature_error", b.quadrature_error},
            {"tail_bound", b.tail_bound}, {"convention", "unit"}};
  return r;
}

}  // namespace sbt
