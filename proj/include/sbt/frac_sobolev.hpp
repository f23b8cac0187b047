#pragma once

// Fractional Sobolev norms on the torus / SU(2) spectral side and their
// holomorphic counterparts on the complexified torus.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "sbt/errors.hpp"
#include "sbt/report.hpp"
#include "sbt/segal_bargmann.hpp"
#include "sbt/specfun.hpp"
#include "sbt/spectrum.hpp"

namespace sbt {

struct SobolevParams {
  double s = 1.0;
  double t = 1.0;
  GeneratorScaling scaling = GeneratorScaling::Half;

  /// Smallest integer with s/2 < m.
  int m() const { return static_cast<int>(std::floor(0.5 * s)) + 1; }
  /// m - s/2, always in (0, 1].
  double gamma() const { return m() - 0.5 * s; }

  void validate() const {
    if (!(s >= 0.0) || !std::isfinite(s)) throw PreconditionError("sobolev order s must be nonnegative");
    if (!(t > 0.0)) throw PreconditionError("sobolev: t must be positive");
  }
};

struct NormBundle {
  double l2 = 0.0;
  double hs = 0.0;
  double hts = 0.0;
  double bergman_s = std::numeric_limits<double>::quiet_NaN();
  double holo_s = std::numeric_limits<double>::quiet_NaN();
  std::map<std::string, double> errors;
};

inline nlohmann::json to_json(const NormBundle& b) {
  auto num = [](double v) -> nlohmann::json {
    if (std::isfinite(v)) return v;
    return nullptr;
  };
  nlohmann::json j = {{"l2", num(b.l2)}, {"hs", num(b.hs)}, {"hts", num(b.hts)},
                      {"bergman_s", num(b.bergman_s)}, {"holo_s", num(b.holo_s)}};
  j["errors"] = nlohmann::json::object();
  for (const auto& [k, v] : b.errors) j["errors"][k] = num(v);
  return j;
}

/// sum d ||pi(f)||^2 truncated_gamma(t, 2 gamma, k lambda^2), k = 1 (unit) or 1/2 (half).
inline double norm_t_gamma(const SpectralCoefficients& c, double t, double gamma,
                           GeneratorScaling g = GeneratorScaling::Unit) {
  if (!(gamma > 0.0)) throw PreconditionError("norm_t_gamma: gamma must be positive");
  const double k = scaling_factor(g);
  double acc = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != cplx{}) acc += c.plancherel_mass(i) * truncated_gamma(t, 2.0 * gamma, k * c.spectrum()[i].lambda2);
  return acc;
}

/// R_t^gamma: per-label truncated_gamma(t, gamma, k lambda^2).
inline SpectralCoefficients r_t_gamma(const SpectralCoefficients& c, double t, double gamma,
                                      GeneratorScaling g = GeneratorScaling::Unit) {
  if (!(gamma > 0.0)) throw PreconditionError("r_t_gamma: gamma must be positive");
  const double k = scaling_factor(g);
  return c.apply([&](const IrrepEntry& e) { return truncated_gamma(t, gamma, k * e.lambda2); });
}

namespace detail {
inline double lambda_power(double lambda2, double s) {
  if (s == 0.0) return 1.0;
  return lambda2 == 0.0 ? 0.0 : std::pow(lambda2, 0.5 * s);
}
}  // namespace detail

/// (-Delta)^{s/2} on K: per-label lambda^s.
inline SpectralCoefficients frac_laplacian(const SpectralCoefficients& c, double s) {
  if (!(s >= 0.0)) throw PreconditionError("frac_laplacian: s must be nonnegative");
  return c.apply([s](const IrrepEntry& e) { return detail::lambda_power(e.lambda2, s); });
}

/// (-Delta_C)^{s/2} acting on the coefficients of F = sum c_pi chi_pi-type expansions on G.
inline SpectralCoefficients frac_laplacian_c(const SpectralCoefficients& cF, double s) {
  return frac_laplacian(cF, s);
}

/// (-Delta_C)^m, integer m >= 0.
inline SpectralCoefficients laplacian_c_power(const SpectralCoefficients& cF, int m) {
  if (m < 0) throw PreconditionError("laplacian_c_power: m must be nonnegative");
  return frac_laplacian(cF, 2.0 * m);
}

/// Multiplier of C_t^s at one frequency: lambda^{2m} mu_{t, m - s/2} e^{-t lambda^2 / 2},
/// mu using e^{-k r lambda^2}. The (-1)^m sign is dropped.
inline double cts_multiplier(double lambda2, const SobolevParams& p) {
  p.validate();
  if (lambda2 == 0.0) return 0.0;
  const double k = scaling_factor(p.scaling);
  return std::pow(lambda2, p.m()) * truncated_gamma(p.t, p.gamma(), k * lambda2) * std::exp(-0.5 * p.t * lambda2);
}

inline SpectralCoefficients cts_transform(const SpectralCoefficients& c, const SobolevParams& p) {
  return c.apply([&](const IrrepEntry& e) { return cts_multiplier(e.lambda2, p); });
}

inline SpectralCoefficients cts_transform(const SpectralCoefficients& c, double t, double s) {
  return cts_transform(c, SobolevParams{s, t, GeneratorScaling::Half});
}

/// sum d ||pi(f)||^2 lambda^{2s}: the H^s seminorm wired into NormBundle.
inline double hs_norm(const SpectralCoefficients& c, double s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i)
    acc += c.plancherel_mass(i) * detail::lambda_power(c.spectrum()[i].lambda2, 2.0 * s);
  return acc;
}

/// sum d ||pi(f)||^2 lambda^{s}, the weighting displayed in the introduction.
inline double hs_norm_lambda_s(const SpectralCoefficients& c, double s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i)
    acc += c.plancherel_mass(i) * detail::lambda_power(c.spectrum()[i].lambda2, s);
  return acc;
}

/// ||f||_2^2 + ||(-Delta)^m f||^2_{t, m - s/2}, always with the unit generator.
inline double hts_norm(const SpectralCoefficients& c, const SobolevParams& p) {
  p.validate();
  double acc = c.l2_norm_squared();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double l2 = c.spectrum()[i].lambda2;
    if (c[i] == cplx{} || l2 == 0.0) continue;
    acc += c.plancherel_mass(i) * std::pow(l2, 2 * p.m()) * truncated_gamma(p.t, 2.0 * p.gamma(), l2);
  }
  return acc;
}

/// sum d ||pi(f)||^2 lambda^{4m} mu_{t, m - s/2}^2: the nu_t Bergman norm of C_t^s f on the spectral side.
inline double cts_norm_spectral(const SpectralCoefficients& c, const SobolevParams& p) {
  double acc = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == cplx{}) continue;
    const double l2 = c.spectrum()[i].lambda2;
    const double mult = cts_multiplier(l2, p) * std::exp(0.5 * p.t * l2);
    acc += c.plancherel_mass(i) * mult * mult;
  }
  return acc;
}

/// Spectral entries plus, on torus-1, the two quadrature norms:
///   bergman_s = int |C_t^s f|^2 nu_t,
///   holo_s    = int |C_t f|^2 nu_t + int |(-Delta_C)^m C_t f|^2 w_{t, m - s/2}.
/// hts uses the unit generator e^{r Delta}, which is the convention under which holo_s = hts.
inline NormBundle holo_sobolev_norm(const SpectralCoefficients& c, const SobolevParams& p,
                                    const BergmanOptions& opts = {}) {
  p.validate();
  NormBundle b;
  b.l2 = c.l2_norm_squared();
  b.hs = hs_norm(c, p.s);
  b.hts = hts_norm(c, p);
  if (c.spectrum().group() != Group::torus(1)) return b;

  const SpectralCoefficients F = ct_transform(c, p.t);
  const BergmanNorm b0 = bergman_norm(F, WeightDensity::nu(p.t), opts);
  const SpectralCoefficients DF = laplacian_c_power(F, p.m());
  bool any = false;
  for (const cplx& v : DF.values()) any = any || v != cplx{};
  BergmanNorm b1;
  if (any) b1 = bergman_norm(DF, WeightDensity::w_gamma(p.t, p.gamma()), opts);
  b.holo_s = b0.value + b1.value;
  b.errors["holo_s_quadrature"] = b0.quadrature_error + b1.quadrature_error;
  b.errors["holo_s_tail"] = b0.tail_bound + b1.tail_bound;

  const BergmanNorm bs = bergman_norm(cts_transform(c, p), WeightDensity::nu(p.t), opts);
  b.bergman_s = bs.value;
  b.errors["bergman_s_quadrature"] = bs.quadrature_error;
  b.errors["bergman_s_tail"] = bs.tail_bound;
  return b;
}

/// Isometry ||f||_{(t,s)} = ||C_t f||_{(s)} and the nu_t norm identity for C_t^s.
inline std::vector<VerificationReport> verify_sobolev_norms(const SpectralCoefficients& c, double t, double s,
                                                       double tol = 1e-5, const BergmanOptions& opts = {}) {
  const SobolevParams p{s, t, GeneratorScaling::Half};
  const NormBundle b = holo_sobolev_norm(c, p, opts);
  const std::map<std::string, double> params{{"t", t}, {"s", s}, {"m", p.m()}, {"cutoff", c.spectrum().cutoff()}};
  const std::string tag = "/t=" + std::to_string(t) + "/s=" + std::to_string(s);
  std::vector<VerificationReport> out;
  VerificationReport iso = VerificationReport::compare("sobolev_isometry" + tag, b.holo_s, b.hts, tol, params);
  iso.meta = to_json(b);
  iso.meta["convention"] = "unit";
  out.push_back(iso);
  VerificationReport cts =
      VerificationReport::compare("cts_bergman" + tag, b.bergman_s, cts_norm_spectral(c, p), tol, params);
  cts.meta = {{"convention", "half"}, {"hs", b.hs}};
  out.push_back(cts);
  return out;
}

struct EquivalenceConstants {
  double c1 = std::numeric_limits<double>::infinity();   // min ratio ||C_t^s f||^2 / ||f||^2_(s)
  double c2 = 0.0;                                        // max ratio
  double multiplier_inf = std::numeric_limits<double>::infinity();  // sharp bounds over the spectrum
  double multiplier_sup = 0.0;
  double ratio() const { return c2 / c1; }
};

/// Empirical constants C_1, C_2 over the given functions (constants excluded), with the
/// ratio ||C_t^s f||^2_{B(nu_t)} / sum d lambda^{2s} ||pi(f)||^2. When `quadrature` is set the
/// numerator is the torus quadrature, otherwise the spectral sum.
inline EquivalenceConstants equivalence_constants(const std::vector<SpectralCoefficients>& fs,
                                                  const SobolevParams& p, bool quadrature = false,
                                                  const BergmanOptions& opts = {}) {
  EquivalenceConstants e;
  for (const auto& f : fs) {
    const double den = hs_norm(f, p.s);
    if (!(den > 0.0)) continue;
    const double num = quadrature ? bergman_norm(cts_transform(f, p), WeightDensity::nu(p.t), opts).value
                                  : cts_norm_spectral(f, p);
    e.c1 = std::min(e.c1, num / den);
    e.c2 = std::max(e.c2, num / den);
  }
  if (!fs.empty()) {
    const IrrepSpectrum& sp = fs.front().spectrum();
    for (const IrrepEntry& en : sp.entries()) {
      if (en.lambda2 == 0.0) continue;
      const double m = cts_multiplier(en.lambda2, p) * std::exp(0.5 * p.t * en.lambda2);
      const double r = m * m / std::pow(en.lambda2, p.s);
      e.multiplier_inf = std::min(e.multiplier_inf, r);
      e.multiplier_sup = std::max(e.multiplier_sup, r);
    }
  }
  return e;
}

}  // namespace sbt
