#pragma once

// Verification suites driven by RunConfig. Each suite is a list of tasks run
// on a small worker pool; the merged report list is sorted by id.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "sbt/config.hpp"
#include "sbt/extension.hpp"
#include "sbt/frac_sobolev.hpp"
#include "sbt/hermite.hpp"
#include "sbt/random.hpp"
#include "sbt/report.hpp"
#include "sbt/segal_bargmann.hpp"
#include "sbt/spectrum.hpp"

namespace sbt {

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"plancherel", "isometry", "thm22",   "extension",      "gutzmer",
                                              "eq31",       "eq32",     "sobolev", "hermite-sobolev"};
  return names;
}

inline bool is_suite(const std::string& s) {
  return s == "all" || std::find(suite_names().begin(), suite_names().end(), s) != suite_names().end();
}

struct SuiteTask {
  std::string name;
  std::function<std::vector<VerificationReport>()> run;
};

/// Runs tasks on min(hardware threads, tasks) workers. A task that throws yields one failed report.
inline std::vector<VerificationReport> run_tasks(const std::vector<SuiteTask>& tasks) {
  std::vector<std::vector<VerificationReport>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = tasks[i].run();
      } catch (const std::exception& e) {
        VerificationReport r;
        r.id = tasks[i].name + "/error";
        r.lhs = r.rhs = r.abs_err = r.rel_err = std::numeric_limits<double>::quiet_NaN();
        r.pass = false;
        r.meta = {{"error", e.what()}};
        results[i] = {r};
      }
    }
  };
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(tasks.size(), std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  std::vector<VerificationReport> out;
  for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

namespace detail {

inline std::vector<double> list_or(double v, std::vector<double> fallback) {
  return std::isnan(v) ? fallback : std::vector<double>{v};
}
inline double tol_or(const RunConfig& c, double fallback) { return std::isnan(c.tol) ? fallback : c.tol; }

inline std::string num(double v) { return std::to_string(v); }

inline VerificationReport tagged(VerificationReport r, const std::string& suffix) {
  r.id += suffix;
  return r;
}

// Integral of |f|^2 against Haar measure by adaptive quadrature on the real group.
inline double haar_l2_quadrature(const SpectralCoefficients& c) {
  const IrrepSpectrum& sp = c.spectrum();
  const int N = sp.cutoff();
  const double two_pi = 2.0 * std::numbers::pi;
  QuadratureSpec q;
  q.abs_tol = 1e-300;
  q.rel_tol = 1e-13;
  q.max_levels = 30;
  std::vector<double> breaks;
  for (int j = 0; j <= 8; ++j) breaks.push_back(two_pi * j / 8);
  if (sp.group().kind == GroupKind::SU2) {
    auto f = [&](double th) {
      const std::vector<cplx> chi = su2_characters(N, th);
      cplx acc{};
      for (std::size_t i = 0; i < sp.size(); ++i) acc += double(sp[i].dim) * c[i] * chi[sp[i].label[0]];
      const double s = std::sin(th);
      return std::norm(acc) * s * s;
    };
    std::vector<double> half;
    for (int j = 0; j <= 8; ++j) half.push_back(std::numbers::pi * j / 8);
    return 2.0 / std::numbers::pi * integrate_with_breaks(f, half, q).value;
  }
  if (sp.group().dim == 1) {
    auto f = [&](double x) {
      cplx acc{};
      for (std::size_t i = 0; i < sp.size(); ++i) acc += c[i] * std::exp(cplx(0.0, sp[i].label[0] * x));
      return std::norm(acc);
    };
    return integrate_with_breaks(f, breaks, q).value / two_pi;
  }
  if (sp.group().dim != 2) throw PreconditionError("plancherel quadrature supports torus-1, torus-2 and su2");
  const int side = 2 * N + 1;
  std::vector<cplx> grid(std::size_t(side) * side, cplx{});
  for (std::size_t i = 0; i < sp.size(); ++i)
    grid[std::size_t(sp[i].label[0] + N) * side + (sp[i].label[1] + N)] = c[i];
  auto row = [&](double x1) {
    std::vector<cplx> g(side, cplx{});
    for (int a = 0; a < side; ++a) {
      const cplx e = std::exp(cplx(0.0, (a - N) * x1));
      for (int b = 0; b < side; ++b) g[b] += grid[std::size_t(a) * side + b] * e;
    }
    auto inner = [&](double x2) {
      cplx acc{};
      for (int b = 0; b < side; ++b) acc += g[b] * std::exp(cplx(0.0, (b - N) * x2));
      return std::norm(acc);
    };
    return integrate_with_breaks(inner, breaks, q).value / two_pi;
  };
  QuadratureSpec outer = q;
  outer.rel_tol = 1e-12;
  return integrate_with_breaks(row, breaks, outer).value / two_pi;
}

}  // namespace detail

/// Quadrature of |f|^2 versus the Plancherel sum of the FFT / character analysis of samples of f.
inline VerificationReport verify_plancherel(const SpectralCoefficients& c, double tol = 1e-10) {
  const IrrepSpectrum& sp = c.spectrum();
  const int N = sp.cutoff();
  GridFunction g;
  if (sp.group().kind == GroupKind::SU2) {
    g = GridFunction::sample_su2(2 * N + 4, [&](double th) {
      const std::vector<cplx> chi = su2_characters(N, th);
      cplx acc{};
      for (std::size_t i = 0; i < sp.size(); ++i) acc += double(sp[i].dim) * c[i] * chi[sp[i].label[0]];
      return acc;
    });
  } else {
    g = GridFunction::sample_torus(sp.group().dim, 4 * N + 4, [&](const std::vector<double>& x) {
      cplx acc{};
      for (std::size_t i = 0; i < sp.size(); ++i) {
        double ph = 0.0;
        for (std::size_t d = 0; d < x.size(); ++d) ph += sp[i].label[d] * x[d];
        acc += c[i] * std::exp(cplx(0.0, ph));
      }
      return acc;
    });
  }
  const double spectral = analyze(g, c.spectrum_ptr()).l2_norm_squared();
  const double quad = detail::haar_l2_quadrature(c);
  VerificationReport r = VerificationReport::compare("plancherel/" + sp.group().name(), quad, spectral, tol,
                                                     {{"cutoff", N}, {"grid", g.nx}});
  r.meta = {{"coefficient_sum", c.l2_norm_squared()}};
  return r;
}

inline std::vector<SuiteTask> plancherel_tasks(const RunConfig& cfg) {
  std::vector<SuiteTask> tasks;
  const double tol = detail::tol_or(cfg, 1e-10);
  for (const Group g : {Group::torus(1), Group::torus(2), Group::su2()}) {
    const int N = g.kind == GroupKind::Torus && g.dim == 2 ? std::min(cfg.cutoff, 8) : cfg.cutoff;
    for (int j = 0; j < cfg.count; ++j)
      tasks.push_back({"plancherel/" + g.name() + "/f=" + std::to_string(j), [=] {
                         const auto c = random_coefficients(enumerate_spectrum(g, N), cfg.seed, 100 + j);
                         return std::vector{detail::tagged(verify_plancherel(c, tol), "/f=" + std::to_string(j))};
                       }});
  }
  return tasks;
}

inline std::vector<SuiteTask> isometry_tasks(const RunConfig& cfg) {
  std::vector<SuiteTask> tasks;
  const double tol = detail::tol_or(cfg, 1e-6);
  tasks.push_back({"nu_moment", [=] {
                     std::vector<VerificationReport> out;
                     for (double r : {0.5, 1.0}) {
                       auto part = check_nu_moments(5, r, detail::tol_or(cfg, 1e-8));
                       out.insert(out.end(), part.begin(), part.end());
                     }
                     return out;
                   }});
  const auto spec = enumerate_spectrum(Group::torus(1), cfg.cutoff);
  for (double t : detail::list_or(cfg.t, {0.25, 0.5, 1.0})) {
    tasks.push_back({"isometry/t=" + detail::num(t) + "/mode", [=] {
                       SpectralCoefficients c(spec);
                       c.set({cfg.cutoff}, 1.0);
                       return std::vector{detail::tagged(verify_isometry(c, t, tol, cfg.bergman()), "/mode")};
                     }});
    for (int j = 0; j < 3; ++j)
      tasks.push_back({"isometry/t=" + detail::num(t) + "/f=" + std::to_string(j), [=] {
                         const auto c = random_coefficients(spec, cfg.seed, 200 + j);
                         return std::vector{
                             detail::tagged(verify_isometry(c, t, tol, cfg.bergman()), "/f=" + std::to_string(j))};
                       }});
  }
  return tasks;
}

inline std::vector<SuiteTask> weighted_bergman_tasks(const RunConfig& cfg) {
  std::vector<SuiteTask> tasks;
  const double tol = detail::tol_or(cfg, 1e-6);
  const auto spec = enumerate_spectrum(Group::torus(1), cfg.cutoff);
  for (double t : detail::list_or(cfg.t, {0.5, 1.0}))
    for (double g : detail::list_or(cfg.gamma, {0.25, 0.5, 1.0}))
      for (int j = 0; j < 2; ++j)
        tasks.push_back({"weighted_bergman/t=" + detail::num(t) + "/gamma=" + detail::num(g) + "/f=" + std::to_string(j), [=] {
                           const auto c = random_coefficients(spec, cfg.seed, 300 + j);
                           return std::vector{
                               detail::tagged(verify_weighted_bergman(c, t, g, tol, cfg.bergman()), "/f=" + std::to_string(j))};
                         }});
  return tasks;
}

/// lambda^{4 gamma} truncated_gamma(t, 2 gamma, lambda^2) over lambda^2 = 1..lambda2_max:
/// inside (0, 1], nondecreasing, and within `tol` of 1 at the end.
inline VerificationReport verify_multiplier_bounds(double t, double gamma, int lambda2_max = 400, double tol = 1e-6) {
  double prev = 0.0, lo = HUGE_VAL, hi = 0.0;
  bool in_range = true, monotone = true;
  for (int l2 = 1; l2 <= lambda2_max; ++l2) {
    const double v = std::pow(double(l2), 2.0 * gamma) * truncated_gamma(t, 2.0 * gamma, double(l2));
    in_range = in_range && v > 0.0 && v <= 1.0 + 4.0 * std::numeric_limits<double>::epsilon();
    monotone = monotone && v >= prev * (1.0 - 4.0 * std::numeric_limits<double>::epsilon());
    prev = v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const bool limit = std::abs(1.0 - prev) <= tol;
  VerificationReport r = VerificationReport::predicate(
      "multiplier_bounds/t=" + detail::num(t) + "/gamma=" + detail::num(gamma), prev, 1.0, tol,
      in_range && monotone && limit, {{"t", t}, {"gamma", gamma}, {"lambda2_max", lambda2_max}});
  r.meta = {{"min", lo}, {"max", hi}, {"in_unit_interval", in_range}, {"monotone", monotone}};
  return r;
}

/// Relative change of C2/C1 for C_t^s under doubling the cutoff, over `count` random functions.
/// The functions decay so that their H^s level masses fall off like lambda^-3.
inline VerificationReport verify_equivalence_stability(const RunConfig& cfg, double t, double s, double tol = 0.05) {
  const SobolevParams p{s, t, cfg.scaling};
  auto family = [&](int N) {
    std::vector<SpectralCoefficients> fs;
    const auto spec = enumerate_spectrum(Group::torus(1), N);
    for (int j = 0; j < cfg.count; ++j) fs.push_back(random_coefficients(spec, cfg.seed, 400 + j, s + 1.5));
    return equivalence_constants(fs, p, true, cfg.bergman());
  };
  const EquivalenceConstants a = family(cfg.cutoff), b = family(2 * cfg.cutoff);
  const double drift = std::abs(b.ratio() / a.ratio() - 1.0);
  VerificationReport r = VerificationReport::predicate(
      "equivalence/t=" + detail::num(t) + "/s=" + detail::num(s), drift, 0.0, tol, drift < tol,
      {{"t", t}, {"s", s}, {"cutoff", cfg.cutoff}, {"count", cfg.count}});
  r.meta = {{"c1", a.c1}, {"c2", a.c2}, {"c1_doubled", b.c1}, {"c2_doubled", b.c2},
            {"multiplier_inf", b.multiplier_inf}, {"multiplier_sup", b.multiplier_sup},
            {"convention", to_string(cfg.scaling)}};
  return r;
}

inline std::vector<SuiteTask> sobolev_tasks(const RunConfig& cfg) {
  std::vector<SuiteTask> tasks;
  const double t0 = std::isnan(cfg.t) ? 1.0 : cfg.t;
  for (double t : detail::list_or(cfg.t, {0.5, 1.0}))
    for (double g : detail::list_or(cfg.gamma, {0.25, 0.5, 1.0}))
      tasks.push_back({"multiplier_bounds/t=" + detail::num(t) + "/gamma=" + detail::num(g),
                       [=] { return std::vector{verify_multiplier_bounds(t, g)}; }});
  const auto spec = enumerate_spectrum(Group::torus(1), cfg.cutoff);
  for (double s : detail::list_or(cfg.s, {0.5, 1.0, 1.5, 3.0}))
    tasks.push_back({"sobolev/t=" + detail::num(t0) + "/s=" + detail::num(s), [=] {
                       const auto c = random_coefficients(spec, cfg.seed, 500);
                       return verify_sobolev_norms(c, t0, s, detail::tol_or(cfg, 1e-5), cfg.bergman());
                     }});
  for (double s : detail::list_or(cfg.s, {0.5, 1.5}))
    tasks.push_back({"equivalence/s=" + detail::num(s),
                     [=] { return std::vector{verify_equivalence_stability(cfg, t0, s)}; }});
  return tasks;
}

inline std::vector<SuiteTask> extension_tasks(const RunConfig& cfg) {
  std::vector<SuiteTask> tasks;
  const std::vector<double> lambdas{1.0, 4.0, 9.0, 16.0};
  for (double s : detail::list_or(cfg.s, {0.3, 0.5, 0.7})) {
    tasks.push_back({"extension/order/s=" + detail::num(s), [=] {
                       std::vector<VerificationReport> out;
                       for (double l2 : {1.0, 9.0}) {
                         const double ord = residual_order(s, l2);
                         out.push_back(VerificationReport::predicate(
                             "extension/order/s=" + detail::num(s) + "/lambda2=" + detail::num(l2), ord, 2.0, 0.2,
                             std::abs(ord - 2.0) <= 0.2, {{"s", s}, {"lambda2", l2}, {"points_per_octave", 20}}));
                       }
                       return out;
                     }});
    if (s > 1.0) continue;
    tasks.push_back({"extension/boundary/s=" + detail::num(s), [=] {
                       std::vector<BoundaryLimit> b;
                       for (double l2 : lambdas) b.push_back(boundary_limit(s, l2));
                       double lo = HUGE_VAL, hi = -HUGE_VAL, mean = 0.0;
                       for (const auto& x : b) {
                         lo = std::min(lo, x.c_s);
                         hi = std::max(hi, x.c_s);
                         mean += x.c_s / b.size();
                       }
                       std::vector<VerificationReport> out;
                       const double spread = (hi - lo) / std::abs(mean);
                       VerificationReport sp = VerificationReport::predicate(
                           "extension/c_s_spread/s=" + detail::num(s), spread, 0.0, 0.01, spread < 0.01, {{"s", s}});
                       sp.meta = {{"c_s_mean", mean}, {"c_s_min", lo}, {"c_s_max", hi}};
                       out.push_back(sp);
                       for (std::size_t i = 1; i < b.size(); ++i) {
                         VerificationReport r = VerificationReport::compare(
                             "extension/lambda_s/s=" + detail::num(s) + "/lambda2=" + detail::num(lambdas[i]),
                             b[i].estimate / b[0].estimate, std::pow(lambdas[i], 0.5 * s), 0.005,
                             {{"s", s}, {"lambda2", lambdas[i]}});
                         r.meta = {{"extrapolation_error", b[i].error}, {"levels", b[i].levels}};
                         out.push_back(r);
                       }
                       return out;
                     }});
  }
  return tasks;
}

inline std::vector<SuiteTask> level_norm_tasks(const RunConfig& cfg) {
  std::vector<SuiteTask> tasks;
  const double tol = detail::tol_or(cfg, 1e-6);
  for (double t : detail::list_or(cfg.t, {0.2, 0.25}))
    for (int n : {1, 2})
      tasks.push_back({"level_norm/n=" + std::to_string(n) + "/t=" + detail::num(t), [=] {
                         std::vector<VerificationReport> out;
                         for (int k = 0; k <= (n == 1 ? 6 : 4); ++k) out.push_back(verify_level_norm(k, t, n, tol));
                         return out;
                       }});
  return tasks;
}

inline std::vector<SuiteTask> ut_closed_form_tasks(const RunConfig& cfg) {
  std::vector<SuiteTask> tasks;
  const double tol = detail::tol_or(cfg, 1e-8);
  for (double t : detail::list_or(cfg.t, {0.1, 0.25}))
    tasks.push_back({"ut_closed_form/t=" + detail::num(t), [=] {
                       std::vector<VerificationReport> out;
                       for (double xi : {-1.0, 0.0, 1.5})
                         for (double v : {0.0, 0.4, 1.0}) out.push_back(verify_ut_closed_form(t, v, xi, tol));
                       return out;
                     }});
  return tasks;
}

inline std::vector<SuiteTask> gutzmer_tasks(const RunConfig& cfg) {
  std::vector<SuiteTask> tasks;
  const double tol = detail::tol_or(cfg, 1e-6);
  for (int j = 0; j < 5; ++j)
    tasks.push_back({"gutzmer/f=" + std::to_string(j), [=] {
                       const HermiteExpansion e = random_expansion(1, 6, cfg.seed, 600 + j);
                       std::vector<VerificationReport> out;
                       for (double y : {0.0, 0.25, 0.5})
                         for (double v : {0.0, 0.25, 0.5})
                           out.push_back(detail::tagged(gutzmer(e, y, v, tol), "/f=" + std::to_string(j)));
                       return out;
                     }});
  return tasks;
}

/// Relative change of C2/C1 for T_t^s under doubling the level cutoff; level masses weighted by
/// (2k+n)^s fall off like k^-3.
inline VerificationReport verify_hermite_equivalence_stability(const RunConfig& cfg, double t, double s, int N,
                                                               double tol = 0.05) {
  auto family = [&](int cutoff) {
    std::vector<HermiteExpansion> fs;
    for (int j = 0; j < cfg.count; ++j) fs.push_back(random_expansion(1, cutoff, cfg.seed, 700 + j, 0.5 * s + 1.5));
    return hermite_equivalence_constants(fs, t, s, true);
  };
  const EquivalenceConstants a = family(N), b = family(2 * N);
  const double drift = std::abs(b.ratio() / a.ratio() - 1.0);
  VerificationReport r = VerificationReport::predicate(
      "hermite_equivalence/t=" + detail::num(t) + "/s=" + detail::num(s), drift, 0.0, tol, drift < tol,
      {{"t", t}, {"s", s}, {"cutoff", N}, {"count", cfg.count}});
  r.meta = {{"c1", a.c1}, {"c2", a.c2}, {"c1_doubled", b.c1}, {"c2_doubled", b.c2},
            {"multiplier_inf", b.multiplier_inf}, {"multiplier_sup", b.multiplier_sup}};
  return r;
}

inline std::vector<SuiteTask> hermite_sobolev_tasks(const RunConfig& cfg) {
  std::vector<SuiteTask> tasks;
  const double tol_iso = detail::tol_or(cfg, 1e-6), tol_sob = detail::tol_or(cfg, 1e-5);
  for (double t : detail::list_or(cfg.t, {0.1, 0.25, 0.5})) {
    tasks.push_back({"level_isometry/t=" + detail::num(t), [=] {
                       std::vector<VerificationReport> out;
                       for (int k = 0; k <= 8; ++k) out.push_back(verify_level_isometry(k, t, tol_iso));
                       return out;
                     }});
    for (int j = 0; j < 2; ++j)
      tasks.push_back({"hermite_isometry/t=" + detail::num(t) + "/f=" + std::to_string(j), [=] {
                         const HermiteExpansion e = random_expansion(1, 10, cfg.seed, 800 + j);
                         return std::vector{detail::tagged(verify_hermite_isometry(e, t, tol_iso), "/f=" + std::to_string(j))};
                       }});
  }
  const double t0 = std::isnan(cfg.t) ? 0.25 : cfg.t;
  for (double s : detail::list_or(cfg.s, {0.8, 1.2, 2.5})) {
    tasks.push_back({"hermite_sobolev/s=" + detail::num(s), [=] {
                       const HermiteExpansion e = random_expansion(1, 6, cfg.seed, 900);
                       return verify_hermite_sobolev(e, t0, s, tol_sob);
                     }});
    tasks.push_back({"hermite_equivalence/s=" + detail::num(s),
                     [=] { return std::vector{verify_hermite_equivalence_stability(cfg, t0, s, 8)}; }});
  }
  return tasks;
}

inline std::vector<SuiteTask> suite_tasks(const std::string& suite, const RunConfig& cfg) {
  if (suite == "plancherel") return plancherel_tasks(cfg);
  if (suite == "isometry") return isometry_tasks(cfg);
  if (suite == "thm22") return weighted_bergman_tasks(cfg);
  if (suite == "extension") return extension_tasks(cfg);
  if (suite == "gutzmer") return gutzmer_tasks(cfg);
  if (suite == "eq31") return level_norm_tasks(cfg);
  if (suite == "eq32") return ut_closed_form_tasks(cfg);
  if (suite == "sobolev") return sobolev_tasks(cfg);
  if (suite == "hermite-sobolev") return hermite_sobolev_tasks(cfg);
  if (suite == "all") {
    std::vector<SuiteTask> all;
    for (const auto& name : suite_names()) {
      auto part = suite_tasks(name, cfg);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw ConfigError("unknown suite '" + suite + "'");
}

/// Runs a suite; every report carries the seed, and ids are unique.
inline std::vector<VerificationReport> run_suite(const std::string& suite, const RunConfig& cfg) {
  cfg.validate();
  std::vector<VerificationReport> out = run_tasks(suite_tasks(suite, cfg));
  std::set<std::string> seen;
  for (auto& r : out) {
    r.params["seed"] = static_cast<double>(cfg.seed);
    if (!seen.insert(r.id).second) throw std::logic_error("duplicate report id " + r.id);
  }
  return out;
}

}  // namespace sbt
