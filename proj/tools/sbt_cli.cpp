// Batch front end: verification suites, transforms on complex grids, weight tables.
//
// Exit codes: 0 all checks passed, 1 a check failed or a computation error,
// 2 bad arguments, configuration or input files.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sbt/sbt.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::optional<std::string> group, out, config;
  std::optional<double> t, s, gamma, tol;
  std::optional<int> cutoff;
  std::optional<long long> seed;

  void add(CLI::App* app) {
    app->add_option("--group", group, "torus-1, torus-2, torus-3 or su2");
    app->add_option("--t", t, "time parameter");
    app->add_option("--s", s, "Sobolev order");
    app->add_option("--gamma", gamma, "Riemann-Liouville order");
    app->add_option("--cutoff", cutoff, "spectral cutoff N");
    app->add_option("--tol", tol, "override every tolerance");
    app->add_option("--seed", seed, "random seed for test functions");
    app->add_option("--config", config, "key=value configuration file");
    app->add_option("--out", out, "output directory");
  }

  sbt::RunConfig resolve() const {
    sbt::RunConfig c;
    if (config) c.apply(sbt::ConfigFile::load(*config));
    if (group) c.group = *group;
    if (out) c.out = *out;
    if (t) c.t = *t;
    if (s) c.s = *s;
    if (gamma) c.gamma = *gamma;
    if (tol) c.tol = *tol;
    if (cutoff) c.cutoff = *cutoff;
    if (seed) {
      if (*seed < 0) throw sbt::ConfigError("seed must be nonnegative");
      c.seed = static_cast<std::uint64_t>(*seed);
    }
    c.validate();
    return c;
  }
};

std::ofstream open_out(const sbt::RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.out);
  const fs::path p = fs::path(cfg.out) / name;
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  return os;
}

std::string table(const std::vector<sbt::VerificationReport>& reports) {
  std::ostringstream os;
  char line[512];
  std::snprintf(line, sizeof line, "%-52s %14s %14s %10s %9s  %s\n", "id", "lhs", "rhs", "rel_err", "tol", "pass");
  os << line;
  int failed = 0;
  for (const auto& r : reports) {
    std::snprintf(line, sizeof line, "%-52s %14.7e %14.7e %10.3e %9.1e  %s\n", r.id.c_str(), r.lhs, r.rhs, r.rel_err,
                  r.tol, r.pass ? "PASS" : "FAIL");
    os << line;
    if (!r.pass) ++failed;
  }
  os << reports.size() - failed << "/" << reports.size() << " passed\n";
  return os.str();
}

int cmd_verify(const std::string& suite, const Common& common) {
  if (!sbt::is_suite(suite)) throw UsageError("unknown suite '" + suite + "'");
  const sbt::RunConfig cfg = common.resolve();
  const auto reports = sbt::run_suite(suite, cfg);
  open_out(cfg, "report_" + suite + ".json") << sbt::to_json(reports).dump(2) << "\n";
  const std::string txt = table(reports);
  open_out(cfg, "report_" + suite + ".txt") << txt;
  std::cout << txt;
  return sbt::all_pass(reports) ? 0 : kExitFail;
}

struct GridOptions {
  int nx = 64;
  int ny = 9;
  double y_max = 1.0;
  double x_max = 4.0;  // Hermite xi range [-x_max, x_max]
};

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return v;
}

int cmd_transform(const std::string& kind, const std::string& input, const GridOptions& grid, const Common& common) {
  const sbt::RunConfig cfg = common.resolve();
  if (grid.nx < 1 || grid.ny < 1 || !(grid.y_max >= 0.0) || !(grid.x_max > 0.0))
    throw UsageError("grid sizes must be positive");
  const bool hermite = kind == "tt" || kind == "tts";
  if (!hermite && kind != "ct" && kind != "cts") throw UsageError("transform kind must be ct, cts, tt or tts");
  const double t = std::isnan(cfg.t) ? 1.0 : cfg.t;
  if ((kind == "cts" || kind == "tts") && std::isnan(cfg.s)) throw UsageError(kind + " requires --s");
  const double tol = std::isnan(cfg.tol) ? 1e-8 : cfg.tol;
  const std::vector<double> ys = linspace(-grid.y_max, grid.y_max, grid.ny);

  std::vector<sbt::GridSample> rows;
  bool warn = false;
  if (hermite) {
    sbt::HermiteExpansion e = sbt::random_expansion(1, cfg.cutoff, cfg.seed);
    if (!input.empty()) {
      std::ifstream in(input);
      if (!in) throw UsageError("cannot open " + input);
      e = sbt::read_expansion_csv(in, 1);
    }
    const sbt::HermiteExpansion F = kind == "tt" ? sbt::tt_transform(e, t) : sbt::tts_transform(e, t, cfg.s);
    for (double v : ys)
      for (double xi : linspace(-grid.x_max, grid.x_max, grid.nx)) rows.push_back({xi, v, F.evaluate(sbt::cplx(xi, v)), 0.0});
  } else {
    const sbt::Group g = sbt::parse_group(cfg.group);
    sbt::SpectralCoefficients c;
    if (!input.empty()) {
      std::ifstream in(input);
      if (!in) throw UsageError("cannot open " + input);
      c = sbt::read_coefficients_csv(in, g);
    } else {
      c = sbt::random_coefficients(sbt::enumerate_spectrum(g, cfg.cutoff), cfg.seed);
    }
    const sbt::SpectralCoefficients F =
        kind == "ct" ? sbt::ct_transform(c, t)
                     : sbt::cts_transform(c, sbt::SobolevParams{cfg.s, t, cfg.scaling});
    // Complex slice in the first coordinate; remaining torus coordinates are 0.
    const double period = g.kind == sbt::GroupKind::SU2 ? std::numbers::pi : 2.0 * std::numbers::pi;
    std::vector<sbt::ComplexPoint> pts;
    for (double y : ys)
      for (int j = 0; j < grid.nx; ++j) {
        sbt::ComplexPoint z(g.dim, sbt::cplx{});
        z[0] = sbt::cplx(period * (g.kind == sbt::GroupKind::SU2 ? j + 0.5 : j) / grid.nx, y);
        pts.push_back(z);
      }
    const sbt::SynthesisResult syn = sbt::synthesize(F, pts, tol);
    warn = syn.truncation_warning;
    for (std::size_t i = 0; i < pts.size(); ++i)
      rows.push_back({pts[i][0].real(), pts[i][0].imag(), syn.values[i], syn.tail_bound[i]});
  }
  auto os = open_out(cfg, "transform_" + kind + ".csv");
  sbt::write_grid_csv(os, rows, warn, hermite ? "xi" : "x", hermite ? "v" : "y");
  if (warn) std::cerr << "warning: series tail exceeds tolerance; see the tail_bound column\n";
  std::cout << rows.size() << " samples written to " << (fs::path(cfg.out) / ("transform_" + kind + ".csv")).string()
            << "\n";
  return 0;
}

int cmd_weights(const std::string& which, double lo, double hi, int points, double xi, bool overlay, bool svg,
                const Common& common) {
  const sbt::RunConfig cfg = common.resolve();
  if (points < 2 || !(hi > lo)) throw UsageError("weights: need points >= 2 and a nonempty range");
  const double t = std::isnan(cfg.t) ? 1.0 : cfg.t;
  const bool needs_gamma = which == "w" || which == "Ugamma";
  if (needs_gamma && std::isnan(cfg.gamma)) throw UsageError(which + " requires --gamma");
  if (which != "nu" && which != "w" && which != "U" && which != "Ugamma")
    throw UsageError("weights: expected nu, w, U or Ugamma");

  const std::vector<double> y = linspace(lo, hi, points);
  std::vector<double> value(points);
  std::vector<std::pair<std::string, std::vector<double>>> extra;
  const bool hermite = which == "U" || which == "Ugamma";
  std::optional<sbt::UtGammaRule> rule;
  if (which == "Ugamma") rule.emplace(t, cfg.gamma);
  for (int i = 0; i < points; ++i) {
    if (which == "nu") value[i] = sbt::nu_t(y[i], t);
    else if (which == "w") value[i] = sbt::w_t_gamma(y[i], t, cfg.gamma);
    else if (which == "U") value[i] = sbt::u_t(xi, y[i], t);
    else value[i] = (*rule)(xi, y[i]);
  }
  if (overlay) {
    std::vector<double> ref(points);
    for (int i = 0; i < points; ++i) ref[i] = hermite ? sbt::u_t(xi, y[i], t) : sbt::nu_t(y[i], t);
    double gap = 0.0, peak = 0.0;
    for (int i = 0; i < points; ++i) {
      gap = std::max(gap, std::abs(value[i] - ref[i]));
      peak = std::max(peak, std::abs(ref[i]));
    }
    std::cout << "max gap to " << (hermite ? "U_t" : "nu_t") << ": " << gap / peak << " (relative to its peak)\n";
    extra.emplace_back(hermite ? "U" : "nu", std::move(ref));
  }
  const std::string coord = hermite ? "v" : "y";
  auto os = open_out(cfg, "weights_" + which + ".csv");
  sbt::write_weight_csv(os, y, value, extra, coord);
  if (svg) {
    std::vector<sbt::SvgSeries> series{{which, value, "#1f77b4"}};
    for (const auto& [name, col] : extra) series.push_back({name, col, "#d62728"});
    std::ostringstream title;
    title << which << " weight, t = " << t;
    if (needs_gamma) title << ", gamma = " << cfg.gamma;
    if (hermite) title << ", xi = " << xi;
    auto svg_os = open_out(cfg, "weights_" + which + ".svg");
    sbt::write_svg_plot(svg_os, y, series, title.str());
  }
  std::cout << points << " rows written to " << (fs::path(cfg.out) / ("weights_" + which + ".csv")).string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heat kernel transform and fractional Sobolev verification tool"};
  app.require_subcommand(1);

  Common verify_opts, transform_opts, weight_opts;
  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite, "plancherel|isometry|thm22|extension|gutzmer|eq31|eq32|sobolev|hermite-sobolev|all");
  verify_opts.add(verify);

  std::string kind, input;
  GridOptions grid;
  auto* transform = app.add_subcommand("transform", "sample a transformed function on a complex grid");
  transform->add_option("--kind", kind, "ct|cts|tt|tts")->required();
  transform->add_option("--in", input, "coefficient CSV (label,re,im) or expansion CSV (alpha,re,im)");
  transform->add_option("--nx", grid.nx, "points along the real direction");
  transform->add_option("--ny", grid.ny, "points along the imaginary direction");
  transform->add_option("--y-max", grid.y_max, "imaginary half-width");
  transform->add_option("--xi-max", grid.x_max, "real half-width for Hermite grids");
  transform_opts.add(transform);

  std::string which;
  double lo = -3.0, hi = 3.0, xi = 0.0;
  int points = 121;
  bool overlay = false, svg = false;
  auto* weights = app.add_subcommand("weights", "tabulate a weight on a 1-D slice");
  weights->add_option("--which", which, "nu|w|U|Ugamma")->required();
  weights->add_option("--from", lo, "slice start");
  weights->add_option("--to", hi, "slice end");
  weights->add_option("--points", points, "number of rows");
  weights->add_option("--xi", xi, "fixed xi for the U and Ugamma slices");
  weights->add_flag("--overlay", overlay, "add the nu_t (or U_t) column and report the gap");
  weights->add_flag("--svg", svg, "also write an SVG line plot");
  weight_opts.add(weights);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(suite, verify_opts);
    if (*transform) return cmd_transform(kind, input, grid, transform_opts);
    if (*weights) return cmd_weights(which, lo, hi, points, xi, overlay, svg, weight_opts);
  } catch (const sbt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const sbt::FormatError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const sbt::PreconditionError& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
