#pragma once

// Spectral data and Fourier analysis on the torus T^n and on SU(2) class
// functions. Haar measure has total mass 1 in both cases.
//
// Conventions:
//   torus   label m in Z^n, d = 1, lambda^2 = |m|^2; the coefficient of label
//           m is the coefficient of e^{i m.x}.
//   su2     label l >= 0, d = l + 1, lambda^2 = l(l+2); pi_l(f) = c_l Id, so
//           the Plancherel mass of label l is d_l * ||pi_l(f)||^2 = d_l^2 |c_l|^2
//           and f = sum_l d_l c_l chi_l with chi_l(theta) = sin((l+1)theta)/sin(theta).

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <numbers>
#include <string>
#include <unsupported/Eigen/FFT>
#include <utility>
#include <vector>

#include "sbt/errors.hpp"
#include "sbt/specfun.hpp"

namespace sbt {

enum class GroupKind { Torus, SU2 };

struct Group {
  GroupKind kind = GroupKind::Torus;
  int dim = 1;  // torus dimension; 1 for su2 class functions (one angle)

  static Group torus(int n) { return {GroupKind::Torus, n}; }
  static Group su2() { return {GroupKind::SU2, 1}; }

  std::string name() const {
    return kind == GroupKind::SU2 ? std::string("su2") : "torus-" + std::to_string(dim);
  }
  bool operator==(const Group&) const = default;
};

/// Parses "torus-1", "torus-2", "t1", "su2".
inline Group parse_group(const std::string& s) {
  if (s == "su2" || s == "SU2" || s == "su(2)") return Group::su2();
  std::string digits;
  if (s.rfind("torus-", 0) == 0) digits = s.substr(6);
  else if (s.rfind("torus", 0) == 0) digits = s.substr(5);
  else if (s.rfind("t", 0) == 0) digits = s.substr(1);
  if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
    const int n = std::stoi(digits);
    if (n >= 1 && n <= 3) return Group::torus(n);
  }
  throw PreconditionError("unknown group '" + s + "' (expected torus-1, torus-2, torus-3 or su2)");
}

using Label = std::vector<int>;

struct IrrepEntry {
  Label label;
  int dim = 1;          // d_pi
  double lambda2 = 0.0; // lambda_pi^2
};

/// Enumerated unitary dual up to a cutoff: |m|_inf <= N on the torus, l <= N on SU(2).
/// Entries are ordered by (lambda^2, label).
class IrrepSpectrum {
 public:
  IrrepSpectrum(Group group, int cutoff, std::vector<IrrepEntry> entries)
      : group_(group), cutoff_(cutoff), entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) index_.emplace(entries_[i].label, i);
  }

  const Group& group() const { return group_; }
  int cutoff() const { return cutoff_; }
  const std::vector<IrrepEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const IrrepEntry& operator[](std::size_t i) const { return entries_[i]; }

  /// Position of a label, or size() when absent.
  std::size_t find(const Label& l) const {
    auto it = index_.find(l);
    return it == index_.end() ? entries_.size() : it->second;
  }
  bool contains(const Label& l) const { return index_.count(l) != 0; }

 private:
  Group group_;
  int cutoff_;
  std::vector<IrrepEntry> entries_;
  std::map<Label, std::size_t> index_;
};

inline std::shared_ptr<const IrrepSpectrum> enumerate_spectrum(Group group, int cutoff) {
  if (cutoff < 0) throw PreconditionError("enumerate_spectrum: cutoff must be nonnegative");
  std::vector<IrrepEntry> entries;
  if (group.kind == GroupKind::SU2) {
    for (int l = 0; l <= cutoff; ++l) entries.push_back({{l}, l + 1, double(l) * (l + 2)});
  } else {
    if (group.dim < 1) throw PreconditionError("torus dimension must be positive");
    const int side = 2 * cutoff + 1;
    std::size_t total = 1;
    for (int d = 0; d < group.dim; ++d) total *= side;
    for (std::size_t idx = 0; idx < total; ++idx) {
      Label m(group.dim);
      std::size_t rest = idx;
      double l2 = 0.0;
      for (int d = group.dim - 1; d >= 0; --d) {
        m[d] = int(rest % side) - cutoff;
        rest /= side;
        l2 += double(m[d]) * m[d];
      }
      entries.push_back({std::move(m), 1, l2});
    }
  }
  std::stable_sort(entries.begin(), entries.end(), [](const IrrepEntry& a, const IrrepEntry& b) {
    return a.lambda2 != b.lambda2 ? a.lambda2 < b.lambda2 : a.label < b.label;
  });
  return std::make_shared<const IrrepSpectrum>(group, cutoff, std::move(entries));
}

/// Per-label scalar Fourier coefficients over a fixed spectrum.
class SpectralCoefficients {
 public:
  SpectralCoefficients() = default;
  explicit SpectralCoefficients(std::shared_ptr<const IrrepSpectrum> spectrum)
      : spectrum_(std::move(spectrum)), values_(spectrum_->size(), cplx{}) {}
  SpectralCoefficients(std::shared_ptr<const IrrepSpectrum> spectrum, std::vector<cplx> values)
      : spectrum_(std::move(spectrum)), values_(std::move(values)) {
    if (values_.size() != spectrum_->size())
      throw PreconditionError("coefficient count does not match the spectrum size");
  }

  const IrrepSpectrum& spectrum() const { return *spectrum_; }
  const std::shared_ptr<const IrrepSpectrum>& spectrum_ptr() const { return spectrum_; }
  std::size_t size() const { return values_.size(); }

  cplx& operator[](std::size_t i) { return values_[i]; }
  const cplx& operator[](std::size_t i) const { return values_[i]; }
  const std::vector<cplx>& values() const { return values_; }

  cplx at(const Label& l) const {
    const std::size_t i = spectrum_->find(l);
    return i == size() ? cplx{} : values_[i];
  }
  void set(const Label& l, cplx v) {
    const std::size_t i = spectrum_->find(l);
    if (i == size()) throw PreconditionError("label outside the spectrum");
    values_[i] = v;
  }

  /// d_pi * ||pi(f)||^2_HS for entry i.
  double plancherel_mass(std::size_t i) const {
    const double d = (*spectrum_)[i].dim;
    return d * d * std::norm(values_[i]);
  }
  /// sum_pi d_pi ||pi(f)||^2.
  double l2_norm_squared() const {
    double s = 0.0;
    for (std::size_t i = 0; i < size(); ++i) s += plancherel_mass(i);
    return s;
  }

  /// Multiplies entry i by m(entry i).
  template <class Multiplier>
  SpectralCoefficients apply(Multiplier&& m) const {
    SpectralCoefficients out(*this);
    for (std::size_t i = 0; i < size(); ++i) out.values_[i] *= m((*spectrum_)[i]);
    return out;
  }

 private:
  std::shared_ptr<const IrrepSpectrum> spectrum_;
  std::vector<cplx> values_;
};

/// Samples on a rectangular grid.
///   TorusReal:          x_j = 2 pi j / M in every coordinate, row-major
///   TorusComplexified:  (x_j, y_k), x_j = 2 pi j / nx, y_k uniform on [-Y, Y] (torus-1)
///   SU2Angle:           theta_j = pi (j + 1/2) / M (midpoint grid on (0, pi))
struct GridFunction {
  enum class Domain { TorusReal, TorusComplexified, SU2Angle };

  Domain domain = Domain::TorusReal;
  int dim = 1;
  int nx = 0;
  int ny = 1;
  double y_max = 0.0;
  std::vector<cplx> samples;

  std::size_t expected_size() const {
    std::size_t n = 1;
    if (domain == Domain::TorusReal)
      for (int d = 0; d < dim; ++d) n *= std::size_t(nx);
    else
      n = std::size_t(nx) * std::size_t(domain == Domain::TorusComplexified ? ny : 1);
    return n;
  }
  void validate() const {
    if (nx <= 0) throw PreconditionError("grid size must be positive");
    if (domain == Domain::TorusComplexified && !(y_max > 0.0))
      throw PreconditionError("complexified grid needs Y > 0");
    if (domain == Domain::TorusComplexified && ny < 2) throw PreconditionError("complexified grid needs ny >= 2");
    if (samples.size() != expected_size()) throw PreconditionError("sample count does not match grid size");
  }
  double x(int j) const {
    return domain == Domain::SU2Angle ? std::numbers::pi * (j + 0.5) / nx : 2.0 * std::numbers::pi * j / nx;
  }
  double y(int k) const { return -y_max + 2.0 * y_max * k / (ny - 1); }

  /// Samples f on the real torus grid (n = 1 or 2).
  template <class F>
  static GridFunction sample_torus(int dim, int m, F&& f) {
    GridFunction g{Domain::TorusReal, dim, m, 1, 0.0, {}};
    g.samples.resize(g.expected_size());
    if (dim == 1) {
      for (int j = 0; j < m; ++j) g.samples[j] = f(std::vector<double>{g.x(j)});
    } else if (dim == 2) {
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) g.samples[std::size_t(j) * m + k] = f(std::vector<double>{g.x(j), g.x(k)});
    } else {
      throw PreconditionError("sample_torus supports dimensions 1 and 2");
    }
    return g;
  }
  template <class F>
  static GridFunction sample_su2(int m, F&& f) {
    GridFunction g{Domain::SU2Angle, 1, m, 1, 0.0, {}};
    g.samples.resize(m);
    for (int j = 0; j < m; ++j) g.samples[j] = f(g.x(j));
    return g;
  }
};

/// Character chi_l(w) = U_l(cos w) for l = 0..lmax at complex angle w.
inline std::vector<cplx> su2_characters(int lmax, cplx w) {
  std::vector<cplx> u(std::size_t(lmax) + 1);
  const cplx c = std::cos(w);
  u[0] = 1.0;
  if (lmax >= 1) u[1] = 2.0 * c;
  for (int l = 1; l < lmax; ++l) u[l + 1] = 2.0 * c * u[l] - u[l - 1];
  return u;
}

namespace detail {
inline std::vector<cplx> fft_forward(const std::vector<cplx>& in) {
  Eigen::FFT<double> fft;
  std::vector<cplx> out;
  fft.fwd(out, in);
  return out;
}
inline int wrap(int m, int M) { return ((m % M) + M) % M; }
}  // namespace detail

/// Fourier coefficients of sampled data. Torus: FFT of the samples; SU(2):
/// midpoint quadrature of (1/d_l) int f chi_l dk in Weyl coordinates.
inline SpectralCoefficients analyze(const GridFunction& f, std::shared_ptr<const IrrepSpectrum> spectrum) {
  f.validate();
  const IrrepSpectrum& spec = *spectrum;
  const int N = spec.cutoff();
  SpectralCoefficients out(spectrum);
  if (spec.group().kind == GroupKind::Torus) {
    if (f.domain != GridFunction::Domain::TorusReal || f.dim != spec.group().dim)
      throw PreconditionError("analyze: torus spectrum needs a real torus grid of matching dimension");
    const int M = f.nx;
    if (M <= 2 * N) throw PreconditionError("analyze: grid size M must exceed 2N to avoid aliasing");
    if (f.dim == 1) {
      const std::vector<cplx> X = detail::fft_forward(f.samples);
      for (std::size_t i = 0; i < spec.size(); ++i) out[i] = X[detail::wrap(spec[i].label[0], M)] / double(M);
    } else if (f.dim == 2) {
      std::vector<cplx> work = f.samples;
      std::vector<cplx> line(M);
      for (int j = 0; j < M; ++j) {  // rows: second coordinate
        std::copy(work.begin() + std::size_t(j) * M, work.begin() + std::size_t(j + 1) * M, line.begin());
        const std::vector<cplx> X = detail::fft_forward(line);
        std::copy(X.begin(), X.end(), work.begin() + std::size_t(j) * M);
      }
      for (int k = 0; k < M; ++k) {  // columns: first coordinate
        for (int j = 0; j < M; ++j) line[j] = work[std::size_t(j) * M + k];
        const std::vector<cplx> X = detail::fft_forward(line);
        for (int j = 0; j < M; ++j) work[std::size_t(j) * M + k] = X[j];
      }
      const double norm = double(M) * M;
      for (std::size_t i = 0; i < spec.size(); ++i) {
        const Label& m = spec[i].label;
        out[i] = work[std::size_t(detail::wrap(m[0], M)) * M + detail::wrap(m[1], M)] / norm;
      }
    } else {
      throw PreconditionError("analyze: torus dimensions 1 and 2 are supported");
    }
  } else {
    if (f.domain != GridFunction::Domain::SU2Angle)
      throw PreconditionError("analyze: su2 spectrum needs samples on the angle grid");
    const int M = f.nx;
    if (M <= N + 1) throw PreconditionError("analyze: su2 angle grid needs M > N + 1 points");
    // (2/pi) int_0^pi f chi_l sin^2 = (2/pi) int_0^pi f sin(theta) sin((l+1) theta); the
    // midpoint rule is exact for the resulting trigonometric polynomials.
    for (std::size_t i = 0; i < spec.size(); ++i) {
      const int l = spec[i].label[0];
      cplx acc{};
      for (int j = 0; j < M; ++j) {
        const double th = f.x(j);
        acc += f.samples[j] * std::sin(th) * std::sin((l + 1) * th);
      }
      out[i] = acc * (2.0 / M) / double(l + 1);
    }
  }
  return out;
}

/// Point on the complexified domain: torus z = x + i y (n components), su2 w = theta + i phi.
using ComplexPoint = std::vector<cplx>;

struct SynthesisResult {
  std::vector<cplx> values;
  // Contribution of the outermost shell |m|_inf = N (resp. l = N) at each point,
  // a proxy for the truncation error of the series at that point.
  std::vector<double> tail_bound;
  bool truncation_warning = false;
};

/// Evaluates F = sum_pi (coefficient) x (holomorphically continued character or exponential)
/// at complexified points. `tol` sets the relative tail level that raises the warning.
inline SynthesisResult synthesize(const SpectralCoefficients& c, const std::vector<ComplexPoint>& points,
                                  double tol = 1e-8) {
  const IrrepSpectrum& spec = c.spectrum();
  const int N = spec.cutoff();
  SynthesisResult out;
  out.values.resize(points.size());
  out.tail_bound.resize(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    const ComplexPoint& z = points[p];
    cplx sum{};
    double tail = 0.0;
    if (spec.group().kind == GroupKind::Torus) {
      if (int(z.size()) != spec.group().dim) throw PreconditionError("synthesize: point dimension mismatch");
      for (std::size_t i = 0; i < spec.size(); ++i) {
        if (c[i] == cplx{}) continue;
        const Label& m = spec[i].label;
        cplx phase{};
        int top = 0;
        for (std::size_t d = 0; d < m.size(); ++d) {
          phase += double(m[d]) * z[d];
          top = std::max(top, std::abs(m[d]));
        }
        const cplx term = c[i] * std::exp(cplx(0.0, 1.0) * phase);
        sum += term;
        if (top == N) tail += std::abs(term);
      }
    } else {
      if (z.size() != 1) throw PreconditionError("synthesize: su2 points are single complex angles");
      const std::vector<cplx> chi = su2_characters(N, z[0]);
      for (std::size_t i = 0; i < spec.size(); ++i) {
        const int l = spec[i].label[0];
        const cplx term = double(l + 1) * c[i] * chi[l];
        sum += term;
        if (l == N) tail += std::abs(term);
      }
    }
    out.values[p] = sum;
    out.tail_bound[p] = tail;
    if (tail > tol * std::max(1.0, std::abs(sum))) out.truncation_warning = true;
  }
  return out;
}

inline cplx synthesize_at(const SpectralCoefficients& c, const ComplexPoint& z) {
  return synthesize(c, std::vector<ComplexPoint>{z}, 1.0).values[0];
}

struct SeriesValue {
  double value = 0.0;
  double tail_bound = 0.0;
};

/// Heat kernel q_t = sum_pi d_pi e^{-t lambda^2/2} chi_pi at a real point of K, truncated at N.
/// Throws TruncationError when the analytic tail bound exceeds `tol`.
inline SeriesValue heat_kernel(Group group, double t, const std::vector<double>& point, int N, double tol = 1e-12) {
  if (!(t > 0.0)) throw PreconditionError("heat_kernel: t must be positive");
  if (N < 0) throw PreconditionError("heat_kernel: cutoff must be nonnegative");
  SeriesValue out;
  if (group.kind == GroupKind::Torus) {
    if (int(point.size()) != group.dim) throw PreconditionError("heat_kernel: point dimension mismatch");
    // One-dimensional factor tail: sum_{|m|>N} e^{-t m^2/2}, geometric majorant.
    const double first = std::exp(-0.5 * t * (N + 1.0) * (N + 1.0));
    const double ratio = std::exp(-t * (N + 1.5));
    const double tail1 = 2.0 * first / (1.0 - ratio);
    double value = 1.0, full = 1.0, trunc = 1.0;
    for (int d = 0; d < group.dim; ++d) {
      double s = 0.0, abs_s = 0.0;
      for (int m = -N; m <= N; ++m) {
        const double w = std::exp(-0.5 * t * double(m) * m);
        s += w * std::cos(m * point[d]);
        abs_s += w;
      }
      value *= s;
      trunc *= abs_s;
      full *= abs_s + tail1;
    }
    out.value = value;
    out.tail_bound = full - trunc;
  } else {
    if (point.size() != 1) throw PreconditionError("heat_kernel: su2 point is one angle");
    const std::vector<cplx> chi = su2_characters(N, point[0]);
    double s = 0.0;
    for (int l = 0; l <= N; ++l) s += (l + 1.0) * std::exp(-0.5 * t * l * (l + 2.0)) * chi[l].real();
    // |chi_l| <= l + 1; consecutive term ratio is bounded by r for l >= N + 1.
    const double l0 = N + 1.0;
    const double first = (l0 + 1.0) * (l0 + 1.0) * std::exp(-0.5 * t * l0 * (l0 + 2.0));
    const double r = std::pow((l0 + 2.0) / (l0 + 1.0), 2) * std::exp(-0.5 * t * (2.0 * l0 + 3.0));
    out.value = s;
    out.tail_bound = r < 1.0 ? first / (1.0 - r) : std::numeric_limits<double>::infinity();
  }
  if (out.tail_bound > tol) throw TruncationError("heat_kernel: enlarge the cutoff N", out.tail_bound);
  return out;
}

}  // namespace sbt
