#pragma once

// CSV formats:
//   coefficients   label,re,im     torus label "m1,m2" quoted, su2 label l
//   expansions     alpha,re,im     multi-index "a1,a2" quoted
//   grid samples   x,y,re,im       (xi,v,re,im for Hermite), optional tail column
//   weights        y,value
//   extension      rho,b,residual

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "sbt/errors.hpp"
#include "sbt/extension.hpp"
#include "sbt/hermite.hpp"
#include "sbt/spectrum.hpp"

namespace sbt {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace csv {

/// Splits one line on commas, honoring double quotes.
inline std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
    } else if (ch == ',' && !quoted) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  if (quoted) throw FormatError("unterminated quote in CSV line: " + line);
  out.push_back(cur);
  return out;
}

inline double number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw FormatError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw FormatError("trailing characters in number: '" + s + "'");
  return v;
}

inline std::vector<int> int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const double v = number(item);
    if (v != static_cast<int>(v)) throw FormatError("label component is not an integer: '" + item + "'");
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) throw FormatError("empty label");
  return out;
}

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

inline void expect_header(std::istream& in, const std::string& header) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty CSV input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw FormatError("expected header '" + header + "', found '" + line + "'");
}

}  // namespace csv

inline void write_coefficients_csv(std::ostream& os, const SpectralCoefficients& c) {
  os << "label,re,im\n";
  const bool torus = c.spectrum().group().kind == GroupKind::Torus;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Label& l = c.spectrum()[i].label;
    if (torus)
      os << '"' << csv::join(l) << '"';
    else
      os << l[0];
    os << ',' << csv::fmt(c[i].real()) << ',' << csv::fmt(c[i].imag()) << '\n';
  }
}

/// Reads coefficients for `group`; the cutoff is the smallest one holding every label,
/// or `cutoff` when given (>= 0). Missing labels are zero.
inline SpectralCoefficients read_coefficients_csv(std::istream& in, Group group, int cutoff = -1) {
  csv::expect_header(in, "label,re,im");
  std::vector<std::pair<Label, cplx>> rows;
  std::string line;
  int need = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto f = csv::split(line);
    if (f.size() != 3) throw FormatError("coefficient row needs 3 fields: " + line);
    Label l = csv::int_list(f[0]);
    if (group.kind == GroupKind::Torus && int(l.size()) != group.dim)
      throw FormatError("label dimension does not match the group: " + line);
    if (group.kind == GroupKind::SU2 && (l.size() != 1 || l[0] < 0)) throw FormatError("bad su2 label: " + line);
    for (int v : l) need = std::max(need, std::abs(v));
    rows.emplace_back(std::move(l), cplx(csv::number(f[1]), csv::number(f[2])));
  }
  if (cutoff >= 0 && need > cutoff) throw FormatError("label exceeds the requested cutoff");
  SpectralCoefficients c(enumerate_spectrum(group, cutoff >= 0 ? cutoff : need));
  for (const auto& [l, v] : rows) c.set(l, v);
  return c;
}

inline void write_expansion_csv(std::ostream& os, const HermiteExpansion& e) {
  os << "alpha,re,im\n";
  for (std::size_t i = 0; i < e.size(); ++i)
    os << '"' << csv::join(e.alpha(i)) << "\"," << csv::fmt(e[i].real()) << ',' << csv::fmt(e[i].imag()) << '\n';
}

inline HermiteExpansion read_expansion_csv(std::istream& in, int n, int cutoff = -1) {
  csv::expect_header(in, "alpha,re,im");
  std::vector<std::pair<MultiIndex, cplx>> rows;
  std::string line;
  int need = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto f = csv::split(line);
    if (f.size() != 3) throw FormatError("expansion row needs 3 fields: " + line);
    MultiIndex a = csv::int_list(f[0]);
    if (int(a.size()) != n) throw FormatError("multi-index dimension mismatch: " + line);
    for (int v : a)
      if (v < 0) throw FormatError("negative multi-index: " + line);
    need = std::max(need, level_of(a));
    rows.emplace_back(std::move(a), cplx(csv::number(f[1]), csv::number(f[2])));
  }
  if (cutoff >= 0 && need > cutoff) throw FormatError("multi-index exceeds the requested cutoff");
  HermiteExpansion e(n, cutoff >= 0 ? cutoff : need);
  for (const auto& [a, v] : rows) e.set(a, v);
  return e;
}

struct GridSample {
  double x = 0.0;
  double y = 0.0;
  cplx value;
  double tail = 0.0;
};

/// `names` gives the two coordinate columns; the tail column is written when requested.
inline void write_grid_csv(std::ostream& os, const std::vector<GridSample>& rows, bool with_tail = false,
                           const std::string& xname = "x", const std::string& yname = "y") {
  os << xname << ',' << yname << ",re,im" << (with_tail ? ",tail_bound\n" : "\n");
  for (const GridSample& r : rows) {
    os << csv::fmt(r.x) << ',' << csv::fmt(r.y) << ',' << csv::fmt(r.value.real()) << ','
       << csv::fmt(r.value.imag());
    if (with_tail) os << ',' << csv::fmt(r.tail);
    os << '\n';
  }
}

inline std::vector<GridSample> read_grid_csv(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw FormatError("empty CSV input");
  const auto h = csv::split(header);
  if (h.size() < 4 || h[2] != "re" || h[3] != "im") throw FormatError("grid header must be <x>,<y>,re,im");
  std::vector<GridSample> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto f = csv::split(line);
    if (f.size() != h.size()) throw FormatError("grid row has the wrong field count: " + line);
    GridSample g{csv::number(f[0]), csv::number(f[1]), cplx(csv::number(f[2]), csv::number(f[3])), 0.0};
    if (f.size() > 4) g.tail = csv::number(f[4]);
    rows.push_back(g);
  }
  return rows;
}

/// Columns <coord>,value plus optional extra named columns of equal length.
inline void write_weight_csv(std::ostream& os, const std::vector<double>& y, const std::vector<double>& value,
                             const std::vector<std::pair<std::string, std::vector<double>>>& extra = {},
                             const std::string& coord = "y") {
  os << coord << ",value";
  for (const auto& [name, col] : extra) os << ',' << name;
  os << '\n';
  for (std::size_t i = 0; i < y.size(); ++i) {
    os << csv::fmt(y[i]) << ',' << csv::fmt(value[i]);
    for (const auto& [name, col] : extra) os << ',' << csv::fmt(col[i]);
    os << '\n';
  }
}

inline void write_mode_csv(std::ostream& os, const ExtensionMode& m) {
  os << "rho,b,residual\n";
  for (std::size_t i = 0; i < m.rho.size(); ++i) {
    os << csv::fmt(m.rho[i]) << ',' << csv::fmt(m.b[i]) << ',';
    if (std::isfinite(m.residual[i])) os << csv::fmt(m.residual[i]);
    os << '\n';
  }
}

}  // namespace sbt
