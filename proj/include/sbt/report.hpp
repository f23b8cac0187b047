#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace sbt {

/// One checked identity: both sides, their discrepancy and the verdict.
struct VerificationReport {
  std::string id;
  std::map<std::string, double> params;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
  double tol = 0.0;
  bool pass = false;
  nlohmann::json meta = nlohmann::json::object();

  /// Fills the error fields; relative error is taken against |rhs|.
  static VerificationReport compare(std::string id, double lhs, double rhs, double tol,
                                    std::map<std::string, double> params = {}) {
    VerificationReport r;
    r.id = std::move(id);
    r.params = std::move(params);
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_err = std::abs(lhs - rhs);
    const double scale = std::abs(rhs);
    r.rel_err = scale > 0.0 ? r.abs_err / scale : r.abs_err;
    r.tol = tol;
    r.pass = std::isfinite(r.rel_err) && r.rel_err <= tol;
    return r;
  }

  /// A check that is not a two-sided equality (bounds, orders, ratios).
  static VerificationReport predicate(std::string id, double value, double target, double tol, bool pass,
                                      std::map<std::string, double> params = {}) {
    VerificationReport r;
    r.id = std::move(id);
    r.params = std::move(params);
    r.lhs = value;
    r.rhs = target;
    r.abs_err = std::abs(value - target);
    r.rel_err = target != 0.0 ? r.abs_err / std::abs(target) : r.abs_err;
    r.tol = tol;
    r.pass = pass;
    return r;
  }
};

inline nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["id"] = r.id;
  j["params"] = nlohmann::json::object();
  for (const auto& [k, v] : r.params) j["params"][k] = v;
  auto num = [](double v) -> nlohmann::json {
    if (std::isfinite(v)) return v;
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  };
  j["lhs"] = num(r.lhs);
  j["rhs"] = num(r.rhs);
  j["abs_err"] = num(r.abs_err);
  j["rel_err"] = num(r.rel_err);
  j["tol"] = r.tol;
  j["pass"] = r.pass;
  j["meta"] = r.meta;
  return j;
}

inline nlohmann::json to_json(std::vector<VerificationReport> reports) {
  std::stable_sort(reports.begin(), reports.end(),
                   [](const VerificationReport& a, const VerificationReport& b) { return a.id < b.id; });
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return arr;
}

inline bool all_pass(const std::vector<VerificationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const VerificationReport& r) { return r.pass; });
}

}  // namespace sbt
