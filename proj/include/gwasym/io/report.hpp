#pragma once

// JSON report documents.
//
//   {
//     "report_version": 1,
//     "command": "singularity",
//     "parameters": {...},
//     "results": {...},
//     "provenance": {...},
//     "generated_at": {"utc": "...", "wall_seconds": ...}
//   }
//
// Everything except generated_at is a function of the inputs and flags.
// Real numbers are decimal strings so no digits are lost to doubles.

#include <chrono>
#include <ctime>
#include <string>
#include <vector>

#include "json.hpp"

#include "gwasym/bounds.hpp"
#include "gwasym/numerics/big_real.hpp"
#include "gwasym/numerics/half_power_coeff.hpp"

namespace gwasym::io {

inline constexpr int kReportVersion = 1;

using Json = nlohmann::ordered_json;

/// Significant digits printed for a value held at `prec` bits.
inline int report_digits(Precision prec) { return static_cast<int>(static_cast<double>(prec) * 0.30103); }

inline std::string real(const BigReal& x, int digits = 0) {
  return x.to_string(digits > 0 ? digits : report_digits(x.precision()));
}

inline Json coeff(const SignedHalfPowerCoeff& c, int digits = 0) {
  Json j;
  j["index"] = c.index();
  j["parity"] = c.parity() == Parity::real ? "real" : "imaginary";
  j["value"] = real(c.signed_part(), digits);
  return j;
}

inline Json bound_report(const BoundReport& r, std::size_t max_violations = 20) {
  Json j;
  j["bound_id"] = r.bound_id;
  j["d_range"] = {r.d_lo, r.d_hi};
  j["checked"] = r.checked;
  j["pass"] = r.pass();
  j["violation_count"] = r.violations.size();
  auto& v = j["violations"] = Json::array();
  for (std::size_t i = 0; i < r.violations.size() && i < max_violations; ++i) {
    const auto& x = r.violations[i];
    Json row;
    row["d"] = x.index;
    if (x.sub_index >= 0) row["sub_index"] = x.sub_index;
    row["relation"] = x.relation;
    row["lhs"] = x.lhs;
    row["rhs"] = x.rhs;
    v.push_back(std::move(row));
  }
  return j;
}

inline std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Report {
 public:
  explicit Report(std::string command) : start_(std::chrono::steady_clock::now()) {
    doc_["report_version"] = kReportVersion;
    doc_["command"] = std::move(command);
    doc_["parameters"] = Json::object();
    doc_["results"] = Json::object();
    doc_["provenance"] = Json::object();
  }

  Json& parameters() { return doc_["parameters"]; }
  Json& results() { return doc_["results"]; }
  Json& provenance() { return doc_["provenance"]; }

  /// Stamps generated_at and returns the document.
  Json finish() {
    Json out = doc_;
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    out["generated_at"] = {{"utc", utc_now()}, {"wall_seconds", wall}};
    return out;
  }

 private:
  Json doc_;
  std::chrono::steady_clock::time_point start_;
};

/// A report with its timestamp field removed, for comparisons.
inline Json without_timestamp(Json j) {
  j.erase("generated_at");
  return j;
}

}  // namespace gwasym::io
