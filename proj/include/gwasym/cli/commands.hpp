#pragma once

// The four subcommands of the gwasym tool. Each returns an exit code and a
// JSON report; diagnostics and progress go to the `err` stream.
//
// Exit codes:
//   0  success, every check passed
//   1  a verification check failed (bound violation, failed relation, ...)
//   2  usage error or unsupported combination of options
//   3  computation, io or parse error

#include <algorithm>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "gwasym/bounds.hpp"
#include "gwasym/empirics.hpp"
#include "gwasym/error.hpp"
#include "gwasym/io/cache.hpp"
#include "gwasym/io/report.hpp"
#include "gwasym/recursions.hpp"
#include "gwasym/singularity.hpp"

namespace gwasym::cli {

enum ExitCode : int { exit_ok = 0, exit_verification = 1, exit_usage = 2, exit_computation = 3 };

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::unsupported_combination:
    case ErrorCode::ray_out_of_range:
      return exit_usage;
    default:
      return exit_computation;
  }
}

struct CommandResult {
  int exit_code = exit_ok;
  io::Json report;
};

/// An existing path, or a file of that name in the cache directory.
inline std::filesystem::path resolve_cache(const std::string& name) {
  namespace fs = std::filesystem;
  if (fs::exists(name)) return name;
  const fs::path in_dir = io::cache_dir() / name;
  if (fs::exists(in_dir)) return in_dir;
  throw Error(ErrorCode::io_failure, "no cache at '" + name + "' or '" + in_dir.string() + "'");
}

inline io::Json table_info(const CountTable& t, const std::filesystem::path& path) {
  return {{"path", path.string()}, {"target", to_string(t.target)}, {"genus", t.genus}, {"dmax", t.d_max}};
}

namespace detail {

struct Checks {
  io::Json list = io::Json::array();
  bool all = true;

  void add(const std::string& name, bool pass, io::Json detail = nullptr) {
    io::Json j{{"name", name}, {"pass", pass}};
    if (!detail.is_null()) j["detail"] = std::move(detail);
    list.push_back(std::move(j));
    all = all && pass;
  }
};

inline ProgressFn progress_every_ten(std::ostream& err, const std::string& label, int d_max) {
  return [&err, label, d_max](int d) {
    if (d % 10 == 0 || d == d_max) err << label << ": d=" << d << "/" << d_max << "\n" << std::flush;
  };
}

}  // namespace detail

// ---------------------------------------------------------------------------
// compute

struct ComputeOptions {
  std::string target = "p2";
  int genus = 0;
  int d_max = 0;
  std::string out;  // empty: default cache path
  std::string format = "text";
};

inline CommandResult cmd_compute(const ComputeOptions& opt, std::ostream& err) {
  io::Report rep("compute");
  rep.parameters() = {{"target", opt.target},
                      {"genus", opt.genus},
                      {"dmax", opt.d_max},
                      {"format", opt.format},
                      {"out", opt.out}};
  if (opt.target != "p2" && opt.target != "p3")
    throw Error(ErrorCode::unsupported_combination, "target must be p2 or p3");
  if (opt.genus != 0 && opt.genus != 1) throw Error(ErrorCode::unsupported_combination, "genus must be 0 or 1");
  if (opt.target == "p3" && opt.genus != 0)
    throw Error(ErrorCode::unsupported_combination, "P3 counts are available in genus 0 only");
  if (opt.d_max < 1) throw Error(ErrorCode::unsupported_combination, "--dmax must be >= 1");
  const io::CacheFormat format = io::parse_format(opt.format);

  CountTable t;
  if (opt.target == "p3") {
    t = p3_genus0(opt.d_max, detail::progress_every_ten(err, "p3 genus 0", opt.d_max));
  } else if (opt.genus == 0) {
    t = p2_genus0(opt.d_max, detail::progress_every_ten(err, "p2 genus 0", opt.d_max));
  } else {
    const CountTable g0 = p2_genus0(opt.d_max, detail::progress_every_ten(err, "p2 genus 0", opt.d_max));
    t = p2_genus1(opt.d_max, g0, detail::progress_every_ten(err, "p2 genus 1", opt.d_max));
  }

  const std::filesystem::path path =
      opt.out.empty() ? io::default_cache_path(t.target, t.genus, t.d_max, format) : std::filesystem::path(opt.out);
  io::write_cache(path, t, format);

  std::size_t entries = 0;
  ExactRational largest = 0;
  for (int d = 1; d <= t.d_max; ++d) {
    const int p_hi = t.target == Target::p3 ? 2 * d : 0;
    for (int p = 0; p <= p_hi; ++p) {
      largest = std::max(largest, t.count(d, p));
      ++entries;
    }
  }
  const std::string largest_text = is_integer(largest) ? largest.get_num().get_str(10) : format_rational(largest);
  rep.results() = {{"cache", table_info(t, path)},
                   {"entries", entries},
                   {"largest_N", largest_text},
                   {"largest_N_digits", largest_text.size()}};
  rep.provenance() = {{"dmax", t.d_max}, {"arithmetic", "exact rational"}};
  return {exit_ok, rep.finish()};
}

// ---------------------------------------------------------------------------
// bounds

struct BoundsOptions {
  std::string cache;
  int stirling_dmax = 10000;
  Precision prec = kDefaultPrecision;
};

inline CommandResult cmd_bounds(const BoundsOptions& opt, std::ostream& err) {
  io::Report rep("bounds");
  rep.parameters() = {{"cache", opt.cache}, {"stirling_dmax", opt.stirling_dmax}, {"precision", opt.prec}};
  const auto path = resolve_cache(opt.cache);
  const CountTable t = io::read_cache(path);

  std::vector<BoundReport> reports;
  io::Json skipped = io::Json::array();
  if (t.target == Target::p2 && t.genus == 0) {
    reports.push_back(check_p2_sandwich(t));
    for (auto& r : check_p2_comparison(t)) reports.push_back(std::move(r));
  }
  if (t.target == Target::p2) reports.push_back(check_stirling(opt.stirling_dmax));
  if (t.target == Target::p3) {
    reports.push_back(check_p3_coarse_bound(t));
    reports.push_back(p3_majorants(t).comparison);
  }

  // The series check needs x0, which is meaningless for a table that already
  // fails the exact bounds.
  const bool exact_pass = std::all_of(reports.begin(), reports.end(), [](const BoundReport& r) { return r.pass(); });
  io::Json ordering = nullptr;
  if (t.target == Target::p2 && t.genus == 0) {
    if (!exact_pass) {
      skipped.push_back({{"bound_id", "f0-ordering"}, {"reason", "exact bounds failed"}});
    } else if (t.d_max >= kMinimumRootTerms) {
      const GenusZeroSeries series(t, opt.prec);
      X0Options xo;
      xo.prec = opt.prec;
      const X0Estimate x0 = solve_x0(series, xo);
      const std::vector<BigReal> samples = {x0.value - 1L, x0.value - BigReal(make_rational(1, 10), opt.prec),
                                            BigReal(-10L, opt.prec)};
      reports.push_back(check_ordering_F0(series, samples, x0.value, x0.error_bar, t.d_max));
      ordering = {{"x0", io::real(x0.value)},
                  {"x0_error_bar", io::real(x0.error_bar, 6)},
                  {"samples", {"x0 - 1", "x0 - 1/10", "-10"}}};
    } else {
      skipped.push_back({{"bound_id", "f0-ordering"},
                         {"reason", "needs dmax >= " + std::to_string(kMinimumRootTerms) + " to locate x0"}});
    }
  }

  bool pass = true;
  io::Json list = io::Json::array();
  for (const auto& r : reports) {
    list.push_back(io::bound_report(r));
    pass = pass && r.pass();
    if (!r.pass()) {
      const auto& v = r.violations.front();
      err << "violation " << r.bound_id << " d=" << v.index;
      if (v.sub_index >= 0) err << " p=" << v.sub_index;
      err << " " << v.relation << ": " << v.lhs << " vs " << v.rhs << "\n";
    }
  }
  rep.results() = {{"cache", table_info(t, path)}, {"pass", pass}, {"bounds", list}, {"skipped", skipped}};
  rep.provenance() = {{"dmax", t.d_max}, {"precision", opt.prec}, {"arithmetic", "exact rational, squared forms"}};
  if (!ordering.is_null()) rep.provenance()["ordering"] = ordering;
  return {pass ? exit_ok : exit_verification, rep.finish()};
}

// ---------------------------------------------------------------------------
// singularity

struct SingularityOptions {
  std::string cache;
  Precision prec = kDefaultPrecision;
  int coeffs = 40;          // M
  int terms = 0;            // D; 0 uses the whole table
  std::optional<int> m_prime;
  int ode_order = 20;       // capped at M
};

inline CommandResult cmd_singularity(const SingularityOptions& opt, std::ostream&) {
  io::Report rep("singularity");
  rep.parameters() = {{"cache", opt.cache},  {"precision", opt.prec}, {"coeffs", opt.coeffs},
                      {"terms", opt.terms},  {"ode_order", opt.ode_order}};
  if (opt.m_prime) rep.parameters()["m_prime"] = *opt.m_prime;
  if (opt.coeffs < 6) throw Error(ErrorCode::unsupported_combination, "--coeffs must be >= 6");

  const auto path = resolve_cache(opt.cache);
  const CountTable t = io::read_cache(path);
  if (t.target != Target::p2 || t.genus != 0)
    throw Error(ErrorCode::unsupported_combination, "singularity analysis needs a P2 genus-0 cache");

  ProfileOptions po;
  po.root.prec = opt.prec;
  po.root.terms = opt.terms;
  po.M = opt.coeffs;
  po.M_prime = opt.m_prime.value_or(std::max(-1, opt.coeffs - 7));
  const X0Estimate x0 = solve_x0(t, po.root);
  const GenusZeroSeries series(t, opt.prec);
  const SingularityProfile p = build_profile(series, x0, po);

  detail::Checks checks;
  auto& res = rep.results();
  res["cache"] = table_info(t, path);

  const bool in_bracket = x0.value > x0.bracket_lo && x0.value < x0.bracket_hi;
  res["x0"] = {{"root_solve", io::real(x0.value)},
               {"error_bar", io::real(x0.error_bar, 6)},
               {"ratio_extrapolation", io::real(x0.ratio_estimate)},
               {"ratio_error", io::real(x0.ratio_error, 6)},
               {"discrepancy", io::real(x0.discrepancy, 6)},
               {"fewer_fit_points", io::real(x0.fit_variant)},
               {"three_quarter_terms", io::real(x0.terms_variant)},
               {"bracket", {io::real(x0.bracket_lo, 12), io::real(x0.bracket_hi, 12)}}};
  checks.add("x0_in_bracket", in_bracket);
  checks.add("estimators_agree_1e-6", x0.discrepancy < BigReal(1e-6, opt.prec));

  const BigReal a4 = p.a_at(4).signed_part();
  const BigReal a4_expected = BigReal(3L, opt.prec) / 2L + p.a2 / 3L;
  const BigReal a4_rel = abs((a4 - a4_expected) / a4_expected);
  const bool a4_ok = a4_rel <= unit_roundoff(opt.prec) * 16L;
  const BigReal a5 = p.a_at(5).signed_part();
  res["a0"] = io::real(p.a0);
  res["a2"] = io::real(p.a2);
  res["discriminant"] = io::real(p.discriminant);
  res["a4"] = {{"value", io::real(a4)},
               {"relation", "a4 = 3/2 + a2/3"},
               {"relative_difference", io::real(a4_rel, 6)},
               {"check", a4_ok ? "pass" : "fail"}};
  res["a5"] = {{"magnitude", io::real(abs(a5))}, {"parity", "imaginary"}, {"sign", a5.sign() < 0 ? "-" : "+"}};
  checks.add("a4_relation", a4_ok);
  checks.add("discriminant_positive", p.discriminant > 0);
  checks.add("a5_negative_imaginary", a5.sign() < 0);

  bool parity_ok = true;
  io::Json a_list = io::Json::array();
  for (const auto& c : p.a) {
    a_list.push_back(io::coeff(c));
    const bool odd_low = c.index() == 1 || c.index() == 3;
    parity_ok = parity_ok && c.parity() == SignedHalfPowerCoeff::parity_of(c.index()) &&
                (odd_low ? c.signed_part().is_zero() : true);
  }
  io::Json b_list = io::Json::array();
  for (const auto& c : p.genus1.b) {
    b_list.push_back(io::coeff(c));
    parity_ok = parity_ok && c.parity() == SignedHalfPowerCoeff::parity_of(c.index());
  }
  res["a"] = a_list;
  res["genus1"] = {{"residue", format_rational(p.genus1.residue)}, {"b", b_list}};
  checks.add("parity_flags", parity_ok);
  checks.add("residue_is_-1/48", p.genus1.residue == make_rational(-1, 48));

  const int m_ode = std::min(opt.ode_order, p.M);
  const std::vector<BigReal> zs = {BigReal::parse("-1e-3", opt.prec), BigReal::parse("-1e-4", opt.prec),
                                   BigReal::parse("-1e-5", opt.prec)};
  const auto residual = ode_residual(p.a, m_ode, zs);
  const BigReal slope = log_log_slope(zs, residual);
  const double expected_slope = (m_ode - 5) / 2.0;
  io::Json rows = io::Json::array();
  for (std::size_t i = 0; i < zs.size(); ++i) rows.push_back({{"z", io::real(zs[i], 3)}, {"residual", io::real(residual[i], 6)}});
  const bool slope_ok = std::abs(slope.to_double() - expected_slope) <= 0.25;
  res["ode_residual"] = {{"order", m_ode},
                         {"samples", rows},
                         {"log_log_slope", io::real(slope, 8)},
                         {"expected_slope", expected_slope}};
  checks.add("ode_residual_scaling", slope_ok, {{"slope", slope.to_double()}, {"expected", expected_slope}});

  const std::vector<BigReal> ys = {BigReal(0L, opt.prec), BigReal::parse("1e-3", opt.prec), pi(opt.prec) / 2L,
                                   pi(opt.prec)};
  io::Json cont = io::Json::array();
  bool margins_ok = true;
  for (const auto& s : continuation_check(series, x0, ys, po.root.tail)) {
    io::Json j{{"y", io::real(s.y, 12)}, {"margin", io::real(s.margin, 12)}};
    if (s.tail_corrected) j["tail_corrected_margin"] = io::real(s.tail_corrected_margin, 6);
    margins_ok = margins_ok && s.margin > 0;
    cont.push_back(std::move(j));
  }
  res["continuation"] = cont;
  checks.add("continuation_margins_positive", margins_ok);
  res["checks"] = checks.list;

  rep.provenance() = {{"dmax", t.d_max},
                      {"terms", x0.terms},
                      {"precision", opt.prec},
                      {"M", p.M},
                      {"M_prime", p.M_prime},
                      {"tail_fit_points", po.root.tail.fit_points},
                      {"tail_fit_spacing", po.root.tail.spacing},
                      {"bisection_iterations", x0.iterations},
                      {"ratio_order", po.root.ratio_order}};
  return {checks.all ? exit_ok : exit_verification, rep.finish()};
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  std::string suite;
  std::vector<std::string> caches;
  std::vector<ModelSpec> models;
  std::vector<std::pair<int, int>> rays;
  Precision prec = kDefaultPrecision;
  int coeffs = 40;
  std::vector<int> orders = {4, 5, 6, 8, 10};
  std::vector<int> degrees;  // empty: every 50 up to dmax
  int window_lo = 200;
  int window_hi = 400;
  int ratio_order = 12;
  int model_dmax = 200;
};

inline ModelSpec parse_model(const std::string& text) {
  const auto f = io::detail::split(text, ',');
  if (f.size() != 3) throw Error(ErrorCode::unsupported_combination, "--model wants a,k,n1 (got '" + text + "')");
  ModelSpec m;
  try {
    m.a = parse_rational(f[0]);
    m.k = static_cast<unsigned>(std::stoul(f[1]));
    m.n1 = parse_rational(f[2]);
  } catch (const std::exception&) {
    throw Error(ErrorCode::unsupported_combination, "--model wants a,k,n1 (got '" + text + "')");
  }
  if (m.a <= 0 || m.n1 <= 0) throw Error(ErrorCode::unsupported_combination, "--model needs a > 0 and n1 > 0");
  return m;
}

inline std::pair<int, int> parse_ray(const std::string& text) {
  const auto f = io::detail::split(text, ',');
  try {
    if (f.size() == 2) return {std::stoi(f[0]), std::stoi(f[1])};
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::unsupported_combination, "--ray wants alpha,beta (got '" + text + "')");
}

namespace detail {

inline io::Json ratio_json(const RatioEstimate& b) {
  return {{"b", io::real(b.b, 30)},
          {"error", io::real(b.error, 6)},
          {"order", b.order},
          {"step", b.step == RatioStep::inverse_d ? "1/d" : "d^-1/2"},
          {"last_degree", b.last_degree}};
}

inline RatioEstimate growth_estimate(const Sequence& s, int genus, int order, Precision prec) {
  const int usable = std::min(order, static_cast<int>(s.values.size()) - 3);
  if (usable < 0) throw Error(ErrorCode::insufficient_length, s.id + ": too short for ratio extrapolation");
  return ratio_extrapolate(s, usable, genus == 1 ? RatioStep::inverse_sqrt_d : RatioStep::inverse_d, prec);
}

// Strictly decreasing over the given values; fewer than two is vacuous.
inline bool strictly_decreasing(const std::vector<BigReal>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

inline CommandResult verify_asymptotics(const VerifyOptions& opt, io::Report& rep) {
  std::optional<CountTable> g0, g1;
  io::Json inputs = io::Json::array();
  for (const auto& name : opt.caches) {
    const auto path = resolve_cache(name);
    CountTable t = io::read_cache(path);
    inputs.push_back(table_info(t, path));
    if (t.target != Target::p2)
      throw Error(ErrorCode::unsupported_combination, "asymptotics suite takes P2 caches only");
    (t.genus == 0 ? g0 : g1) = std::move(t);
  }
  if (!g0) throw Error(ErrorCode::unsupported_combination, "asymptotics suite needs a P2 genus-0 cache");

  ProfileOptions po;
  po.root.prec = opt.prec;
  po.root.ratio_order = opt.ratio_order;
  po.M = opt.coeffs;
  const X0Estimate x0 = solve_x0(*g0, po.root);
  const GenusZeroSeries series(*g0, opt.prec);
  const SingularityProfile p = build_profile(series, x0, po);

  std::vector<int> degrees = opt.degrees;
  if (degrees.empty())
    for (int d = 50; d <= g0->d_max; d += 50) degrees.push_back(d);
  const std::vector<int> check_degrees = {100, 200, 300};

  Checks checks;
  auto& res = rep.results();
  res["inputs"] = inputs;
  res["x0"] = {{"value", io::real(x0.value)}, {"error_bar", io::real(x0.error_bar, 6)}};

  auto rel = [&opt](const BigReal& pred, const ExactRational& exact) {
    const BigReal e(exact, opt.prec);
    return (pred - e) / e;
  };

  // Genus 0: relative error table over d and N.
  io::Json table = io::Json::array();
  for (int d : degrees) {
    if (d > g0->d_max) continue;
    io::Json row{{"d", d}};
    io::Json errs = io::Json::object();
    for (int N : opt.orders) errs[std::to_string(N)] = io::real(rel(asymptotic_predict(0, p, d, N), g0->at(d)), 6);
    row["relative_error"] = errs;
    table.push_back(std::move(row));
  }
  io::Json g0res{{"orders", opt.orders}, {"table", table}};

  io::Json decreasing = io::Json::array();
  for (int N : opt.orders) {
    std::vector<BigReal> errs;
    std::vector<int> used;
    for (int d : check_degrees)
      if (d <= g0->d_max) {
        errs.push_back(abs(rel(asymptotic_predict(0, p, d, N), g0->at(d))));
        used.push_back(d);
      }
    const bool ok = strictly_decreasing(errs);
    decreasing.push_back({{"N", N}, {"degrees", used}, {"strictly_decreasing", ok}});
    checks.add("genus0_error_decreasing_N" + std::to_string(N), ok);
  }
  g0res["decreasing_in_d"] = decreasing;

  // Order sweep at the largest check degree; the crossover is reported only.
  const int d_sweep = g0->d_max >= 300 ? 300 : g0->d_max;
  io::Json sweep = io::Json::array();
  std::optional<int> crossover;
  BigReal best(opt.prec);
  bool have_best = false;
  BigReal prev(opt.prec);
  for (int N = 1; 2 * (N - 1) - 1 <= p.M; ++N) {
    const BigReal e = abs(rel(asymptotic_predict(0, p, d_sweep, N), g0->at(d_sweep)));
    sweep.push_back({{"N", N}, {"relative_error", io::real(e, 6)}});
    if (N > 1 && !crossover && !(e < prev)) crossover = N;
    if (!have_best || e < best) {
      best = e;
      have_best = true;
    }
    prev = e;
  }
  g0res["order_sweep"] = {{"d", d_sweep}, {"rows", sweep}, {"best_relative_error", io::real(best, 6)}};
  g0res["order_sweep"]["crossover_N"] = crossover ? io::Json(*crossover) : io::Json(nullptr);
  if (g0->d_max >= 300) checks.add("genus0_d300_relative_error_below_1e-3", best < BigReal(1e-3, opt.prec));

  // Growth constant and exponent fits.
  const Sequence s0 = sequence_from(*g0);
  const RatioEstimate b0 = growth_estimate(s0, 0, opt.ratio_order, opt.prec);
  g0res["growth"] = ratio_json(b0);
  const int lo = std::max(opt.window_lo, 1), hi = std::min(opt.window_hi, g0->d_max);
  if (hi - lo >= 1) {
    const ExponentFit f = fit_exponent(s0, b0.b, lo, hi);
    const bool ok = std::abs(f.slope.to_double() + 3.5) <= 0.05;
    g0res["exponent_fit"] = {{"window", {lo, hi}},
                             {"slope", io::real(f.slope, 10)},
                             {"rms_residual", io::real(f.rms_residual, 4)},
                             {"expected", -3.5},
                             {"tolerance", 0.05}};
    checks.add("genus0_exponent", ok);
  }
  res["genus0"] = g0res;

  if (g1) {
    io::Json g1res;
    io::Json rows = io::Json::array();
    std::vector<BigReal> devs;
    std::vector<int> used;
    for (int d : degrees) {
      if (d > g1->d_max || d > g0->d_max) continue;
      const BigReal v = BigReal(g1->at(d), opt.prec) * exp(x0.value * static_cast<long>(d)) * (48L * d);
      io::Json row{{"d", d}, {"48_d_n_exp_dx0", io::real(v, 12)}};
      io::Json errs = io::Json::object();
      for (int N : {0, 2, 3}) errs[std::to_string(N)] = io::real(rel(asymptotic_predict(1, p, d, N), g1->at(d)), 6);
      row["relative_error"] = errs;
      rows.push_back(std::move(row));
    }
    for (int d : check_degrees)
      if (d <= g1->d_max && d <= g0->d_max) {
        devs.push_back(abs(BigReal(g1->at(d), opt.prec) * exp(x0.value * static_cast<long>(d)) * (48L * d) - 1L));
        used.push_back(d);
      }
    const bool dec = strictly_decreasing(devs);
    g1res["table"] = rows;
    g1res["pole_ratio_decreasing"] = {{"degrees", used}, {"strictly_decreasing", dec}};
    checks.add("genus1_pole_ratio_deviation_decreasing", dec);

    const Sequence s1 = sequence_from(*g1);
    const RatioEstimate b1 = growth_estimate(s1, 1, opt.ratio_order, opt.prec);
    g1res["growth"] = ratio_json(b1);
    const BigReal gap = abs(b0.b - b1.b);
    g1res["growth_gap"] = io::real(gap, 6);
    checks.add("growth_constants_agree", gap <= b0.error + b1.error + BigReal(1e-12, opt.prec));
    const int hi1 = std::min(opt.window_hi, g1->d_max);
    if (hi1 - lo >= 1) {
      const ExponentFit f = fit_exponent(s1, b0.b, lo, hi1);
      const bool ok = std::abs(f.slope.to_double() + 1.0) <= 0.1;
      g1res["exponent_fit"] = {{"window", {lo, hi1}},
                               {"slope", io::real(f.slope, 10)},
                               {"rms_residual", io::real(f.rms_residual, 4)},
                               {"expected", -1.0},
                               {"tolerance", 0.1}};
      checks.add("genus1_exponent", ok);
    }
    res["genus1"] = g1res;
  }
  res["checks"] = checks.list;
  rep.provenance() = {{"dmax", g0->d_max},       {"precision", opt.prec},
                      {"M", p.M},                {"M_prime", p.M_prime},
                      {"ratio_order", opt.ratio_order}, {"bisection_iterations", x0.iterations},
                      {"tail_fit_points", po.root.tail.fit_points}};
  return {checks.all ? exit_ok : exit_verification, rep.finish()};
}

inline io::Json monotone_json(const Sequence& s, const MonotoneResult& m, Precision prec) {
  const auto roots = root_sequence(s, prec);
  io::Json tail = io::Json::array();
  for (std::size_t i = roots.size() >= 5 ? roots.size() - 5 : 0; i < roots.size(); ++i)
    tail.push_back({{"d", s.first_degree + static_cast<int>(i)}, {"root", io::real(roots[i], 20)}});
  io::Json j{{"sequence", s.id},
             {"checked", {m.checked_from, m.checked_to}},
             {"d_star", m.d_star ? io::Json(*m.d_star) : io::Json("not observed")},
             {"decreasing_pairs", m.decreasing_at},
             {"last_roots", tail}};
  return j;
}

inline CommandResult verify_monotone(const VerifyOptions& opt, io::Report& rep) {
  if (opt.caches.empty() && opt.models.empty())
    throw Error(ErrorCode::unsupported_combination, "monotone suite needs a P2 cache or --model");
  Checks checks;
  io::Json out = io::Json::array();
  int d_max_seen = 0;
  for (const auto& name : opt.caches) {
    const auto path = resolve_cache(name);
    const CountTable t = io::read_cache(path);
    if (t.target != Target::p2) throw Error(ErrorCode::unsupported_combination, "monotone suite takes P2 caches");
    const Sequence s = sequence_from(t);
    io::Json j = monotone_json(s, monotone_from(s), opt.prec);
    j["source"] = table_info(t, path);
    j["empirical"] = true;
    j["growth"] = ratio_json(growth_estimate(s, t.genus, opt.ratio_order, opt.prec));
    out.push_back(std::move(j));
    d_max_seen = std::max(d_max_seen, t.d_max);
  }
  const int model_dmax = opt.model_dmax;
  for (const auto& m : opt.models) {
    const Sequence s = sequence_from(m, model_dmax);
    const MonotoneResult r = monotone_from(s);
    io::Json j = monotone_json(s, r, opt.prec);
    j["empirical"] = false;
    out.push_back(std::move(j));
    checks.add("finite_d_star " + s.id, r.d_star.has_value());
    d_max_seen = std::max(d_max_seen, model_dmax);
  }
  rep.results() = {{"sequences", out}, {"checks", checks.list}};
  rep.provenance() = {{"dmax", d_max_seen},
                      {"model_dmax", model_dmax},
                      {"precision", opt.prec},
                      {"ratio_order", opt.ratio_order},
                      {"comparison", "exact cross powers"}};
  return {checks.all ? exit_ok : exit_verification, rep.finish()};
}

inline CommandResult verify_rays(const VerifyOptions& opt, io::Report& rep) {
  if (opt.caches.size() != 1) throw Error(ErrorCode::unsupported_combination, "rays suite takes one P3 cache");
  const auto path = resolve_cache(opt.caches.front());
  const CountTable t = io::read_cache(path);
  if (t.target != Target::p3) throw Error(ErrorCode::unsupported_combination, "rays suite needs a P3 cache");
  std::vector<std::pair<int, int>> rays = opt.rays;
  if (rays.empty()) rays = {{1, 1}, {2, 2}};

  std::vector<RayReport> reports;
  for (const auto& [a, b] : rays) reports.push_back(p3_ray(t, a, b, opt.prec));

  io::Json per_ray = io::Json::array();
  int max_d = 0;
  for (const auto& r : reports) {
    io::Json roots = io::Json::array();
    for (std::size_t i = 0; i < r.roots.size(); ++i)
      roots.push_back({{"d", r.degrees[i]},
                       {"root", io::real(r.roots[i], 20)},
                       {"difference", i > 0 ? io::Json(io::real(r.differences[i - 1], 6)) : io::Json(nullptr)}});
    per_ray.push_back({{"alpha", r.alpha},
                       {"beta", r.beta},
                       {"roots", roots},
                       {"zero_degrees", r.zero_degrees},
                       {"verdict", r.verdict}});
    if (!r.degrees.empty()) max_d = std::max(max_d, r.degrees.back());
  }
  // Side by side: one row per d, one column per ray.
  io::Json side = io::Json::array();
  for (int d = 1; d <= max_d; ++d) {
    io::Json row{{"d", d}};
    for (const auto& r : reports) {
      const std::string key = std::to_string(r.alpha) + "," + std::to_string(r.beta);
      const auto it = std::find(r.degrees.begin(), r.degrees.end(), d);
      row[key] = it == r.degrees.end() ? io::Json(nullptr)
                                       : io::Json(io::real(r.roots[static_cast<std::size_t>(it - r.degrees.begin())], 12));
    }
    side.push_back(std::move(row));
  }
  rep.results() = {{"cache", table_info(t, path)}, {"rays", per_ray}, {"side_by_side", side}};
  rep.provenance() = {{"dmax", t.d_max}, {"precision", opt.prec}, {"settled_threshold", "1e-6 relative"}};
  return {exit_ok, rep.finish()};
}

}  // namespace detail

inline CommandResult cmd_verify(const VerifyOptions& opt, std::ostream&) {
  io::Report rep("verify");
  io::Json models = io::Json::array();
  for (const auto& m : opt.models) models.push_back({format_rational(m.a), m.k, format_rational(m.n1)});
  io::Json rays = io::Json::array();
  for (const auto& [a, b] : opt.rays) rays.push_back({a, b});
  rep.parameters() = {{"suite", opt.suite},   {"caches", opt.caches}, {"models", models},
                      {"rays", rays},         {"precision", opt.prec}, {"coeffs", opt.coeffs},
                      {"orders", opt.orders}, {"degrees", opt.degrees},
                      {"window", {opt.window_lo, opt.window_hi}}, {"ratio_order", opt.ratio_order},
                      {"model_dmax", opt.model_dmax}};
  if (opt.suite == "asymptotics") return detail::verify_asymptotics(opt, rep);
  if (opt.suite == "monotone") return detail::verify_monotone(opt, rep);
  if (opt.suite == "rays") return detail::verify_rays(opt, rep);
  throw Error(ErrorCode::unsupported_combination, "unknown suite '" + opt.suite + "'");
}

}  // namespace gwasym::cli
