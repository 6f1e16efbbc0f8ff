#pragma once

// Cache files for count tables.
//
//   # target=p2
//   # genus=0
//   # dmax=5
//   # version=1
//   1<TAB>1/2
//   2<TAB>1/120
//
// Entries are written as N/(conditions)!, e.g. 5<TAB>87304/87178291200, and
// read back as canonical rationals. P3 rows are d<TAB>p<TAB>num/den. The csv
// flavour adds `# columns=...` and a trailing integer column N, checked on
// read. The json flavour carries the same fields. No timestamps are written, so equal tables
// give byte-identical files.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "json.hpp"

#include "gwasym/error.hpp"
#include "gwasym/numerics/exact_rational.hpp"
#include "gwasym/recursions.hpp"

namespace gwasym::io {

inline constexpr int kCacheVersion = 1;

enum class CacheFormat { text, csv, json };

inline CacheFormat parse_format(const std::string& s) {
  if (s == "text" || s == "tsv") return CacheFormat::text;
  if (s == "csv") return CacheFormat::csv;
  if (s == "json") return CacheFormat::json;
  throw Error(ErrorCode::parse_error, "unknown format '" + s + "' (text, csv, json)");
}

inline std::string extension(CacheFormat f) {
  switch (f) {
    case CacheFormat::text: return ".tsv";
    case CacheFormat::csv: return ".csv";
    case CacheFormat::json: return ".json";
  }
  return ".tsv";
}

namespace detail {

inline std::string count_string(const CountTable& t, int d, int p) {
  const ExactRational n = t.count(d, p);
  return is_integer(n) ? n.get_num().get_str(10) : format_rational(n);
}

// n written as N/(conditions)! when N is an integer, so the count is readable
// from the row; canonical num/den otherwise.
inline std::string row_value(const CountTable& t, int d, int p) {
  const ExactRational n = t.count(d, p);
  if (!is_integer(n)) return format_rational(t.target == Target::p2 ? t.at(d) : t.at(d, p));
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(t.condition_count(d, p)));
  return n.get_num().get_str(10) + "/" + f.get_str(10);
}

inline int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::parse_error, "bad " + what + ": '" + s + "'");
  }
}

inline Target parse_target(const std::string& s) {
  if (s == "p2") return Target::p2;
  if (s == "p3") return Target::p3;
  throw Error(ErrorCode::parse_error, "unknown target '" + s + "'");
}

inline void size_table(CountTable& t) {
  if (t.d_max < 1) throw Error(ErrorCode::parse_error, "dmax must be >= 1");
  if (t.genus != 0 && t.genus != 1) throw Error(ErrorCode::parse_error, "genus must be 0 or 1");
  if (t.target == Target::p3 && t.genus != 0) throw Error(ErrorCode::parse_error, "P3 caches are genus 0 only");
  if (t.target == Target::p2) {
    t.p2_values.assign(static_cast<std::size_t>(t.d_max), ExactRational(0));
  } else {
    t.p3_values.resize(static_cast<std::size_t>(t.d_max));
    for (int d = 1; d <= t.d_max; ++d)
      t.p3_values[static_cast<std::size_t>(d - 1)].assign(static_cast<std::size_t>(2 * d + 1), ExactRational(0));
  }
}

// Rows must arrive in ascending (d) or (d, p) order with no gaps.
class RowCursor {
 public:
  explicit RowCursor(const CountTable& t) : t_(t) {}

  void expect(int d, int p) {
    if (d != d_ || p != p_)
      throw Error(ErrorCode::parse_error, "row (" + std::to_string(d) + (t_.target == Target::p3 ? "," + std::to_string(p) : "") +
                                              ") out of order; expected (" + std::to_string(d_) +
                                              (t_.target == Target::p3 ? "," + std::to_string(p_) : "") + ")");
    if (t_.target == Target::p3 && p_ < 2 * d_) {
      ++p_;
    } else {
      ++d_;
      p_ = 0;
    }
  }

  bool complete() const { return d_ > t_.d_max; }

 private:
  const CountTable& t_;
  int d_ = 1;
  int p_ = 0;
};

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

inline void check_count_column(const CountTable& t, int d, int p, const std::string& text) {
  if (format_rational(t.count(d, p)) != format_rational(parse_rational(text)))
    throw Error(ErrorCode::parse_error, "N column disagrees with n at d=" + std::to_string(d));
}

}  // namespace detail

inline std::string serialize(const CountTable& t, CacheFormat format = CacheFormat::text) {
  if (format == CacheFormat::json) {
    nlohmann::ordered_json j;
    j["version"] = kCacheVersion;
    j["target"] = to_string(t.target);
    j["genus"] = t.genus;
    j["dmax"] = t.d_max;
    auto& rows = j["rows"] = nlohmann::ordered_json::array();
    for (int d = 1; d <= t.d_max; ++d) {
      const int p_hi = t.target == Target::p3 ? 2 * d : 0;
      for (int p = 0; p <= p_hi; ++p) {
        nlohmann::ordered_json row;
        row["d"] = d;
        if (t.target == Target::p3) row["p"] = p;
        row["n"] = detail::row_value(t, d, p);
        row["N"] = detail::count_string(t, d, p);
        rows.push_back(std::move(row));
      }
    }
    return j.dump(1) + "\n";
  }
  std::ostringstream os;
  os << "# target=" << to_string(t.target) << "\n"
     << "# genus=" << t.genus << "\n"
     << "# dmax=" << t.d_max << "\n"
     << "# version=" << kCacheVersion << "\n";
  const bool csv = format == CacheFormat::csv;
  if (csv) os << (t.target == Target::p3 ? "# columns=d\tp\tn\tN\n" : "# columns=d\tn\tN\n");
  for (int d = 1; d <= t.d_max; ++d) {
    if (t.target == Target::p2) {
      os << d << '\t' << detail::row_value(t, d, 0);
      if (csv) os << '\t' << detail::count_string(t, d, 0);
      os << '\n';
    } else {
      for (int p = 0; p <= 2 * d; ++p) {
        os << d << '\t' << p << '\t' << detail::row_value(t, d, p);
        if (csv) os << '\t' << detail::count_string(t, d, p);
        os << '\n';
      }
    }
  }
  return os.str();
}

inline CountTable parse_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("json: ") + e.what());
  }
  CountTable t;
  try {
    if (j.at("version").get<int>() != kCacheVersion) throw Error(ErrorCode::parse_error, "unsupported cache version");
    t.target = detail::parse_target(j.at("target").get<std::string>());
    t.genus = j.at("genus").get<int>();
    t.d_max = j.at("dmax").get<int>();
    detail::size_table(t);
    detail::RowCursor cursor(t);
    for (const auto& row : j.at("rows")) {
      const int d = row.at("d").get<int>();
      const int p = t.target == Target::p3 ? row.at("p").get<int>() : 0;
      cursor.expect(d, p);
      ExactRational n = parse_rational(row.at("n").get<std::string>());
      (t.target == Target::p2 ? t.at(d) : t.at(d, p)) = n;
      if (row.contains("N")) detail::check_count_column(t, d, p, row.at("N").get<std::string>());
    }
    if (!cursor.complete()) throw Error(ErrorCode::parse_error, "cache ends before dmax");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("json: ") + e.what());
  }
  return t;
}

/// Reads any of the three flavours.
inline CountTable parse(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_json(text);

  CountTable t;
  bool have_target = false, have_genus = false, have_dmax = false, have_version = false, sized = false;
  int columns = -1;
  std::optional<detail::RowCursor> cursor;
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (sized) throw Error(ErrorCode::parse_error, "header line after data at line " + std::to_string(line_no));
      std::string body = line.substr(1);
      const auto start = body.find_first_not_of(' ');
      body = start == std::string::npos ? "" : body.substr(start);
      const auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = body.substr(0, eq), value = body.substr(eq + 1);
      if (key == "target") {
        t.target = detail::parse_target(value);
        have_target = true;
      } else if (key == "genus") {
        t.genus = detail::parse_int(value, "genus");
        have_genus = true;
      } else if (key == "dmax") {
        t.d_max = detail::parse_int(value, "dmax");
        have_dmax = true;
      } else if (key == "version") {
        if (detail::parse_int(value, "version") != kCacheVersion)
          throw Error(ErrorCode::parse_error, "unsupported cache version " + value);
        have_version = true;
      } else if (key == "columns") {
        columns = static_cast<int>(detail::split(value, '\t').size());
      }
      continue;
    }
    if (!sized) {
      if (!(have_target && have_genus && have_dmax && have_version))
        throw Error(ErrorCode::parse_error, "missing header field before data");
      detail::size_table(t);
      cursor.emplace(t);
      sized = true;
    }
    const auto f = detail::split(line, '\t');
    const std::size_t key_cols = t.target == Target::p3 ? 2 : 1;
    const std::size_t want = columns > 0 ? static_cast<std::size_t>(columns) : key_cols + 1;
    if (f.size() != want && f.size() != key_cols + 1 && f.size() != key_cols + 2)
      throw Error(ErrorCode::parse_error, "wrong column count at line " + std::to_string(line_no));
    const int d = detail::parse_int(f[0], "degree");
    const int p = t.target == Target::p3 ? detail::parse_int(f[1], "p") : 0;
    cursor->expect(d, p);
    (t.target == Target::p2 ? t.at(d) : t.at(d, p)) = parse_rational(f[key_cols]);
    if (f.size() == key_cols + 2) detail::check_count_column(t, d, p, f[key_cols + 1]);
  }
  if (!sized) {
    if (!(have_target && have_genus && have_dmax && have_version))
      throw Error(ErrorCode::parse_error, "missing header field");
    throw Error(ErrorCode::parse_error, "cache has no rows");
  }
  if (!cursor->complete()) throw Error(ErrorCode::parse_error, "cache ends before dmax");
  return t;
}

/// Writes to a sibling temporary file, then renames over the target.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw Error(ErrorCode::io_failure, "cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp" + std::to_string(static_cast<long>(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io_failure, "cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::io_failure, "write to " + tmp.string() + " failed");
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::io_failure, "cannot rename onto " + path.string());
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_failure, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_cache(const std::filesystem::path& path, const CountTable& t, CacheFormat f = CacheFormat::text) {
  write_atomic(path, serialize(t, f));
}

inline CountTable read_cache(const std::filesystem::path& path) { return parse(read_file(path)); }

/// GWASYM_CACHE_DIR, or ./.gwasym.
inline std::filesystem::path cache_dir() {
  if (const char* env = std::getenv("GWASYM_CACHE_DIR"); env && *env) return env;
  return ".gwasym";
}

inline std::filesystem::path default_cache_path(Target target, int genus, int d_max, CacheFormat f) {
  return cache_dir() / (to_string(target) + "-g" + std::to_string(genus) + "-d" + std::to_string(d_max) + extension(f));
}

}  // namespace gwasym::io
