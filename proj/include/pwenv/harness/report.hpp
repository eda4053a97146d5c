#pragma once

// Check records and their JSON / CSV rendering. Output is a pure function of the records
// (no clocks, no host data) and files are replaced atomically.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pwenv/error.hpp"

namespace pwenv::harness {

using ojson = nlohmann::ordered_json;

enum class Status { pass, low_confidence, fail, report_only };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::low_confidence: return "low-confidence";
    case Status::fail: return "fail";
    case Status::report_only: return "report-only";
  }
  return "unknown";
}

struct CheckRecord {
  std::string id;
  ojson inputs = ojson::object();
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // slack of the asserted relation; negative means violated
  double budget = 0.0;  // combined error estimate of lhs and rhs
  Status status = Status::report_only;
  std::string note;
};

/// Status from margin and budget: clear pass, pass only within the budget, or failure.
inline Status judge(double margin, double budget) {
  if (!std::isfinite(margin)) return Status::fail;
  if (margin >= budget) return Status::pass;
  if (margin >= -budget) return Status::low_confidence;
  return Status::fail;
}

inline CheckRecord check(std::string id, ojson inputs, double lhs, double rhs, double margin, double budget,
                         std::string note = {}) {
  return {std::move(id), std::move(inputs), lhs, rhs, margin, budget, judge(margin, budget), std::move(note)};
}

inline CheckRecord record(std::string id, ojson inputs, double lhs, double rhs, std::string note = {}) {
  return {std::move(id), std::move(inputs), lhs, rhs, 0.0, 0.0, Status::report_only, std::move(note)};
}

struct VerificationReport {
  std::string suite;
  std::vector<CheckRecord> rows;
  ojson extra = ojson::object();

  void add(CheckRecord r) { rows.push_back(std::move(r)); }
  void merge(const VerificationReport& other) {
    rows.insert(rows.end(), other.rows.begin(), other.rows.end());
    for (auto it = other.extra.begin(); it != other.extra.end(); ++it) extra[it.key()] = it.value();
  }

  std::size_t count(Status s) const {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.status == s;
    return n;
  }
  bool failed() const { return count(Status::fail) > 0; }
};

inline ojson number(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

inline ojson to_json(const VerificationReport& rep) {
  ojson rows = ojson::array();
  for (const auto& r : rep.rows) {
    ojson o;
    o["check"] = r.id;
    o["inputs"] = r.inputs;
    o["lhs"] = number(r.lhs);
    o["rhs"] = number(r.rhs);
    o["margin"] = number(r.margin);
    o["budget"] = number(r.budget);
    o["status"] = to_string(r.status);
    if (!r.note.empty()) o["note"] = r.note;
    rows.push_back(std::move(o));
  }
  ojson out;
  out["suite"] = rep.suite;
  out["summary"] = {{"rows", rep.rows.size()},
                    {"pass", rep.count(Status::pass)},
                    {"low_confidence", rep.count(Status::low_confidence)},
                    {"fail", rep.count(Status::fail)},
                    {"report_only", rep.count(Status::report_only)}};
  if (!rep.extra.empty()) out["results"] = rep.extra;
  out["checks"] = std::move(rows);
  return out;
}

inline std::string csv_real(double v) {
  if (!std::isfinite(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string to_csv(const VerificationReport& rep) {
  std::string out = "check,inputs,lhs,rhs,margin,budget,status,note\n";
  for (const auto& r : rep.rows) {
    out += csv_quote(r.id) + "," + csv_quote(r.inputs.dump()) + "," + csv_real(r.lhs) + "," + csv_real(r.rhs) + "," +
           csv_real(r.margin) + "," + csv_real(r.budget) + "," + to_string(r.status) + "," + csv_quote(r.note) + "\n";
  }
  return out;
}

/// Write via a temporary sibling and rename into place.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::io, "cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) fail(ErrorKind::io, "write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(ErrorKind::io, "cannot move report into '" + path.string() + "': " + ec.message());
}

/// <dir>/<suite>.json and <dir>/<suite>.csv.
inline void write_report(const std::filesystem::path& dir, const VerificationReport& rep) {
  write_atomic(dir / (rep.suite + ".json"), to_json(rep).dump(2) + "\n");
  write_atomic(dir / (rep.suite + ".csv"), to_csv(rep));
}

}  // namespace pwenv::harness
