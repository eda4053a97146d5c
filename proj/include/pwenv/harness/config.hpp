#pragma once

// Experiment configuration, read from JSON or from a small TOML subset: `key = value`
// lines, `[section]` headers, `#` comments, and values that are numbers, booleans,
// double-quoted strings or (nested, possibly multi-line) arrays of those.

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pwenv/error.hpp"
#include "pwenv/norms.hpp"

namespace pwenv::harness {

struct ExperimentConfig {
  std::string suite = "verify";
  std::vector<double> p_grid{0.6, 0.75, 0.9};
  std::vector<double> q_grid{1.0};
  std::vector<double> pp_p_grid{0.6, 0.75, 0.9, 1.0, 2.0};  // exponents of the Plancherel-Polya check
  std::vector<double> y_grid{-2.0, -1.0, -0.5, -0.25, 0.0, 0.25, 0.5, 1.0, 2.0};
  std::vector<double> eps_grid{1.0, 0.5, 0.25, 0.125};
  std::vector<int> k_grid{3, 5};
  double sweep_p = 0.75;
  double envelope_p = 0.5;  // (p, q) of the q-envelope check
  double envelope_q = 0.75;
  double equivalence_p = 0.75;
  int pairs = 20;
  int family_size = 10;
  std::vector<std::string> catalog;  // empty: the whole default catalog
  QuadratureSpec quad;
  std::string out = "reports";
  std::uint64_t seed = 20240611;

  void validate() const {
    auto in_range = [](const std::vector<double>& g, double lo, double hi, bool open_lo, const char* what) {
      if (g.empty()) fail(ErrorKind::invalid_argument, std::string(what) + " is empty");
      for (double v : g)
        if (!(open_lo ? v > lo : v >= lo) || !(v <= hi)) fail(ErrorKind::invalid_argument, std::string(what) + " value out of range");
    };
    in_range(p_grid, 0.0, 1e3, true, "p_grid");
    in_range(q_grid, 0.0, 1.0, true, "q_grid");
    in_range(pp_p_grid, 0.0, 1e3, true, "pp_p_grid");
    in_range(y_grid, -64.0, 64.0, false, "y_grid");
    in_range(eps_grid, 0.0, kPi, true, "eps_grid");
    for (int k : k_grid)
      if (k < 2 || k > 12) fail(ErrorKind::invalid_argument, "k_grid values must lie in [2, 12]");
    if (!(sweep_p > 0.5 && sweep_p < 1.0)) fail(ErrorKind::invalid_argument, "sweep_p must lie in (1/2, 1)");
    EnvelopeParams{envelope_p, envelope_q}.validate();
    EnvelopeParams{equivalence_p, 1.0}.validate();
    if (pairs < 0 || family_size < 0) fail(ErrorKind::invalid_argument, "pairs and family_size must be >= 0");
    quad.validate();
  }
};

namespace detail {

class TomlSubset {
 public:
  explicit TomlSubset(const std::string& text) : text_(text) {}

  nlohmann::json parse() {
    nlohmann::json root = nlohmann::json::object();
    nlohmann::json* table = &root;
    std::istringstream in(text_);
    std::string line;
    while (std::getline(in, line)) {
      ++line_no_;
      line_ = strip_comment(line);
      pos_ = 0;
      skip_ws();
      if (pos_ >= line_.size()) continue;
      if (line_[pos_] == '[') {
        const auto close = line_.find(']', pos_);
        if (close == std::string::npos) error("unterminated table header");
        const std::string name = trim(line_.substr(pos_ + 1, close - pos_ - 1));
        if (name.empty()) error("empty table name");
        table = &root[name];
        if (!table->is_object()) *table = nlohmann::json::object();
        continue;
      }
      const auto eq = line_.find('=', pos_);
      if (eq == std::string::npos) error("expected key = value");
      const std::string key = unquote(trim(line_.substr(pos_, eq - pos_)));
      if (key.empty()) error("empty key");
      pos_ = eq + 1;
      // arrays may continue over several lines
      std::string more;
      while (open_brackets(line_.substr(pos_)) > 0 && std::getline(in, more)) {
        ++line_no_;
        line_ += " " + strip_comment(more);
      }
      (*table)[key] = value();
      skip_ws();
      if (pos_ != line_.size()) error("trailing characters");
    }
    return root;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::invalid_argument, "config line " + std::to_string(line_no_) + ": " + what);
  }

  static std::string strip_comment(const std::string& s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '"') quoted = !quoted;
      if (s[i] == '#' && !quoted) return s.substr(0, i);
    }
    return s;
  }

  static int open_brackets(const std::string& s) {
    int depth = 0;
    bool quoted = false;
    for (char c : s) {
      if (c == '"') quoted = !quoted;
      if (quoted) continue;
      depth += (c == '[') - (c == ']');
    }
    return depth;
  }

  static std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
  }

  static std::string unquote(const std::string& s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
    return s;
  }

  void skip_ws() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
  }

  nlohmann::json value() {
    skip_ws();
    if (pos_ >= line_.size()) error("missing value");
    const char c = line_[pos_];
    if (c == '"') {
      const auto close = line_.find('"', pos_ + 1);
      if (close == std::string::npos) error("unterminated string");
      std::string s = line_.substr(pos_ + 1, close - pos_ - 1);
      pos_ = close + 1;
      return s;
    }
    if (c == '[') {
      ++pos_;
      nlohmann::json arr = nlohmann::json::array();
      skip_ws();
      if (pos_ < line_.size() && line_[pos_] == ']') {
        ++pos_;
        return arr;
      }
      while (true) {
        arr.push_back(value());
        skip_ws();
        if (pos_ >= line_.size()) error("unterminated array");
        if (line_[pos_] == ',') {
          ++pos_;
          skip_ws();
          if (pos_ < line_.size() && line_[pos_] == ']') {
            ++pos_;
            return arr;
          }
          continue;
        }
        if (line_[pos_] == ']') {
          ++pos_;
          return arr;
        }
        error("expected , or ] in array");
      }
    }
    std::size_t end = pos_;
    while (end < line_.size() && line_[end] != ',' && line_[end] != ']' &&
           !std::isspace(static_cast<unsigned char>(line_[end])))
      ++end;
    const std::string tok = line_.substr(pos_, end - pos_);
    pos_ = end;
    if (tok == "true") return true;
    if (tok == "false") return false;
    std::string clean;
    for (char ch : tok)
      if (ch != '_') clean.push_back(ch);
    try {
      std::size_t used = 0;
      if (clean.find_first_of(".eE") == std::string::npos && clean != "inf" && clean != "nan") {
        const long long v = std::stoll(clean, &used);
        if (used == clean.size()) return v;
      }
      const double d = std::stod(clean, &used);
      if (used == clean.size()) return d;
    } catch (const std::exception&) {
    }
    error("cannot parse value '" + tok + "'");
  }

  std::string text_;
  std::string line_;
  std::size_t pos_ = 0;
  int line_no_ = 0;
};

}  // namespace detail

inline nlohmann::json parse_toml_subset(const std::string& text) { return detail::TomlSubset(text).parse(); }

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  static const char* known[] = {"suite",        "p_grid",        "q_grid",         "pp_p_grid",  "y_grid",
                                "eps_grid",     "k_grid",        "sweep_p",        "envelope_p", "envelope_q",
                                "equivalence_p", "pairs",        "family_size",    "catalog",    "quadrature",
                                "out",          "seed"};
  if (!j.is_object()) fail(ErrorKind::invalid_argument, "config must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) fail(ErrorKind::invalid_argument, "unknown config key '" + it.key() + "'");
  }
  try {
    if (j.contains("suite")) c.suite = j.at("suite").get<std::string>();
    if (j.contains("p_grid")) c.p_grid = j.at("p_grid").get<std::vector<double>>();
    if (j.contains("q_grid")) c.q_grid = j.at("q_grid").get<std::vector<double>>();
    if (j.contains("pp_p_grid")) c.pp_p_grid = j.at("pp_p_grid").get<std::vector<double>>();
    if (j.contains("y_grid")) c.y_grid = j.at("y_grid").get<std::vector<double>>();
    if (j.contains("eps_grid")) c.eps_grid = j.at("eps_grid").get<std::vector<double>>();
    if (j.contains("k_grid")) c.k_grid = j.at("k_grid").get<std::vector<int>>();
    if (j.contains("sweep_p")) c.sweep_p = j.at("sweep_p").get<double>();
    if (j.contains("envelope_p")) c.envelope_p = j.at("envelope_p").get<double>();
    if (j.contains("envelope_q")) c.envelope_q = j.at("envelope_q").get<double>();
    if (j.contains("equivalence_p")) c.equivalence_p = j.at("equivalence_p").get<double>();
    if (j.contains("pairs")) c.pairs = j.at("pairs").get<int>();
    if (j.contains("family_size")) c.family_size = j.at("family_size").get<int>();
    if (j.contains("catalog")) c.catalog = j.at("catalog").get<std::vector<std::string>>();
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("quadrature")) {
      const auto& q = j.at("quadrature");
      if (q.contains("x_truncation")) c.quad.x_truncation = q.at("x_truncation").get<double>();
      if (q.contains("x_panel_count")) c.quad.x_panel_count = q.at("x_panel_count").get<int>();
      if (q.contains("y_truncation")) c.quad.y_truncation = q.at("y_truncation").get<double>();
      if (q.contains("jacobi_node_count")) c.quad.jacobi_node_count = q.at("jacobi_node_count").get<int>();
      if (q.contains("rel_tolerance")) c.quad.rel_tolerance = q.at("rel_tolerance").get<double>();
      if (q.contains("tail_model")) c.quad.tail_model = q.at("tail_model").get<bool>();
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::invalid_argument, std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

/// Reads a .json file as JSON and anything else as the TOML subset.
inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io, "cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  const bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  if (json) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::invalid_argument, std::string("config: ") + e.what());
    }
    return config_from_json(j);
  }
  return config_from_json(parse_toml_subset(text));
}

}  // namespace pwenv::harness
