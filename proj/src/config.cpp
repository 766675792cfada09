// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

#include "anisub/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>

#include "anisub/error.hpp"
#include "anisub/io.hpp"
#include "anisub/verify.hpp"

namespace anisub::cli {
namespace {

struct Value {
  bool is_array = false;
  std::string text;  // scalar payload
  std::vector<Value> items;
  int line = 0;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return std::string(line.substr(0, i));
  }
  return std::string(line);
}

class ValueParser {
 public:
  ValueParser(std::string_view text, std::string field, int line)
      : text_(text), field_(std::move(field)), line_(line) {}

  Value parse() {
    Value v = parse_value();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters after value");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError(field_, what, line_);
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\n' || text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  Value parse_value() {
    skip_space();
    if (pos_ >= text_.size()) fail("missing value");
    Value v;
    v.line = line_;
    if (text_[pos_] == '[') {
      v.is_array = true;
      ++pos_;
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == ']') {
        ++pos_;
        return v;
      }
      for (;;) {
        v.items.push_back(parse_value());
        skip_space();
        if (pos_ >= text_.size()) fail("unterminated array");
        if (text_[pos_] == ']') {
          ++pos_;
          return v;
        }
        if (text_[pos_] != ',') fail("expected ',' or ']' in array");
        ++pos_;
      }
    }
    if (text_[pos_] == '"') {
      const auto end = text_.find('"', pos_ + 1);
      if (end == std::string_view::npos) fail("unterminated string");
      v.text = std::string(text_.substr(pos_ + 1, end - pos_ - 1));
      pos_ = end + 1;
      return v;
    }
    const auto start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ']' &&
           text_[pos_] != '[') {
      ++pos_;
    }
    v.text = std::string(trim(text_.substr(start, pos_ - start)));
    if (v.text.empty()) fail("empty value");
    return v;
  }

  std::string_view text_;
  std::string field_;
  int line_;
  std::size_t pos_ = 0;
};

double to_double(const Value& v, const std::string& field) {
  if (v.is_array) throw ConfigError(field, field + " must be a number", v.line);
  double x = 0.0;
  const char* b = v.text.data();
  const char* e = b + v.text.size();
  auto [ptr, ec] = std::from_chars(b, e, x);
  if (ec != std::errc() || ptr != e || !std::isfinite(x)) {
    throw ConfigError(field, field + ": '" + v.text + "' is not a finite number", v.line);
  }
  return x;
}

std::uint64_t to_u64(const Value& v, const std::string& field) {
  if (v.is_array) throw ConfigError(field, field + " must be an integer", v.line);
  std::uint64_t n = 0;
  const char* b = v.text.data();
  const char* e = b + v.text.size();
  auto [ptr, ec] = std::from_chars(b, e, n);
  if (ec == std::errc() && ptr == e) return n;
  // Accept integral floating literals such as 1e5.
  double x = 0.0;
  auto [p2, ec2] = std::from_chars(b, e, x);
  if (ec2 == std::errc() && p2 == e && x >= 0.0 && x <= 9007199254740992.0 && x == std::floor(x)) {
    return static_cast<std::uint64_t>(x);
  }
  throw ConfigError(field, field + ": '" + v.text + "' is not a nonnegative integer", v.line);
}

std::string to_string(const Value& v, const std::string& field) {
  if (v.is_array) throw ConfigError(field, field + " must be a string", v.line);
  return v.text;
}

std::vector<double> to_doubles(const Value& v, const std::string& field) {
  if (!v.is_array) throw ConfigError(field, field + " must be an array", v.line);
  std::vector<double> out;
  for (const auto& item : v.items) out.push_back(to_double(item, field));
  return out;
}

std::vector<std::string> to_strings(const Value& v, const std::string& field) {
  if (!v.is_array) throw ConfigError(field, field + " must be an array", v.line);
  std::vector<std::string> out;
  for (const auto& item : v.items) out.push_back(to_string(item, field));
  return out;
}

std::vector<std::vector<double>> to_matrix(const Value& v, const std::string& field) {
  if (!v.is_array) throw ConfigError(field, field + " must be an array of arrays", v.line);
  std::vector<std::vector<double>> out;
  for (const auto& row : v.items) out.push_back(to_doubles(row, field));
  return out;
}

using Entries = std::map<std::string, Value>;  // keyed by "section.key"

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "seed", "threads", "format",
      "model.kind", "model.alpha", "model.c", "model.kappa", "model.atom_angles",
      "model.atom_weights", "model.density_nodes", "model.density_weights",
      "model.density_values", "model.scale1", "model.scale2", "model.t1_alpha",
      "model.t1_scale", "model.t2_alpha", "model.t2_scale", "model.g_alpha", "model.g_scale",
      "model.c1", "model.c2",
      "simulate.x_max", "simulate.dx", "simulate.n_paths",
      "invert.t1", "invert.t2", "invert.dx", "invert.n_reps", "invert.max_cells",
      "subdiffuse.t_grid", "subdiffuse.dx", "subdiffuse.n_paths", "subdiffuse.n_reps",
      "subdiffuse.max_cells",
      "poisson.xi1", "poisson.xi2", "poisson.t1", "poisson.t2", "poisson.n_reps",
      "ctmc.states1", "ctmc.states2", "ctmc.a", "ctmc.b", "ctmc.xi1", "ctmc.xi2", "ctmc.t1",
      "ctmc.t2", "ctmc.dx", "ctmc.route", "ctmc.n_reps",
      "ctrw.c_values", "ctrw.t", "ctrw.n_reps", "ctrw.n_ref", "ctrw.dx",
      "verify.identities", "verify.budget", "verify.z_max", "verify.dx"};
  return keys;
}

const std::set<std::string>& known_sections() {
  static const std::set<std::string> sections{"model",  "simulate", "invert", "subdiffuse",
                                              "poisson", "ctmc",     "ctrw",   "verify"};
  return sections;
}

Entries read_entries(std::string_view text) {
  Entries entries;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = std::string(trim(strip_comment(raw)));
    if (line.empty()) continue;
    if (line.front() == '[' && line.find('=') == std::string::npos) {
      if (line.back() != ']') throw ConfigError("", "malformed section header", line_no);
      section = std::string(trim(std::string_view(line).substr(1, line.size() - 2)));
      if (!known_sections().count(section)) {
        throw ConfigError(section, "unknown section [" + section + "]", line_no);
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("", "expected 'key = value'", line_no);
    const std::string key = std::string(trim(std::string_view(line).substr(0, eq)));
    const std::string field = section.empty() ? key : section + "." + key;
    if (key.empty()) throw ConfigError("", "missing key before '='", line_no);
    if (!known_keys().count(field)) throw ConfigError(field, "unknown key " + field, line_no);
    if (entries.count(field)) throw ConfigError(field, "duplicate key " + field, line_no);
    std::string value = line.substr(eq + 1);
    // An array may continue over several lines until its brackets balance.
    const int start_line = line_no;
    auto depth = [](const std::string& s) {
      int d = 0;
      bool quoted = false;
      for (char ch : s) {
        if (ch == '"') quoted = !quoted;
        if (quoted) continue;
        if (ch == '[') ++d;
        if (ch == ']') --d;
      }
      return d;
    };
    while (depth(value) > 0 && std::getline(in, raw)) {
      ++line_no;
      value += ' ' + std::string(trim(strip_comment(raw)));
    }
    entries.emplace(field, ValueParser(value, field, start_line).parse());
  }
  return entries;
}

std::string_view model_key(const std::string& field) {
  return std::string_view(field).substr(6);  // strip "model."
}

BivariateModel build_model(const Entries& entries) {
  auto get = [&](const char* key) -> const Value* {
    const auto it = entries.find(std::string("model.") + key);
    return it == entries.end() ? nullptr : &it->second;
  };
  auto num = [&](const char* key, double fallback) {
    const Value* v = get(key);
    return v ? to_double(*v, std::string("model.") + key) : fallback;
  };
  const std::string kind =
      get("kind") ? to_string(*get("kind"), "model.kind") : std::string("spectral-stable");

  std::set<std::string> allowed;
  if (kind == "spectral-stable") {
    allowed = {"kind", "alpha", "c", "kappa", "atom_angles", "atom_weights",
               "density_nodes", "density_weights", "density_values"};
  } else if (kind == "independent-stable") {
    allowed = {"kind", "alpha", "scale1", "scale2"};
  } else if (kind == "common-factor") {
    allowed = {"kind", "t1_alpha", "t1_scale", "t2_alpha", "t2_scale", "g_alpha", "g_scale",
               "c1", "c2"};
  } else {
    throw ConfigError("model.kind",
                      "model.kind must be spectral-stable, independent-stable or common-factor",
                      get("kind")->line);
  }
  for (const auto& [field, value] : entries) {
    if (field.rfind("model.", 0) != 0) continue;
    if (!allowed.count(std::string(model_key(field)))) {
      throw ConfigError(field, field + " is not a parameter of " + kind, value.line);
    }
  }

  auto alpha_of = [&](const char* key) {
    const std::string field = std::string("model.") + key;
    const double a = num(key, 0.5);
    if (!(a > 0.0 && a <= 1.0)) {
      throw ConfigError(field, field + " must lie in (0, 1], got " + format_number(a),
                        get(key) ? get(key)->line : 0);
    }
    return a;
  };

  if (kind == "independent-stable") {
    return IndependentStable{Alpha(alpha_of("alpha")), num("scale1", 1.0), num("scale2", 1.0)};
  }
  if (kind == "common-factor") {
    CommonFactor cf;
    cf.t1 = {alpha_of("t1_alpha"), num("t1_scale", 1.0)};
    cf.t2 = {alpha_of("t2_alpha"), num("t2_scale", 1.0)};
    cf.g = {alpha_of("g_alpha"), num("g_scale", 1.0)};
    cf.c1 = num("c1", 1.0);
    cf.c2 = num("c2", 1.0);
    return cf;
  }

  const Alpha alpha(alpha_of("alpha"));
  SpectralMeasure m;
  const Value* angles = get("atom_angles");
  const Value* weights = get("atom_weights");
  if (angles || weights) {
    if (!angles || !weights) {
      const Value* present = angles ? angles : weights;
      throw ConfigError(angles ? "model.atom_weights" : "model.atom_angles",
                        "atom_angles and atom_weights must be given together", present->line);
    }
    const auto a = to_doubles(*angles, "model.atom_angles");
    const auto w = to_doubles(*weights, "model.atom_weights");
    if (a.size() != w.size()) {
      throw ConfigError("model.atom_weights", "atom_angles and atom_weights differ in length",
                        weights->line);
    }
    for (std::size_t i = 0; i < a.size(); ++i) m.add_atom(a[i], w[i]);
  }
  const Value* values = get("density_values");
  const Value* nodes = get("density_nodes");
  const Value* qweights = get("density_weights");
  if (values || nodes || qweights) {
    if (!values || !nodes || !qweights) {
      const Value* present = values ? values : (nodes ? nodes : qweights);
      throw ConfigError("model.density_nodes",
                        "a spectral density needs density_nodes, density_weights and "
                        "density_values (its quadrature rule)",
                        present->line);
    }
    TabulatedDensity d;
    d.rule.nodes = to_doubles(*nodes, "model.density_nodes");
    d.rule.weights = to_doubles(*qweights, "model.density_weights");
    d.values = to_doubles(*values, "model.density_values");
    m.set_density(std::move(d));
  }
  if (!angles && !values) {
    throw ConfigError("model.atom_angles", "spectral-stable model needs atoms or a density", 0);
  }
  if (get("c") && get("kappa")) {
    throw ConfigError("model.c", "give either model.c or model.kappa, not both", get("c")->line);
  }
  if (get("c")) {
    const double c = num("c", 1.0);
    if (alpha.is_drift_limit()) {
      throw ConfigError("model.c", "model.c is undefined at alpha = 1; use model.kappa",
                        get("c")->line);
    }
    if (!(c > 0.0)) throw ConfigError("model.c", "model.c must be > 0", get("c")->line);
    return SpectralStable::with_intensity(alpha, c, std::move(m));
  }
  const double kappa = num("kappa", 1.0);
  if (!(kappa > 0.0)) {
    throw ConfigError("model.kappa", "model.kappa must be > 0", get("kappa")->line);
  }
  return SpectralStable{alpha, kappa, std::move(m)};
}

// Prefixes a core error's bare field name and attaches the line it came from.
ConfigError qualify(const ConfigError& e, const std::string& section,
                    const std::map<std::string, int>& lines) {
  std::string field = e.field();
  if (!field.empty() && field.find('.') == std::string::npos && !section.empty()) {
    field = section + "." + field;
  }
  int line = e.line();
  if (line == 0) {
    const auto it = lines.find(field);
    if (it != lines.end()) line = it->second;
  }
  return ConfigError(field, e.what(), line);
}

void require(bool ok, const std::string& field, const std::string& what,
             const std::map<std::string, int>& lines) {
  if (ok) return;
  const auto it = lines.find(field);
  throw ConfigError(field, what, it == lines.end() ? 0 : it->second);
}

void check_ranges(const RunConfig& c) {
  const auto& L = c.key_lines;
  require(c.threads >= 1 && c.threads <= 1024, "threads", "threads must lie in [1, 1024]", L);
  require(c.format == "csv" || c.format == "ndjson", "format", "format must be csv or ndjson", L);
  require(c.simulate.x_max > 0.0, "simulate.x_max", "simulate.x_max must be > 0", L);
  require(c.simulate.dx > 0.0, "simulate.dx", "simulate.dx must be > 0", L);
  require(c.simulate.n_paths >= 1, "simulate.n_paths", "simulate.n_paths must be >= 1", L);
  require(c.invert.t1 >= 0.0, "invert.t1", "invert.t1 must be >= 0", L);
  require(c.invert.t2 >= 0.0, "invert.t2", "invert.t2 must be >= 0", L);
  require(c.invert.dx > 0.0, "invert.dx", "invert.dx must be > 0", L);
  require(c.invert.n_reps >= 1, "invert.n_reps", "invert.n_reps must be >= 1", L);
  require(c.invert.max_cells >= 1, "invert.max_cells", "invert.max_cells must be >= 1", L);
  require(!c.subdiffuse.t_grid.empty(), "subdiffuse.t_grid", "subdiffuse.t_grid is empty", L);
  for (std::size_t i = 0; i < c.subdiffuse.t_grid.size(); ++i) {
    require(c.subdiffuse.t_grid[i] > 0.0 && (i == 0 || c.subdiffuse.t_grid[i] > c.subdiffuse.t_grid[i - 1]),
            "subdiffuse.t_grid", "subdiffuse.t_grid must be positive and strictly increasing", L);
  }
  require(c.subdiffuse.dx > 0.0, "subdiffuse.dx", "subdiffuse.dx must be > 0", L);
  require(c.subdiffuse.n_reps >= 2, "subdiffuse.n_reps", "subdiffuse.n_reps must be >= 2", L);
  require(c.subdiffuse.max_cells >= 1, "subdiffuse.max_cells", "subdiffuse.max_cells must be >= 1", L);
  require(c.poisson.xi1 > 0.0, "poisson.xi1", "poisson.xi1 must be > 0", L);
  require(c.poisson.xi2 > 0.0, "poisson.xi2", "poisson.xi2 must be > 0", L);
  require(c.poisson.t1 >= 0.0, "poisson.t1", "poisson.t1 must be >= 0", L);
  require(c.poisson.t2 >= 0.0, "poisson.t2", "poisson.t2 must be >= 0", L);
  require(c.poisson.n_reps >= 1, "poisson.n_reps", "poisson.n_reps must be >= 1", L);
  require(c.ctmc.t1 >= 0.0, "ctmc.t1", "ctmc.t1 must be >= 0", L);
  require(c.ctmc.t2 >= 0.0, "ctmc.t2", "ctmc.t2 must be >= 0", L);
  require(c.ctmc.dx > 0.0, "ctmc.dx", "ctmc.dx must be > 0", L);
  require(c.ctmc.n_reps >= 1, "ctmc.n_reps", "ctmc.n_reps must be >= 1", L);
  require(c.ctrw.dx > 0.0, "ctrw.dx", "ctrw.dx must be > 0", L);
  require(c.verify.z_max > 0.0, "verify.z_max", "verify.z_max must be > 0", L);
  require(c.verify.budget >= 2, "verify.budget", "verify.budget must be >= 2", L);
  require(c.verify.dx > 0.0 && c.verify.dx <= 0.5, "verify.dx", "verify.dx must lie in (0, 0.5]", L);
  const auto& catalog = verify::identity_catalog();
  for (const auto& name : c.verify.identities) {
    require(std::find(catalog.begin(), catalog.end(), name) != catalog.end(), "verify.identities",
            "verify.identities: unknown identity '" + name + "'", L);
  }
}

std::string join(const std::vector<double>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += format_number(xs[i]);
  }
  return out + "]";
}

std::string join(const std::vector<std::string>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += '"' + xs[i] + '"';
  }
  return out + "]";
}

std::string join(const std::vector<std::vector<double>>& rows) {
  std::string out = "[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) out += ", ";
    out += join(rows[i]);
  }
  return out + "]";
}

}  // namespace

BivariateModel default_model() {
  SpectralMeasure m;
  m.add_atom(0.0, 0.5).add_atom(std::numbers::pi / 4, 1.0);
  return SpectralStable::standard(Alpha(0.5), std::move(m));
}

const char* route_name(timechange::CtmcRoute route) {
  return route == timechange::CtmcRoute::interarrival ? "interarrival" : "inverse";
}

RunConfig parse_config(std::string_view text) {
  const Entries entries = read_entries(text);
  RunConfig c;
  for (const auto& [field, value] : entries) c.key_lines[field] = value.line;

  using Setter = std::function<void(const Value&, const std::string&)>;
  auto dbl = [](double& dst) -> Setter {
    return [&dst](const Value& v, const std::string& f) { dst = to_double(v, f); };
  };
  auto u64 = [](std::uint64_t& dst) -> Setter {
    return [&dst](const Value& v, const std::string& f) { dst = to_u64(v, f); };
  };
  auto dbls = [](std::vector<double>& dst) -> Setter {
    return [&dst](const Value& v, const std::string& f) { dst = to_doubles(v, f); };
  };
  auto strs = [](std::vector<std::string>& dst) -> Setter {
    return [&dst](const Value& v, const std::string& f) { dst = to_strings(v, f); };
  };
  auto mat = [](std::vector<std::vector<double>>& dst) -> Setter {
    return [&dst](const Value& v, const std::string& f) { dst = to_matrix(v, f); };
  };

  const std::map<std::string, Setter> setters{
      {"seed", u64(c.seed)},
      {"threads",
       [&c](const Value& v, const std::string& f) {
         const auto n = to_u64(v, f);
         if (n < 1 || n > 1024) throw ConfigError(f, "threads must lie in [1, 1024]", v.line);
         c.threads = static_cast<unsigned>(n);
       }},
      {"format", [&c](const Value& v, const std::string& f) { c.format = to_string(v, f); }},
      {"simulate.x_max", dbl(c.simulate.x_max)},
      {"simulate.dx", dbl(c.simulate.dx)},
      {"simulate.n_paths", u64(c.simulate.n_paths)},
      {"invert.t1", dbl(c.invert.t1)},
      {"invert.t2", dbl(c.invert.t2)},
      {"invert.dx", dbl(c.invert.dx)},
      {"invert.n_reps", u64(c.invert.n_reps)},
      {"invert.max_cells", u64(c.invert.max_cells)},
      {"subdiffuse.t_grid", dbls(c.subdiffuse.t_grid)},
      {"subdiffuse.dx", dbl(c.subdiffuse.dx)},
      {"subdiffuse.n_paths", u64(c.subdiffuse.n_paths)},
      {"subdiffuse.n_reps", u64(c.subdiffuse.n_reps)},
      {"subdiffuse.max_cells", u64(c.subdiffuse.max_cells)},
      {"poisson.xi1", dbl(c.poisson.xi1)},
      {"poisson.xi2", dbl(c.poisson.xi2)},
      {"poisson.t1", dbl(c.poisson.t1)},
      {"poisson.t2", dbl(c.poisson.t2)},
      {"poisson.n_reps", u64(c.poisson.n_reps)},
      {"ctmc.states1", strs(c.ctmc.spec.states1)},
      {"ctmc.states2", strs(c.ctmc.spec.states2)},
      {"ctmc.a", mat(c.ctmc.spec.a)},
      {"ctmc.b", mat(c.ctmc.spec.b)},
      {"ctmc.xi1", dbl(c.ctmc.spec.xi1)},
      {"ctmc.xi2", dbl(c.ctmc.spec.xi2)},
      {"ctmc.t1", dbl(c.ctmc.t1)},
      {"ctmc.t2", dbl(c.ctmc.t2)},
      {"ctmc.dx", dbl(c.ctmc.dx)},
      {"ctmc.route",
       [&c](const Value& v, const std::string& f) {
         const std::string r = to_string(v, f);
         if (r == "interarrival") {
           c.ctmc.route = timechange::CtmcRoute::interarrival;
         } else if (r == "inverse") {
           c.ctmc.route = timechange::CtmcRoute::inverse;
         } else {
           throw ConfigError(f, "ctmc.route must be interarrival or inverse", v.line);
         }
       }},
      {"ctmc.n_reps", u64(c.ctmc.n_reps)},
      {"ctrw.c_values", dbls(c.ctrw.c_values)},
      {"ctrw.t", dbl(c.ctrw.t)},
      {"ctrw.n_reps", u64(c.ctrw.n_reps)},
      {"ctrw.n_ref", u64(c.ctrw.n_ref)},
      {"ctrw.dx", dbl(c.ctrw.dx)},
      {"verify.identities", strs(c.verify.identities)},
      {"verify.budget", u64(c.verify.budget)},
      {"verify.z_max", dbl(c.verify.z_max)},
      {"verify.dx", dbl(c.verify.dx)},
  };

  for (const auto& [field, value] : entries) {
    if (field.rfind("model.", 0) == 0) continue;
    setters.at(field)(value, field);
  }

  const bool has_model = std::any_of(entries.begin(), entries.end(), [](const auto& e) {
    return e.first.rfind("model.", 0) == 0;
  });
  try {
    if (has_model) c.model = build_model(entries);
    validate(c.model);
  } catch (const ConfigError& e) {
    throw qualify(e, "model", c.key_lines);
  } catch (const DomainError& e) {
    throw ConfigError("model", e.what(), 0);
  }
  if (entries.count("ctmc.states1") || entries.count("ctmc.states2") || entries.count("ctmc.a") ||
      entries.count("ctmc.b") || entries.count("ctmc.xi1") || entries.count("ctmc.xi2")) {
    try {
      c.ctmc.spec.validate();
    } catch (const ConfigError& e) {
      throw qualify(e, "ctmc", c.key_lines);
    }
  }
  check_ranges(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config", "cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_config_text(const RunConfig& c) {
  std::ostringstream os;
  os << "seed = " << c.seed << "\n";
  os << "threads = " << c.threads << "\n";
  os << "format = " << c.format << "\n";

  os << "\n[model]\n";
  os << "kind = " << model_kind(c.model) << "\n";
  if (const auto* m = std::get_if<SpectralStable>(&c.model)) {
    os << "alpha = " << format_number(m->alpha.value()) << "\n";
    os << "kappa = " << format_number(m->kappa) << "\n";
    if (!m->m.atoms().empty()) {
      std::vector<double> a;
      std::vector<double> w;
      for (const auto& atom : m->m.atoms()) {
        a.push_back(atom.angle);
        w.push_back(atom.weight);
      }
      os << "atom_angles = " << join(a) << "\n";
      os << "atom_weights = " << join(w) << "\n";
    }
    if (const auto& d = m->m.density()) {
      os << "density_nodes = " << join(d->rule.nodes) << "\n";
      os << "density_weights = " << join(d->rule.weights) << "\n";
      os << "density_values = " << join(d->values) << "\n";
    }
  } else if (const auto* m = std::get_if<IndependentStable>(&c.model)) {
    os << "alpha = " << format_number(m->alpha.value()) << "\n";
    os << "scale1 = " << format_number(m->scale1) << "\n";
    os << "scale2 = " << format_number(m->scale2) << "\n";
  } else {
    const auto& cf = std::get<CommonFactor>(c.model);
    os << "t1_alpha = " << format_number(cf.t1.alpha) << "\n";
    os << "t1_scale = " << format_number(cf.t1.scale) << "\n";
    os << "t2_alpha = " << format_number(cf.t2.alpha) << "\n";
    os << "t2_scale = " << format_number(cf.t2.scale) << "\n";
    os << "g_alpha = " << format_number(cf.g.alpha) << "\n";
    os << "g_scale = " << format_number(cf.g.scale) << "\n";
    os << "c1 = " << format_number(cf.c1) << "\n";
    os << "c2 = " << format_number(cf.c2) << "\n";
  }

  os << "\n[simulate]\n"
     << "x_max = " << format_number(c.simulate.x_max) << "\n"
     << "dx = " << format_number(c.simulate.dx) << "\n"
     << "n_paths = " << c.simulate.n_paths << "\n";

  os << "\n[invert]\n"
     << "t1 = " << format_number(c.invert.t1) << "\n"
     << "t2 = " << format_number(c.invert.t2) << "\n"
     << "dx = " << format_number(c.invert.dx) << "\n"
     << "n_reps = " << c.invert.n_reps << "\n"
     << "max_cells = " << c.invert.max_cells << "\n";

  os << "\n[subdiffuse]\n"
     << "t_grid = " << join(c.subdiffuse.t_grid) << "\n"
     << "dx = " << format_number(c.subdiffuse.dx) << "\n"
     << "n_paths = " << c.subdiffuse.n_paths << "\n"
     << "n_reps = " << c.subdiffuse.n_reps << "\n"
     << "max_cells = " << c.subdiffuse.max_cells << "\n";

  os << "\n[poisson]\n"
     << "xi1 = " << format_number(c.poisson.xi1) << "\n"
     << "xi2 = " << format_number(c.poisson.xi2) << "\n"
     << "t1 = " << format_number(c.poisson.t1) << "\n"
     << "t2 = " << format_number(c.poisson.t2) << "\n"
     << "n_reps = " << c.poisson.n_reps << "\n";

  os << "\n[ctmc]\n"
     << "states1 = " << join(c.ctmc.spec.states1) << "\n"
     << "states2 = " << join(c.ctmc.spec.states2) << "\n"
     << "a = " << join(c.ctmc.spec.a) << "\n"
     << "b = " << join(c.ctmc.spec.b) << "\n"
     << "xi1 = " << format_number(c.ctmc.spec.xi1) << "\n"
     << "xi2 = " << format_number(c.ctmc.spec.xi2) << "\n"
     << "t1 = " << format_number(c.ctmc.t1) << "\n"
     << "t2 = " << format_number(c.ctmc.t2) << "\n"
     << "dx = " << format_number(c.ctmc.dx) << "\n"
     << "route = " << route_name(c.ctmc.route) << "\n"
     << "n_reps = " << c.ctmc.n_reps << "\n";

  os << "\n[ctrw]\n"
     << "c_values = " << join(c.ctrw.c_values) << "\n"
     << "t = " << format_number(c.ctrw.t) << "\n"
     << "n_reps = " << c.ctrw.n_reps << "\n"
     << "n_ref = " << c.ctrw.n_ref << "\n"
     << "dx = " << format_number(c.ctrw.dx) << "\n";

  os << "\n[verify]\n"
     << "identities = " << join(c.verify.identities) << "\n"
     << "budget = " << c.verify.budget << "\n"
     << "z_max = " << format_number(c.verify.z_max) << "\n"
     << "dx = " << format_number(c.verify.dx) << "\n";
  return os.str();
}

}  // namespace anisub::cli
