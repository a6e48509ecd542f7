#include "ks2d/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ks2d {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

struct KeyValue {
  std::string value;
  int line;
};

long checked_steps(double span, double h, const char* what) {
  const long steps = std::lround(span / h);
  if (steps < 0 || std::abs(steps * h - span) > 1e-9 * std::max(1.0, span)) {
    std::ostringstream os;
    os << what << " (" << span << ") must be a nonnegative multiple of the time step " << h;
    throw ConfigError(os.str());
  }
  return steps;
}

}  // namespace

std::string to_string(Scheme s) {
  return s == Scheme::imex_euler ? "imex_euler" : "rk4";
}

void RunConfig::validate() const {
  try {
    model.validate();
    Grid probe(n);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(h > 0.0)) throw ConfigError("time step h must be positive");
  if (t_end < 0.0) throw ConfigError("t_end must be nonnegative");
  if (diag_every < 1) throw ConfigError("diag_every must be a positive step count");
  if (snap_every < 1) throw ConfigError("snap_every must be a positive step count");
  if (refine < 1) throw ConfigError("refine must be >= 1");
  if (out_dir.empty()) throw ConfigError("out_dir must be set");
  if (init.name == "random") {
    if (init.k_max < 1) throw ConfigError("k_max must be >= 1");
    if (init.k_max >= n / 2) {
      throw ConfigError("k_max (" + std::to_string(init.k_max) +
                        ") must be below n/2 = " + std::to_string(n / 2));
    }
    if (init.amplitude < 0.0) throw ConfigError("amplitude must be nonnegative");
  }
  if (scheme == Scheme::imex_euler && model.kind == ModelKind::burgers_inviscid) {
    throw ConfigError(
        "imex_euler needs a stiff linear part; burgers_inviscid has none "
        "(use scheme = rk4)");
  }
  total_steps();
}

long RunConfig::total_steps() const { return checked_steps(t_end, h, "t_end"); }

long RunConfig::steps_between(double t0) const {
  return checked_steps(t_end - t0, h, "t_end - resume time");
}

RunConfig parse_config(std::istream& in, const std::string& filename) {
  std::map<std::string, KeyValue> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(filename + ":" + std::to_string(lineno) +
                        ": expected 'key = value', got '" + stripped + "'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError(filename + ":" + std::to_string(lineno) +
                        ": empty key or value");
    }
    if (kv.count(key)) {
      throw ConfigError(filename + ":" + std::to_string(lineno) +
                        ": duplicate key '" + key + "' (first on line " +
                        std::to_string(kv[key].line) + ")");
    }
    kv[key] = {value, lineno};
  }

  static const std::set<std::string> known = {
      "model",    "lambda",    "gamma",     "alpha",   "c_star", "n_star",
      "n",        "h",         "t_end",     "diag_every", "snap_every",
      "scheme",   "init",      "amplitude", "k_max",   "seed",   "mean1",
      "mean2",    "out_dir",   "refine",    "theorem_c0"};
  for (const auto& [key, entry] : kv) {
    if (!known.count(key)) {
      throw ConfigError(filename + ":" + std::to_string(entry.line) +
                        ": unknown key '" + key + "'");
    }
  }

  auto require = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) {
      throw ConfigError(filename + ": missing required key '" + key + "'");
    }
    return it->second.value;
  };
  auto parse_double = [&](const std::string& key, const std::string& value) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(value, &pos);
      if (pos != value.size()) throw std::invalid_argument(value);
      return v;
    } catch (const std::exception&) {
      throw ConfigError(filename + ":" + std::to_string(kv[key].line) +
                        ": key '" + key + "' is not a number: '" + value + "'");
    }
  };
  auto get_double = [&](const std::string& key, double fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : parse_double(key, it->second.value);
  };
  auto get_long = [&](const std::string& key, long fallback) {
    const double v = get_double(key, static_cast<double>(fallback));
    const long i = std::lround(v);
    if (static_cast<double>(i) != v) {
      throw ConfigError(filename + ": key '" + key + "' must be an integer");
    }
    return i;
  };

  RunConfig cfg;
  try {
    cfg.model.kind = model_kind_from_string(require("model"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(filename + ":" + std::to_string(kv["model"].line) + ": " +
                      e.what());
  }
  cfg.model.lambda = get_double("lambda", 0.0);
  cfg.model.gamma = get_double("gamma", 2.0);
  cfg.model.alpha = get_double("alpha", 0.0);
  cfg.model.c_star = get_double("c_star", 1.0);
  cfg.model.n_star = get_double("n_star", 1.0);

  (void)require("n");
  cfg.n = static_cast<int>(get_long("n", 0));
  cfg.h = parse_double("h", require("h"));
  cfg.t_end = parse_double("t_end", require("t_end"));
  cfg.diag_every = static_cast<int>(get_long("diag_every", 10));
  cfg.snap_every = static_cast<int>(get_long("snap_every", 1000));
  cfg.refine = static_cast<int>(get_long("refine", 2));
  cfg.theorem_c0 = get_double("theorem_c0", 1.0);
  cfg.out_dir = require("out_dir");

  cfg.init.name = require("init");
  cfg.init.amplitude = get_double("amplitude", 1.0);
  cfg.init.k_max = static_cast<int>(get_long("k_max", 4));
  cfg.init.seed = static_cast<std::uint64_t>(get_long("seed", 1));
  cfg.init.mean_shift = {get_double("mean1", 0.0), get_double("mean2", 0.0)};

  if (auto it = kv.find("scheme"); it != kv.end()) {
    const std::string& s = it->second.value;
    if (s == "imex_euler") {
      cfg.scheme = Scheme::imex_euler;
    } else if (s == "rk4") {
      cfg.scheme = Scheme::rk4;
    } else {
      throw ConfigError(filename + ":" + std::to_string(it->second.line) +
                        ": scheme must be imex_euler or rk4, got '" + s + "'");
    }
  } else {
    cfg.scheme = cfg.model.kind == ModelKind::burgers_inviscid
                     ? Scheme::rk4
                     : Scheme::imex_euler;
  }

  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

}  // namespace ks2d
