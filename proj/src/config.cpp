#include "adapt_forge/config.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace adapt_forge {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string unquote(std::string v) {
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front()) {
    return v.substr(1, v.size() - 2);
  }
  return v;
}

// Drops a trailing comment that is not inside quotes.
std::string strip_comment(const std::string& line) {
  char quote = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected a number, got '" + v + "'");
  }
}

long to_integer(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long i = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected an integer, got '" + v + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

}  // namespace

std::vector<DeterminantTerm> parse_initial_state(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty() || t == "hf") return {};
  std::vector<DeterminantTerm> out;
  for (const auto& part : split(t, ';')) {
    if (part.empty()) continue;
    DeterminantTerm term;
    std::string occ = part;
    const auto colon = part.find(':');
    if (colon != std::string::npos) {
      occ = trim(part.substr(0, colon));
      term.coeff = to_double("initial_state", trim(part.substr(colon + 1)));
    }
    for (const auto& q : split(occ, ',')) {
      const long v = to_integer("initial_state", q);
      if (v < 0) throw ConfigError("initial_state: negative qubit index");
      term.occupied.push_back(static_cast<std::size_t>(v));
    }
    out.push_back(std::move(term));
  }
  if (out.empty()) throw ConfigError("initial_state: no determinants");
  return out;
}

RunConfig parse_config(const std::string& text,
                       const std::filesystem::path& base_dir) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_fcidump = false;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(strip_comment(line));
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = unquote(trim(line.substr(eq + 1)));
    try {
      if (key == "fcidump") {
        std::filesystem::path p(value);
        cfg.fcidump = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
        have_fcidump = true;
      } else if (key == "pool") {
        cfg.pools.clear();
        for (const auto& f : split(value, ',')) cfg.pools.push_back(parse_pool_family(f));
      } else if (key == "mode") {
        cfg.mode = parse_pool_mode(value);
      } else if (key == "criterion") {
        cfg.criterion = parse_criterion(value);
      } else if (key == "epsilon") {
        cfg.epsilon = to_double(key, value);
      } else if (key == "max_iterations") {
        cfg.max_iterations = static_cast<int>(to_integer(key, value));
      } else if (key == "output_dir") {
        cfg.output_dir = value;
      } else if (key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(to_integer(key, value));
      } else if (key == "target") {
        if (value == "ground") {
          cfg.target = Target::Ground;
        } else if (value == "excited") {
          cfg.target = Target::Excited;
        } else {
          throw ConfigError("target must be ground or excited");
        }
      } else if (key == "alpha") {
        cfg.alpha = to_double(key, value);
      } else if (key == "beta") {
        cfg.beta = to_double(key, value);
      } else if (key == "ground_epsilon") {
        cfg.ground_epsilon = to_double(key, value);
      } else if (key == "initial_state") {
        cfg.initial_state = parse_initial_state(value);
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw ConfigError("config key '" + key + "': " + e.what());
    }
  }
  if (!have_fcidump) throw ConfigError("config is missing 'fcidump'");
  if (!(cfg.epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
  if (cfg.max_iterations < 0) throw ConfigError("max_iterations must be >= 0");
  if (cfg.pools.empty()) throw ConfigError("pool list is empty");
  if (cfg.target == Target::Excited) {
    if (!(cfg.alpha > 0.0)) throw ConfigError("alpha must be > 0");
    if (cfg.beta < 0.0) throw ConfigError("beta must be >= 0");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

}  // namespace adapt_forge
