#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "adapt_forge/adapt.hpp"
#include "adapt_forge/pools.hpp"

namespace adapt_forge {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One determinant of an initial state: occupied qubits and amplitude.
struct DeterminantTerm {
  std::vector<std::size_t> occupied;
  double coeff = 1.0;
};

enum class Target { Ground, Excited };

struct RunConfig {
  std::filesystem::path fcidump;
  std::vector<PoolFamily> pools{PoolFamily::SQEB};
  PoolMode mode = PoolMode::Restricted;
  Criterion criterion = Criterion::Gradient;
  double epsilon = 1e-3;
  int max_iterations = 200;
  std::filesystem::path output_dir = "adapt_out";
  std::uint64_t seed = 0;
  Target target = Target::Ground;
  double alpha = 3.0;
  double beta = 1.0;
  std::optional<double> ground_epsilon;  // default epsilon / 10
  std::vector<DeterminantTerm> initial_state;  // empty: Hartree-Fock
};

/// TOML-style `key = value` lines; `#` starts a comment; strings may be quoted.
/// Relative `fcidump` paths resolve against `base_dir`.
RunConfig parse_config(const std::string& text,
                       const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// "0,3:1;1,2:-1" → two determinants with amplitudes 1 and -1.
std::vector<DeterminantTerm> parse_initial_state(const std::string& text);

}  // namespace adapt_forge
