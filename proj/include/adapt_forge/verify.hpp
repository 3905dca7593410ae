#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "adapt_forge/pools.hpp"

namespace adapt_forge {

struct VerifyCheck {
  std::string name;
  bool passed;
  std::string detail;
};

using GeneratorFactory = std::function<QubitOperator(
    OperatorKind, const std::vector<std::size_t>&, std::size_t)>;

/// Structural checks: circuit/exponential equivalences, layout variants,
/// the sQEB combination identity, basis-state actions and CNOT counts.
/// Generators come from `factory`, so a corrupted one can be injected.
std::vector<VerifyCheck> run_verification(const GeneratorFactory& factory =
                                              build_generator);

/// Prints one line per check; returns 0 iff all pass.
int verify(std::ostream& out, const GeneratorFactory& factory = build_generator);

}  // namespace adapt_forge
