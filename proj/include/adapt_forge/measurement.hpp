#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "adapt_forge/adapt.hpp"
#include "adapt_forge/pauli.hpp"
#include "adapt_forge/pools.hpp"

namespace adapt_forge {

using PauliSet = std::set<PauliString>;

/// Pauli strings (identity excluded) whose expectations a screening step needs.
struct MeasurementReport {
  std::vector<PauliSet> per_operator;  // M_τ = supp([H, τ])
  std::size_t union_size = 0;          // |M| = |∪ M_τ|
  // ΔE criterion only: supports of τ²H+Hτ², τHτ, τHτ²-τ²Hτ and τ²Hτ².
  std::vector<PauliSet> delta_e_per_operator;
  std::size_t delta_e_union_size = 0;  // |M ∪ ∪ E_τ|
  std::size_t delta_e_overhead = 0;    // delta_e_union_size - union_size

  std::size_t sum_of_sizes() const;
};

/// Support of an operator, identity dropped.
PauliSet measured_strings(const QubitOperator& op);

PauliSet gradient_strings(const QubitOperator& hamiltonian,
                          const QubitOperator& tau);
PauliSet delta_e_strings(const QubitOperator& hamiltonian,
                         const QubitOperator& tau);

MeasurementReport measurement_cost(const OperatorPool& pool,
                                   const QubitOperator& hamiltonian,
                                   Criterion criterion);

}  // namespace adapt_forge
