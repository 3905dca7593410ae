#include "adapt_forge/measurement.hpp"

#include <algorithm>

namespace adapt_forge {

namespace {

void insert_support(PauliSet& out, const QubitOperator& op) {
  for (const auto& [p, c] : op.terms()) {
    if (p.weight() > 0) out.insert(p);
  }
}

}  // namespace

std::size_t MeasurementReport::sum_of_sizes() const {
  std::size_t s = 0;
  for (const auto& m : per_operator) s += m.size();
  return s;
}

PauliSet measured_strings(const QubitOperator& op) {
  PauliSet out;
  insert_support(out, op);
  return out;
}

PauliSet gradient_strings(const QubitOperator& hamiltonian,
                          const QubitOperator& tau) {
  return measured_strings(commutator(hamiltonian, tau));
}

PauliSet delta_e_strings(const QubitOperator& hamiltonian,
                         const QubitOperator& tau) {
  const QubitOperator tau2 = multiply(tau, tau);
  const QubitOperator h_tau = multiply(hamiltonian, tau);
  const QubitOperator tau_h_tau = multiply(tau, h_tau);
  const QubitOperator tau2_h = multiply(tau2, hamiltonian);
  const QubitOperator h_tau2 = multiply(hamiltonian, tau2);
  PauliSet out;
  insert_support(out, (tau2_h + h_tau2).simplify());
  insert_support(out, tau_h_tau);
  insert_support(out, (multiply(tau, h_tau2) - multiply(tau2_h, tau)).simplify());
  insert_support(out, multiply(tau2_h, tau2));
  return out;
}

MeasurementReport measurement_cost(const OperatorPool& pool,
                                   const QubitOperator& hamiltonian,
                                   Criterion criterion) {
  MeasurementReport report;
  PauliSet all;
  for (const auto& op : pool.elements) {
    report.per_operator.push_back(gradient_strings(hamiltonian, op.generator));
    all.insert(report.per_operator.back().begin(), report.per_operator.back().end());
  }
  report.union_size = all.size();
  if (criterion == Criterion::DeltaE) {
    for (const auto& op : pool.elements) {
      report.delta_e_per_operator.push_back(delta_e_strings(hamiltonian, op.generator));
      all.insert(report.delta_e_per_operator.back().begin(),
                 report.delta_e_per_operator.back().end());
    }
    report.delta_e_union_size = all.size();
    report.delta_e_overhead = report.delta_e_union_size - report.union_size;
  }
  return report;
}

}  // namespace adapt_forge
