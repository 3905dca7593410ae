#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "adapt_forge/pools.hpp"
#include "adapt_forge/statevector.hpp"

namespace adapt_forge {

enum class GateKind { CNOT, RX, RY, RZ, MCRY };

struct Control {
  std::size_t qubit;
  bool on_one = true;  // false: open control (fires on |0>)

  bool operator==(const Control&) const = default;
};

/// Rotation angles follow the usual R_a(φ) = exp(-iφσ_a/2) convention.
/// MCRY applies R_y(angle) to the target when every control is satisfied.
struct Gate {
  GateKind kind;
  std::size_t target;
  std::vector<Control> controls;
  double angle = 0.0;

  static Gate cnot(std::size_t control, std::size_t target);
  static Gate rx(std::size_t q, double angle);
  static Gate ry(std::size_t q, double angle);
  static Gate rz(std::size_t q, double angle);
  static Gate mcry(double angle, std::vector<Control> controls,
                   std::size_t target);

  std::vector<std::size_t> qubits() const;
};

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::size_t n_qubits) : n_qubits_(n_qubits) {}

  std::size_t n_qubits() const { return n_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  bool empty() const { return gates_.empty(); }

  /// Validates qubit ranges and distinctness.
  void add(Gate g);
  void append(const Circuit& other);

  /// Number of CNOT gates; MCRY gates are not expanded here.
  int cnot_count() const;
  /// Greedy ASAP layering over all gates.
  int depth() const;
  /// Greedy ASAP layering counting CNOT gates only.
  int cnot_depth() const;

  /// `GATE target [controls] angle` per line; open controls carry an `o`.
  std::string dump() const;

 private:
  std::size_t n_qubits_ = 0;
  std::vector<Gate> gates_;
};

/// exp(θ (Q†_p Q_q - Q†_q Q_p)) with two CNOTs.
Circuit qeb1_circuit(std::size_t p, std::size_t q, double theta,
                     std::size_t n_qubits = 0);
/// exp(θ κ^{pq}_{rs}) as CNOT ladders around an MCRY with an open p-control.
Circuit qeb2_circuit(std::size_t p, std::size_t q, std::size_t r, std::size_t s,
                     double theta, std::size_t n_qubits = 0);
/// exp(θ τ^{pq}_{rs}): the QEB layout without the p-control.
Circuit sqeb2_circuit(std::size_t p, std::size_t q, std::size_t r,
                      std::size_t s, double theta, std::size_t n_qubits = 0);

/// Replaces every MCRY with single-qubit R_y rotations and CNOTs, absorbing the
/// trailing controlled-Z of each expansion into an adjacent CNOT when one is
/// reachable through commuting gates. Equal to the input up to global phase.
Circuit decompose(const Circuit& c);

/// Applies the circuit to a state vector.
StateVector simulate(const Circuit& c, const StateVector& psi);

/// Dense unitary; n_qubits ≤ 12.
Eigen::MatrixXcd circuit_unitary(const Circuit& c, std::size_t n_qubits);

/// max_ij |U_ij - e^{iφ} V_ij| ≤ tol, with φ taken from the largest |V_ij|.
bool equivalent_up_to_phase(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v,
                            double tol = 1e-10);
double phase_insensitive_distance(const Eigen::MatrixXcd& u,
                                  const Eigen::MatrixXcd& v);

struct CircuitVariant {
  std::string name;
  std::function<Circuit(std::size_t p, std::size_t q, std::size_t r,
                        std::size_t s, double theta)>
      build;
};

/// Alternative layouts realizing the same two-body exponential (QEB2 or SQEB2).
std::vector<CircuitVariant> variant_circuits(OperatorKind kind);

/// Decomposed circuit for one pool element; FEB kinds have no gate-level
/// layout and throw std::invalid_argument.
Circuit element_circuit(const PoolOperator& op, double theta,
                        std::size_t n_qubits);
Circuit ansatz_to_circuit(const Ansatz& ansatz, std::size_t n_qubits);

std::string export_qasm(const Circuit& c);
Circuit parse_qasm(const std::string& text);

}  // namespace adapt_forge
