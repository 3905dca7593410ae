#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "adapt_forge/pauli.hpp"
#include "adapt_forge/pools.hpp"

namespace adapt_forge {

/// 2^n amplitudes; bit i of the basis index is the occupation of qubit i
/// (qubit 0 least significant).
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::size_t n_qubits);  // |0...0>
  StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dimension() const { return amps_.size(); }

  Complex& operator[](std::size_t i) { return amps_[i]; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  std::span<Complex> amplitudes() { return amps_; }
  std::span<const Complex> amplitudes() const { return amps_; }

  double norm() const;
  StateVector& normalize();

  StateVector& operator+=(const StateVector& o);
  StateVector& operator-=(const StateVector& o);
  StateVector& operator*=(Complex s);
  friend StateVector operator+(StateVector a, const StateVector& b) {
    return a += b;
  }
  friend StateVector operator-(StateVector a, const StateVector& b) {
    return a -= b;
  }
  friend StateVector operator*(Complex s, StateVector a) { return a *= s; }
  /// this += s * o
  void axpy(Complex s, const StateVector& o);

  /// Raw dump: little-endian (re, im) double pairs in index order.
  void write_binary(std::ostream& out) const;
  static StateVector read_binary(std::istream& in, std::size_t n_qubits);

 private:
  std::size_t n_qubits_ = 0;
  std::vector<Complex> amps_;
};

/// Pauli operator regrouped by X-flip mask for fast application:
/// P|b> = i^{ny} (-1)^{|b & zmask|} |b ^ xmask>.
class CompiledOperator {
 public:
  CompiledOperator() = default;
  explicit CompiledOperator(const QubitOperator& op);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t term_count() const { return term_count_; }

  /// out = A psi (overwrites `out`; must not alias `psi`).
  void apply(const StateVector& psi, StateVector& out) const;
  StateVector apply(const StateVector& psi) const;

  /// Nonzero entries (row, value) of column `basis`: A|basis> = Σ value |row>.
  std::vector<std::pair<std::uint64_t, Complex>> column(std::uint64_t basis) const;

 private:
  struct Term {
    std::uint64_t phase_mask;  // bits where Z or Y acts
    Complex coeff;             // includes i^{#Y}
  };
  struct Group {
    std::uint64_t flip;
    std::vector<Term> terms;
  };
  std::size_t n_qubits_ = 0;
  std::size_t term_count_ = 0;
  std::vector<Group> groups_;
  // Row-compressed matrix, built when small enough; shared between copies.
  struct Sparse {
    std::vector<std::uint32_t> row_start;
    std::vector<std::uint32_t> col;
    std::vector<Complex> value;
  };
  std::shared_ptr<const Sparse> sparse_;
};

StateVector reference_state(std::size_t n_qubits,
                            const std::vector<std::size_t>& occupied);

/// Σ_μ h_μ P_μ |psi>, not normalized.
StateVector apply_operator(const QubitOperator& op, const StateVector& psi);

/// exp(θτ)|psi> for τ³ = -τ: psi + sinθ τψ + (1 - cosθ) τ²ψ.
StateVector apply_exponential(const CompiledOperator& generator, double theta,
                              const StateVector& psi);
StateVector apply_exponential(const QubitOperator& generator, double theta,
                              const StateVector& psi);

Complex overlap(const StateVector& a, const StateVector& b);

/// Real expectation; throws std::domain_error when the imaginary residue
/// exceeds 1e-10 (non-Hermitian operator).
double expectation(const CompiledOperator& op, const StateVector& psi);
double expectation(const QubitOperator& op, const StateVector& psi);

/// Hermitian objective H + Σ_g α_g |g><g|, where H may already include βS².
class Objective {
 public:
  struct Projector {
    StateVector state;
    double weight;
  };

  Objective() = default;
  explicit Objective(const QubitOperator& hamiltonian);
  Objective(const QubitOperator& hamiltonian, std::vector<Projector> projectors);

  std::size_t n_qubits() const { return op_.n_qubits(); }
  const CompiledOperator& qubit_part() const { return op_; }
  const std::vector<Projector>& projectors() const { return projectors_; }

  StateVector apply(const StateVector& psi) const;
  double expectation(const StateVector& psi) const;

 private:
  CompiledOperator op_;
  std::vector<Projector> projectors_;
};

struct AnsatzElement {
  PoolOperator op;
  CompiledOperator generator;
  double theta = 0.0;
};

/// U(θ) = Π_k exp(θ_k τ_k), element 0 applied first.
class Ansatz {
 public:
  void append(const PoolOperator& op, double theta = 0.0);
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const AnsatzElement& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<AnsatzElement>& elements() const { return elements_; }

  std::vector<double> parameters() const;
  void set_parameters(std::span<const double> theta);
  int cnot_count() const;

  StateVector prepare(const StateVector& psi0) const;

 private:
  std::vector<AnsatzElement> elements_;
};

struct EnergyGradient {
  double energy = 0.0;
  std::vector<double> gradient;
};

/// Objective value and its exact parameter gradient via one forward and one
/// reverse (adjoint) sweep.
EnergyGradient ansatz_energy_and_gradient(const Ansatz& ansatz,
                                          const Objective& objective,
                                          const StateVector& psi0);

}  // namespace adapt_forge
