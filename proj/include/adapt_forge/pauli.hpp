#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "adapt_forge/fermion.hpp"

namespace adapt_forge {

enum class PauliLetter : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

/// Pauli string stored in symplectic form: bit q of `x` / `z` says whether
/// qubit q carries an X / Z component (Y has both). Up to 64 qubits.
class PauliString {
 public:
  static constexpr std::size_t kMaxQubits = 64;

  PauliString() = default;
  explicit PauliString(std::size_t n_qubits);
  PauliString(std::size_t n_qubits, std::uint64_t x, std::uint64_t z);
  /// From (letter, qubit) pairs, e.g. {{X, 0}, {Y, 3}}.
  PauliString(std::size_t n_qubits,
              std::initializer_list<std::pair<PauliLetter, std::size_t>> ops);
  /// Parses "X0 Y3 Z5" (empty or "I" for identity).
  static PauliString parse(std::size_t n_qubits, const std::string& text);

  std::size_t n_qubits() const { return n_qubits_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }

  PauliLetter letter(std::size_t qubit) const;
  void set(std::size_t qubit, PauliLetter letter);
  bool is_identity() const { return x_ == 0 && z_ == 0; }
  std::size_t weight() const;

  bool commutes_with(const PauliString& other) const;

  /// Returns (phase, product) with this * other = phase * product.
  std::pair<Complex, PauliString> multiply(const PauliString& other) const;

  std::string to_string() const;

  bool operator==(const PauliString& o) const {
    return n_qubits_ == o.n_qubits_ && x_ == o.x_ && z_ == o.z_;
  }
  auto operator<=>(const PauliString& o) const {
    if (auto c = n_qubits_ <=> o.n_qubits_; c != 0) return c;
    if (auto c = x_ <=> o.x_; c != 0) return c;
    return z_ <=> o.z_;
  }

 private:
  std::size_t n_qubits_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

struct PauliStringHash {
  std::size_t operator()(const PauliString& p) const {
    return std::hash<std::uint64_t>{}(p.x_mask() * 0x9E3779B97F4A7C15ULL ^
                                      p.z_mask()) ^
           p.n_qubits();
  }
};

/// Weighted sum of Pauli strings on a fixed number of qubits.
class QubitOperator {
 public:
  using TermMap = std::map<PauliString, Complex>;
  static constexpr double kSimplifyThreshold = 1e-14;

  QubitOperator() = default;
  explicit QubitOperator(std::size_t n_qubits) : n_qubits_(n_qubits) {}
  QubitOperator(const PauliString& p, Complex coeff);
  static QubitOperator identity(std::size_t n_qubits, Complex coeff = 1.0);
  /// Single-letter operator `coeff * L_q`.
  static QubitOperator single(std::size_t n_qubits, PauliLetter letter,
                              std::size_t qubit, Complex coeff = 1.0);

  std::size_t n_qubits() const { return n_qubits_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  Complex coefficient(const PauliString& p) const;

  void add(const PauliString& p, Complex coeff);
  /// Drops coefficients with magnitude below `threshold`.
  QubitOperator& simplify(double threshold = kSimplifyThreshold);

  QubitOperator& operator+=(const QubitOperator& other);
  QubitOperator& operator-=(const QubitOperator& other);
  QubitOperator& operator*=(Complex scale);
  friend QubitOperator operator+(QubitOperator a, const QubitOperator& b) {
    return a += b;
  }
  friend QubitOperator operator-(QubitOperator a, const QubitOperator& b) {
    return a -= b;
  }
  friend QubitOperator operator*(QubitOperator a, Complex s) { return a *= s; }
  friend QubitOperator operator*(Complex s, QubitOperator a) { return a *= s; }
  friend QubitOperator operator*(const QubitOperator& a,
                                 const QubitOperator& b);

  QubitOperator adjoint() const;
  bool is_hermitian(double tol = 1e-12) const;
  bool is_anti_hermitian(double tol = 1e-12) const;
  /// Largest coefficient magnitude (0 for an empty operator).
  double max_abs_coefficient() const;

  /// Pauli strings with nonzero coefficient.
  std::vector<PauliString> support() const;

  /// One `coeff * X0 Y3 Z5` line per term, in canonical term order.
  std::string to_string() const;

 private:
  std::size_t n_qubits_ = 0;
  TermMap terms_;
};

/// Product with phase tracking, simplified. Throws on qubit-count mismatch.
QubitOperator multiply(const QubitOperator& a, const QubitOperator& b);
/// ab - ba, simplified.
QubitOperator commutator(const QubitOperator& a, const QubitOperator& b);

/// a†_j -> ½(X_j - iY_j) Π_{k<j} Z_k,  a_j -> ½(X_j + iY_j) Π_{k<j} Z_k.
QubitOperator jordan_wigner(const FermionOperator& f, std::size_t n_qubits);

/// Qubit raising operator Q† = ½(X - iY) (maps |0> to |1>) and lowering Q.
QubitOperator qubit_raise(std::size_t n_qubits, std::size_t qubit);
QubitOperator qubit_lower(std::size_t n_qubits, std::size_t qubit);

QubitOperator number_operator(std::size_t n_qubits);
QubitOperator sz_operator(std::size_t n_qubits);
/// S² = S₋S₊ + Sz(Sz + 1), S₊ = Σ_p a†_{2p} a_{2p+1}.
QubitOperator s_squared_operator(std::size_t n_qubits);

}  // namespace adapt_forge
