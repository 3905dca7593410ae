#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adapt_forge/pauli.hpp"

namespace adapt_forge {

/// Kind of a single pool element.
enum class OperatorKind { FEB1, FEB2, QEB1, QEB2, SQEB2, SFEB2 };

/// Which family of pool to build: doubles of the family plus shared singles.
enum class PoolFamily { FEB, QEB, SQEB, SFEB };

enum class PoolMode { Restricted, Generalized };

std::string_view to_string(OperatorKind kind);
std::string_view to_string(PoolFamily family);
std::string_view to_string(PoolMode mode);
OperatorKind parse_operator_kind(std::string_view text);
PoolFamily parse_pool_family(std::string_view text);
PoolMode parse_pool_mode(std::string_view text);

constexpr bool is_two_body(OperatorKind kind) {
  return kind != OperatorKind::FEB1 && kind != OperatorKind::QEB1;
}

/// Spin label of a spin-orbital under interleaved ordering: 0 alpha, 1 beta.
constexpr int spin_of(std::size_t spin_orbital) {
  return static_cast<int>(spin_orbital % 2);
}

struct PoolOperator {
  OperatorKind kind;
  std::vector<std::size_t> indices;  // (p, q) or (p, q, r, s)
  QubitOperator generator;           // anti-Hermitian, generator³ = -generator
  int cnot_cost = 0;

  /// "QEB2(0,1,2,3)"
  std::string label() const;
};

struct OperatorPool {
  std::vector<PoolOperator> elements;
  PoolFamily family;
  PoolMode mode;

  std::size_t size() const { return elements.size(); }
  bool empty() const { return elements.empty(); }
  const PoolOperator& operator[](std::size_t i) const { return elements[i]; }

  /// One line per element: `kind p q [r s] cnot_cost`.
  std::string dump() const;
};

/// Anti-Hermitian generator of one pool element.
///   QEB1(p,q)  Q†_p Q_q - Q†_q Q_p
///   QEB2       κ^{pq}_{rs} = Q†_p Q†_q Q_r Q_s - h.c.
///   SQEB2      τ^{pq}_{rs} = κ^{pq}_{rs} + κ^{qr}_{sp}
///   FEB1/FEB2  JW image of a†_p a_q - h.c. / a†_p a†_q a_r a_s - h.c.
///   SFEB2      JW image of the FEB2(p,q,r,s) + FEB2(q,r,s,p) pair
QubitOperator build_generator(OperatorKind kind,
                              const std::vector<std::size_t>& indices,
                              std::size_t n_qubits);

/// Spin conservation test with σ_i = i mod 2.
bool symmetry_admissible(OperatorKind kind,
                         const std::vector<std::size_t>& indices);

int cnot_cost(OperatorKind kind, const std::vector<std::size_t>& indices);

/// Smallest lexicographic tuple among the kind's index equivalence class.
std::vector<std::size_t> canonical_indices(
    OperatorKind kind, const std::vector<std::size_t>& indices);

PoolOperator make_pool_operator(OperatorKind kind,
                                std::vector<std::size_t> indices,
                                std::size_t n_qubits);

/// Restricted: singles and doubles from the `nelec` lowest spin-orbitals into
/// the rest. Generalized: every symmetry-admissible index combination.
OperatorPool generate_pool(PoolFamily family, std::size_t norb,
                           std::size_t nelec, PoolMode mode);

OperatorKind singles_kind(PoolFamily family);
OperatorKind doubles_kind(PoolFamily family);

}  // namespace adapt_forge
