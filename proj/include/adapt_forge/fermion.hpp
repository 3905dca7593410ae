#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "adapt_forge/integrals.hpp"

namespace adapt_forge {

using Complex = std::complex<double>;

struct LadderOp {
  std::size_t mode;  // spin-orbital index
  bool creation;

  auto operator<=>(const LadderOp&) const = default;
};

using LadderSequence = std::vector<LadderOp>;

/// Spin-orbital index of spatial orbital `p` with spin `sigma` (0 = alpha).
constexpr std::size_t spin_orbital(std::size_t p, int sigma) {
  return 2 * p + static_cast<std::size_t>(sigma);
}

/// Sum of products of fermionic ladder operators with complex weights.
class FermionOperator {
 public:
  using TermMap = std::map<LadderSequence, Complex>;

  FermionOperator() = default;
  static FermionOperator identity(Complex coeff = 1.0);
  static FermionOperator term(LadderSequence ops, Complex coeff = 1.0);
  /// a†_p a_q
  static FermionOperator excitation(std::size_t p, std::size_t q);
  /// a†_p a†_q a_r a_s
  static FermionOperator excitation(std::size_t p, std::size_t q,
                                    std::size_t r, std::size_t s);

  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(const LadderSequence& ops, Complex coeff);

  FermionOperator& operator+=(const FermionOperator& other);
  FermionOperator& operator-=(const FermionOperator& other);
  FermionOperator& operator*=(Complex scale);
  friend FermionOperator operator+(FermionOperator a, const FermionOperator& b) {
    return a += b;
  }
  friend FermionOperator operator-(FermionOperator a, const FermionOperator& b) {
    return a -= b;
  }
  friend FermionOperator operator*(FermionOperator a, Complex s) {
    return a *= s;
  }
  friend FermionOperator operator*(const FermionOperator& a,
                                   const FermionOperator& b);

  FermionOperator adjoint() const;

  /// Creation operators left in descending mode order, annihilators right in
  /// descending order; contractions from anticommutation are expanded. Terms
  /// with |coeff| below `threshold` are dropped.
  FermionOperator normal_ordered(double threshold = 1e-14) const;

  bool is_hermitian(double tol = 1e-12) const;

  /// Largest mode index referenced plus one (0 for a pure constant).
  std::size_t mode_count() const;

  std::string to_string() const;

 private:
  TermMap terms_;
};

/// E_core + Σ h_pq a†_p a_q + ½ Σ (pq|rs) a†_p a†_r a_s a_q over spin-orbitals
/// (interleaved ordering: spatial orbital p -> 2p alpha, 2p+1 beta).
FermionOperator build_fermionic_hamiltonian(const MolecularIntegrals& ints);

}  // namespace adapt_forge
