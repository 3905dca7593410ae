#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "adapt_forge/pauli.hpp"
#include "adapt_forge/statevector.hpp"

namespace adapt_forge {

/// Basis states with `n_electrons` set bits and (n_alpha - n_beta)/2 == sz,
/// alpha on even qubits.
struct Sector {
  int n_electrons;
  double sz;
};

struct SpectrumEntry {
  double eigenvalue;
  double particle_number;
  double sz;
  double s_squared;  // NaN for odd qubit counts
  StateVector eigenvector;
};

struct SpectrumOptions {
  bool force_iterative = false;
  double residual_tolerance = 1e-10;
};

/// Lowest k eigenpairs, ascending. Dense for ≤ 12 qubits, restarted Lanczos
/// with full reorthogonalization for 13-14 (or when forced).
std::vector<SpectrumEntry> exact_spectrum(const QubitOperator& hamiltonian,
                                          std::size_t k,
                                          std::optional<Sector> sector = {},
                                          const SpectrumOptions& options = {});

/// Dense 2^n matrix of a qubit operator (n ≤ 12).
Eigen::MatrixXcd dense_matrix(const QubitOperator& op);

/// Basis indices of the sector, ascending.
std::vector<std::uint64_t> sector_basis(std::size_t n_qubits, Sector sector);

/// Lowest eigenpair with <S²> ≤ 1e-6 lying more than 1e-9 above the lowest
/// singlet. Throws std::runtime_error when none exists.
SpectrumEntry first_excited_singlet(const QubitOperator& hamiltonian,
                                    const QubitOperator& s_squared,
                                    std::optional<Sector> sector = {});

/// Lowest eigenpair (of the sector when given).
SpectrumEntry ground_state(const QubitOperator& hamiltonian,
                           std::optional<Sector> sector = {});

/// `index,eigenvalue,N,Sz,S2`
void write_spectrum_csv(std::ostream& out,
                        const std::vector<SpectrumEntry>& entries);

}  // namespace adapt_forge
