#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "adapt_forge/adapt.hpp"
#include "adapt_forge/config.hpp"
#include "adapt_forge/integrals.hpp"
#include "adapt_forge/reference.hpp"

namespace adapt_forge {

/// Qubit Hamiltonian and reference data derived from one FCIDUMP.
struct Problem {
  std::size_t norb;
  int nelec;
  int ms2;
  QubitOperator hamiltonian;
  Sector sector;
  double e_fci;
  StateVector hartree_fock;
};

Problem make_problem(const MolecularIntegrals& ints);
Problem load_problem(const std::filesystem::path& fcidump);

/// Occupied qubits of the Hartree-Fock determinant, alpha on even qubits.
std::vector<std::size_t> hartree_fock_occupation(int nelec, int ms2);

/// Normalized superposition of determinants.
StateVector build_initial_state(std::size_t n_qubits,
                                const std::vector<DeterminantTerm>& terms);

/// Cumulative CNOTs of the first trace row whose energy lies within `target`
/// of `reference`, if any.
std::optional<int> cnots_to_accuracy(const std::vector<TraceRow>& trace,
                                     double reference, double target);

/// Rounds to 12 significant digits for serialization.
double round12(double x);

/// Executes a run configuration, writing artifacts under cfg.output_dir.
/// Returns the process exit code: 0 converged, 2 iteration cap, 1 failure.
/// Input errors throw before anything is written.
int run(const RunConfig& cfg, std::ostream& log);

/// Lowest k eigenpairs of the configured system's (N, Sz) sector as CSV.
void spectrum(const RunConfig& cfg, std::size_t k, std::ostream& csv);

}  // namespace adapt_forge
