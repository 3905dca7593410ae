#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "adapt_forge/bfgs.hpp"
#include "adapt_forge/pools.hpp"
#include "adapt_forge/statevector.hpp"

namespace adapt_forge {

enum class Criterion { Gradient, DeltaE };

std::string_view to_string(Criterion c);
Criterion parse_criterion(std::string_view text);  // "gradient" | "delta_e"

/// E(θ) = f0 + f1 sinθ + f2 sin2θ + f3 cosθ + f4 cos2θ
struct ThetaEnergyCoeffs {
  double f0 = 0, f1 = 0, f2 = 0, f3 = 0, f4 = 0;

  double energy(double theta) const;
  double derivative(double theta) const;
  double second_derivative(double theta) const;
};

/// ⟨ψ|[O, τ]|ψ⟩ = 2 Re⟨Oψ|τψ⟩.
double residual_gradient(const CompiledOperator& tau, const StateVector& o_psi,
                         const StateVector& psi);
double residual_gradient(const PoolOperator& tau, const Objective& objective,
                         const StateVector& psi);

/// Exact single-parameter energy landscape of exp(θτ)ψ, τ³ = -τ.
/// `o_psi` is Oψ, shared across pool elements.
ThetaEnergyCoeffs theta_energy_coeffs(const CompiledOperator& tau,
                                      const Objective& objective,
                                      const StateVector& psi,
                                      const StateVector& o_psi);
ThetaEnergyCoeffs theta_energy_coeffs(const PoolOperator& tau,
                                      const Objective& objective,
                                      const StateVector& psi);

/// τ = iP for a single Pauli string; f1 = f3 = 0 by construction.
ThetaEnergyCoeffs pauli_theta_energy_coeffs(const PauliString& p,
                                            const Objective& objective,
                                            const StateVector& psi);
/// Throws std::invalid_argument unless `p` has exactly one term.
ThetaEnergyCoeffs pauli_theta_energy_coeffs(const QubitOperator& p,
                                            const Objective& objective,
                                            const StateVector& psi);

struct ThetaMinimum {
  double theta;   // in [-π, π)
  double energy;
};

/// Global minimum over [-π, π): 720-point scan, then safeguarded Newton on
/// every grid-local minimum. Ties go to the smallest |θ|.
ThetaMinimum minimize_theta(const ThetaEnergyCoeffs& c);

struct Selection {
  std::size_t index = 0;
  std::vector<double> screening;  // |G_μ| or ΔE_μ per pool element
  std::vector<double> gradients;  // signed G_μ
  double theta_star = 0.0;        // ΔE criterion: optimum of the winner
  double screen_norm() const;
  double gradient_norm() const;
};

/// Pool generators compiled once for repeated screening.
struct CompiledPool {
  explicit CompiledPool(const OperatorPool& pool);
  const OperatorPool* pool;
  std::vector<CompiledOperator> generators;
};

Selection select_operator(const CompiledPool& pool, const Objective& objective,
                          const StateVector& psi, Criterion criterion);

struct VqeResult {
  double energy = 0.0;
  bool converged = false;
  int evaluations = 0;
  std::string message;
};

/// BFGS warm-started from the ansatz's current parameters; updates them.
VqeResult vqe_optimize(Ansatz& ansatz, const Objective& objective,
                       const StateVector& psi0, const BfgsOptions& options = {});

struct AdaptConfig {
  Criterion criterion = Criterion::Gradient;
  double epsilon = 1e-3;
  int max_iterations = 200;
  BfgsOptions optimizer;
};

enum class AdaptStatus { Converged, IterationCap, OptimizerFailure };
std::string_view to_string(AdaptStatus s);

struct TraceRow {
  int iteration;
  OperatorKind kind;
  std::vector<std::size_t> indices;
  double screen_value;
  double energy;  // objective value after optimization
  std::size_t params;
  int cnots;      // cumulative
  double grad_norm;
};

struct AdaptResult {
  AdaptStatus status = AdaptStatus::Converged;
  std::vector<TraceRow> trace;
  Ansatz ansatz;
  double energy = 0.0;              // objective value of the final state
  double final_screen_norm = 0.0;   // screening norm at termination
  double final_gradient_norm = 0.0;
  StateVector state;
  std::string message;
};

using TraceObserver = std::function<void(const TraceRow&)>;

AdaptResult adapt_run(const AdaptConfig& config, const OperatorPool& pool,
                      const Objective& objective, const StateVector& psi0,
                      const TraceObserver& observer = {});

/// H + β S² + α |ground⟩⟨ground|. Throws if `ground` is not normalized.
Objective excited_objective(const QubitOperator& hamiltonian,
                            const StateVector& ground, double alpha = 3.0,
                            double beta = 1.0);

/// `iter,kind,indices,screen_value,energy,params,cnots,grad_norm`
void write_trace_header(std::ostream& out);
void write_trace_row(std::ostream& out, const TraceRow& row);

}  // namespace adapt_forge
