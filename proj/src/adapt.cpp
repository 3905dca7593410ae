#include "adapt_forge/adapt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace adapt_forge {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kScanPoints = 720;

double wrap_angle(double theta) {
  double t = std::fmod(theta + kPi, 2.0 * kPi);
  if (t < 0) t += 2.0 * kPi;
  return t - kPi;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Safeguarded Newton for E'(θ) = 0 inside [lo, hi], starting at x.
double refine(const ThetaEnergyCoeffs& c, double lo, double hi, double x) {
  double dlo = c.derivative(lo), dhi = c.derivative(hi);
  const bool bracketed = dlo < 0.0 && dhi > 0.0;
  for (int it = 0; it < 100; ++it) {
    const double d = c.derivative(x);
    if (std::abs(d) <= 1e-12) break;
    if (bracketed) {
      (d < 0.0 ? lo : hi) = x;
      if (hi - lo < 1e-15) break;
    }
    const double dd = c.second_derivative(x);
    double next = (dd > 0.0) ? x - d / dd : std::numeric_limits<double>::quiet_NaN();
    if (!std::isfinite(next) || next <= lo || next >= hi) {
      if (!bracketed) break;
      next = 0.5 * (lo + hi);
    }
    if (!bracketed && c.energy(next) > c.energy(x)) break;
    x = next;
  }
  return x;
}

}  // namespace

std::string_view to_string(Criterion c) {
  return c == Criterion::Gradient ? "gradient" : "delta_e";
}

Criterion parse_criterion(std::string_view text) {
  if (text == "gradient") return Criterion::Gradient;
  if (text == "delta_e") return Criterion::DeltaE;
  throw std::invalid_argument("unknown criterion '" + std::string(text) +
                              "' (expected gradient or delta_e)");
}

std::string_view to_string(AdaptStatus s) {
  switch (s) {
    case AdaptStatus::Converged: return "converged";
    case AdaptStatus::IterationCap: return "iteration_cap";
    case AdaptStatus::OptimizerFailure: return "optimizer_failure";
  }
  return "?";
}

double ThetaEnergyCoeffs::energy(double t) const {
  return f0 + f1 * std::sin(t) + f2 * std::sin(2 * t) + f3 * std::cos(t) +
         f4 * std::cos(2 * t);
}

double ThetaEnergyCoeffs::derivative(double t) const {
  return f1 * std::cos(t) + 2 * f2 * std::cos(2 * t) - f3 * std::sin(t) -
         2 * f4 * std::sin(2 * t);
}

double ThetaEnergyCoeffs::second_derivative(double t) const {
  return -f1 * std::sin(t) - 4 * f2 * std::sin(2 * t) - f3 * std::cos(t) -
         4 * f4 * std::cos(2 * t);
}

double residual_gradient(const CompiledOperator& tau, const StateVector& o_psi,
                         const StateVector& psi) {
  return 2.0 * overlap(o_psi, tau.apply(psi)).real();
}

double residual_gradient(const PoolOperator& tau, const Objective& objective,
                         const StateVector& psi) {
  if (tau.generator.n_qubits() != psi.n_qubits()) {
    throw std::invalid_argument("residual_gradient: dimension mismatch");
  }
  return residual_gradient(CompiledOperator(tau.generator), objective.apply(psi),
                           psi);
}

ThetaEnergyCoeffs theta_energy_coeffs(const CompiledOperator& tau,
                                      const Objective& objective,
                                      const StateVector& psi,
                                      const StateVector& o_psi) {
  // a = ψ, b = τψ, c = τ²ψ; with O Hermitian and τ anti-Hermitian:
  //   ⟨O⟩ = ⟨a|Oa⟩              ⟨Oτ - τO⟩ = 2Re⟨a|Ob⟩
  //   ⟨τ²O + Oτ²⟩ = 2Re⟨a|Oc⟩   ⟨τOτ⟩ = -⟨b|Ob⟩
  //   ⟨τOτ² - τ²Oτ⟩ = -2Re⟨b|Oc⟩  ⟨τ²Oτ²⟩ = ⟨c|Oc⟩
  const StateVector b = tau.apply(psi);
  const StateVector c = tau.apply(b);
  const StateVector ob = objective.apply(b);
  const StateVector oc = objective.apply(c);
  const double A = overlap(psi, o_psi).real();
  const double B = 2.0 * overlap(o_psi, b).real();
  const double C = 2.0 * overlap(o_psi, c).real();
  const double D = -overlap(b, ob).real();
  const double F = -2.0 * overlap(b, oc).real();
  const double G = overlap(c, oc).real();
  return {A + C - 0.5 * D + 1.5 * G, B - F, 0.5 * F, -C - 2.0 * G,
          0.5 * D + 0.5 * G};
}

ThetaEnergyCoeffs theta_energy_coeffs(const PoolOperator& tau,
                                      const Objective& objective,
                                      const StateVector& psi) {
  if (!tau.generator.is_anti_hermitian()) {
    throw std::invalid_argument("theta_energy_coeffs: generator is not anti-Hermitian");
  }
  return theta_energy_coeffs(CompiledOperator(tau.generator), objective, psi,
                             objective.apply(psi));
}

ThetaEnergyCoeffs pauli_theta_energy_coeffs(const PauliString& p,
                                            const Objective& objective,
                                            const StateVector& psi) {
  const QubitOperator tau(p, Complex{0, 1});
  const StateVector b = apply_operator(tau, psi);
  const StateVector o_psi = objective.apply(psi);
  const double A = overlap(psi, o_psi).real();
  const double B = 2.0 * overlap(o_psi, b).real();
  const double D = -overlap(b, objective.apply(b)).real();
  ThetaEnergyCoeffs c;
  c.f0 = 0.5 * (A - D);
  c.f2 = 0.5 * B;
  c.f4 = 0.5 * (D + A);
  return c;
}

ThetaEnergyCoeffs pauli_theta_energy_coeffs(const QubitOperator& p,
                                            const Objective& objective,
                                            const StateVector& psi) {
  if (p.size() != 1) {
    throw std::invalid_argument("pauli_theta_energy_coeffs: expected one Pauli string, got " +
                                std::to_string(p.size()) + " terms");
  }
  return pauli_theta_energy_coeffs(p.terms().begin()->first, objective, psi);
}

ThetaMinimum minimize_theta(const ThetaEnergyCoeffs& c) {
  const double h = 2.0 * kPi / kScanPoints;
  std::vector<double> grid(kScanPoints);
  for (int j = 0; j < kScanPoints; ++j) grid[j] = c.energy(-kPi + j * h);

  ThetaMinimum best{0.0, c.energy(0.0)};
  const auto consider = [&](double theta) {
    theta = wrap_angle(theta);
    const double e = c.energy(theta);
    const double tie = 1e-14 * std::max(1.0, std::abs(best.energy));
    if (e < best.energy - tie ||
        (e <= best.energy + tie && std::abs(theta) < std::abs(best.theta))) {
      best = {theta, e};
    }
  };
  for (int j = 0; j < kScanPoints; ++j) {
    const double prev = grid[(j + kScanPoints - 1) % kScanPoints];
    const double next = grid[(j + 1) % kScanPoints];
    if (grid[j] <= prev && grid[j] <= next) {
      const double x = -kPi + j * h;
      consider(refine(c, x - h, x + h, x));
    }
  }
  return best;
}

double Selection::screen_norm() const { return norm2(screening); }
double Selection::gradient_norm() const { return norm2(gradients); }

CompiledPool::CompiledPool(const OperatorPool& p) : pool(&p) {
  generators.reserve(p.size());
  for (const auto& op : p.elements) generators.emplace_back(op.generator);
}

Selection select_operator(const CompiledPool& pool, const Objective& objective,
                          const StateVector& psi, Criterion criterion) {
  const std::size_t n = pool.generators.size();
  if (n == 0) throw std::invalid_argument("select_operator: empty pool");
  for (const auto& g : pool.generators) {
    if (g.n_qubits() != psi.n_qubits()) {
      throw std::invalid_argument("select_operator: pool/state dimension mismatch");
    }
  }
  const StateVector o_psi = objective.apply(psi);
  const double e0 = overlap(psi, o_psi).real();
  Selection sel;
  sel.screening.assign(n, 0.0);
  sel.gradients.assign(n, 0.0);
  std::vector<double> thetas(n, 0.0);
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto& tau = pool.generators[static_cast<std::size_t>(i)];
    sel.gradients[i] = residual_gradient(tau, o_psi, psi);
    if (criterion == Criterion::Gradient) {
      sel.screening[i] = std::abs(sel.gradients[i]);
    } else {
      const auto coeffs = theta_energy_coeffs(tau, objective, psi, o_psi);
      const auto m = minimize_theta(coeffs);
      sel.screening[i] = std::max(0.0, e0 - m.energy);
      thetas[i] = m.theta;
    }
  }
  sel.index = static_cast<std::size_t>(
      std::max_element(sel.screening.begin(), sel.screening.end()) -
      sel.screening.begin());
  sel.theta_star = thetas[sel.index];
  return sel;
}

VqeResult vqe_optimize(Ansatz& ansatz, const Objective& objective,
                       const StateVector& psi0, const BfgsOptions& options) {
  Ansatz work = ansatz;
  const ObjectiveFn fn = [&](const std::vector<double>& x, std::vector<double>& g) {
    work.set_parameters(x);
    auto eg = ansatz_energy_and_gradient(work, objective, psi0);
    g = std::move(eg.gradient);
    return eg.energy;
  };
  const BfgsResult r = bfgs_minimize(fn, ansatz.parameters(), options);
  ansatz.set_parameters(r.x);
  return {r.f, r.converged, r.evaluations, r.message};
}

AdaptResult adapt_run(const AdaptConfig& config, const OperatorPool& pool,
                      const Objective& objective, const StateVector& psi0,
                      const TraceObserver& observer) {
  if (!(config.epsilon > 0.0)) {
    throw std::invalid_argument("adapt_run: epsilon must be positive");
  }
  if (psi0.n_qubits() != objective.n_qubits()) {
    throw std::invalid_argument("adapt_run: initial state dimension mismatch");
  }
  const CompiledPool compiled(pool);
  AdaptResult result;
  int cnots = 0;
  for (int iteration = 1;; ++iteration) {
    const StateVector psi = result.ansatz.prepare(psi0);
    result.state = psi;
    result.energy = objective.expectation(psi);
    const Selection sel = select_operator(compiled, objective, psi, config.criterion);
    result.final_screen_norm = sel.screen_norm();
    result.final_gradient_norm = sel.gradient_norm();
    if (result.final_screen_norm < config.epsilon) {
      result.status = AdaptStatus::Converged;
      return result;
    }
    if (iteration > config.max_iterations) {
      result.status = AdaptStatus::IterationCap;
      return result;
    }

    const PoolOperator& op = pool[sel.index];
    result.ansatz.append(op, config.criterion == Criterion::DeltaE ? sel.theta_star : 0.0);
    const VqeResult vqe =
        vqe_optimize(result.ansatz, objective, psi0, config.optimizer);
    cnots += op.cnot_cost;
    TraceRow row{iteration,          op.kind, op.indices,
                 sel.screening[sel.index], vqe.energy, result.ansatz.size(),
                 cnots,              sel.gradient_norm()};
    result.trace.push_back(row);
    if (observer) observer(row);
    if (!vqe.converged) {
      result.status = AdaptStatus::OptimizerFailure;
      result.message = vqe.message;
      result.state = result.ansatz.prepare(psi0);
      result.energy = vqe.energy;
      return result;
    }
  }
}

Objective excited_objective(const QubitOperator& hamiltonian,
                            const StateVector& ground, double alpha, double beta) {
  if (!(alpha > 0.0)) throw std::invalid_argument("excited_objective: alpha must be > 0");
  if (beta < 0.0) throw std::invalid_argument("excited_objective: beta must be >= 0");
  if (std::abs(ground.norm() - 1.0) > 1e-8) {
    throw std::invalid_argument("excited_objective: ground state is not normalized");
  }
  QubitOperator h = hamiltonian;
  if (beta != 0.0) h += Complex{beta, 0.0} * s_squared_operator(hamiltonian.n_qubits());
  h.simplify();
  return Objective(h, {{ground, alpha}});
}

void write_trace_header(std::ostream& out) {
  out << "iter,kind,indices,screen_value,energy,params,cnots,grad_norm\n";
}

void write_trace_row(std::ostream& out, const TraceRow& row) {
  std::string idx;
  for (std::size_t i = 0; i < row.indices.size(); ++i) {
    if (i) idx += ' ';
    idx += std::to_string(row.indices[i]);
  }
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%d,%s,%s,%.12g,%.12g,%zu,%d,%.12g\n",
                row.iteration, std::string(to_string(row.kind)).c_str(),
                idx.c_str(), row.screen_value, row.energy, row.params,
                row.cnots, row.grad_norm);
  out << buf;
}

}  // namespace adapt_forge
