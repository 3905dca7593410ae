#include "adapt_forge/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <ostream>

#include "adapt_forge/circuits.hpp"
#include "adapt_forge/fermion.hpp"
#include "adapt_forge/measurement.hpp"

namespace adapt_forge {

namespace {

using nlohmann::ordered_json;

struct PoolRun {
  AdaptResult result;
  ordered_json summary;
  int exit_code;
};

int exit_code_for(AdaptStatus s) {
  switch (s) {
    case AdaptStatus::Converged: return 0;
    case AdaptStatus::IterationCap: return 2;
    case AdaptStatus::OptimizerFailure: return 1;
  }
  return 1;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

PoolRun run_pool(const RunConfig& cfg, const Problem& prob, PoolFamily family,
                 const std::filesystem::path& out_dir, std::ostream& log) {
  const std::size_t n = prob.hamiltonian.n_qubits();
  const OperatorPool pool =
      generate_pool(family, prob.norb, static_cast<std::size_t>(prob.nelec), cfg.mode);
  if (pool.empty()) throw std::runtime_error("operator pool is empty");

  AdaptConfig acfg;
  acfg.criterion = cfg.criterion;
  acfg.epsilon = cfg.epsilon;
  acfg.max_iterations = cfg.max_iterations;

  const StateVector psi0 = cfg.initial_state.empty()
                               ? prob.hartree_fock
                               : build_initial_state(n, cfg.initial_state);

  Objective objective(prob.hamiltonian);
  double reference = prob.e_fci;
  std::optional<StateVector> ground;
  if (cfg.target == Target::Excited) {
    AdaptConfig gcfg = acfg;
    gcfg.criterion = Criterion::Gradient;
    gcfg.epsilon = cfg.ground_epsilon.value_or(cfg.epsilon / 10.0);
    log << "[" << to_string(family) << "] ground-state run at epsilon "
        << gcfg.epsilon << "\n";
    const AdaptResult g = adapt_run(gcfg, pool, objective, prob.hartree_fock);
    ground = g.state;
    ground->normalize();
    objective = excited_objective(prob.hamiltonian, *ground, cfg.alpha, cfg.beta);
    reference = first_excited_singlet(prob.hamiltonian,
                                      s_squared_operator(n), prob.sector)
                    .eigenvalue;
  }

  const auto observer = [&](const TraceRow& row) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "[%s] iter %d %s E=%.12g cnots=%d\n",
                  std::string(to_string(family)).c_str(), row.iteration,
                  std::string(to_string(row.kind)).c_str(), row.energy, row.cnots);
    log << buf;
  };
  AdaptResult result = adapt_run(acfg, pool, objective, psi0, observer);

  std::filesystem::create_directories(out_dir);
  {
    std::ofstream trace(out_dir / "trace.csv");
    write_trace_header(trace);
    for (const auto& row : result.trace) write_trace_row(trace, row);
  }

  const double energy = expectation(prob.hamiltonian, result.state);
  const MeasurementReport meas =
      measurement_cost(pool, prob.hamiltonian, cfg.criterion);

  ordered_json s;
  s["pool"] = std::string(to_string(family));
  s["mode"] = std::string(to_string(cfg.mode));
  s["criterion"] = std::string(to_string(cfg.criterion));
  s["target"] = cfg.target == Target::Ground ? "ground" : "excited";
  s["status"] = std::string(to_string(result.status));
  s["epsilon"] = cfg.epsilon;
  s["iterations"] = result.trace.size();
  s["final_energy"] = round12(energy);
  s["fci_energy"] = round12(reference);
  s["error"] = round12(std::abs(energy - reference));
  s["objective_energy"] = round12(result.energy);
  s["total_cnots"] = result.ansatz.cnot_count();
  s["parameters"] = result.ansatz.size();
  s["final_screen_norm"] = round12(result.final_screen_norm);
  s["final_gradient_norm"] = round12(result.final_gradient_norm);
  s["pool_size"] = pool.size();
  s["measurement"] = {{"union_size", meas.union_size},
                      {"sum_of_sizes", meas.sum_of_sizes()}};
  if (cfg.criterion == Criterion::DeltaE) {
    s["measurement"]["delta_e_union_size"] = meas.delta_e_union_size;
    s["measurement"]["delta_e_overhead"] = meas.delta_e_overhead;
  }
  if (ground) {
    s["ground_overlap"] = round12(std::norm(overlap(*ground, result.state)));
    s["s_squared"] = round12(expectation(s_squared_operator(n), result.state));
  }
  if (!result.message.empty()) s["message"] = result.message;
  write_text(out_dir / "summary.json", s.dump(2) + "\n");

  if (family == PoolFamily::QEB || family == PoolFamily::SQEB) {
    write_text(out_dir / "ansatz.qasm",
               export_qasm(ansatz_to_circuit(result.ansatz, n)));
  }
  return {std::move(result), std::move(s), exit_code_for(result.status)};
}

}  // namespace

double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::stod(buf);
}

std::vector<std::size_t> hartree_fock_occupation(int nelec, int ms2) {
  if ((nelec + ms2) % 2 != 0 || std::abs(ms2) > nelec) {
    throw std::invalid_argument("inconsistent NELEC/MS2");
  }
  const int na = (nelec + ms2) / 2, nb = (nelec - ms2) / 2;
  std::vector<std::size_t> occ;
  for (int i = 0; i < na; ++i) occ.push_back(2 * static_cast<std::size_t>(i));
  for (int i = 0; i < nb; ++i) occ.push_back(2 * static_cast<std::size_t>(i) + 1);
  std::sort(occ.begin(), occ.end());
  return occ;
}

Problem make_problem(const MolecularIntegrals& ints) {
  const std::size_t n = ints.n_qubits();
  QubitOperator h = jordan_wigner(build_fermionic_hamiltonian(ints), n);
  h.simplify(1e-12);
  const Sector sector{ints.nelec(), 0.5 * ints.ms2()};
  const double e_fci = ground_state(h, sector).eigenvalue;
  StateVector hf = reference_state(n, hartree_fock_occupation(ints.nelec(), ints.ms2()));
  return {ints.norb(), ints.nelec(), ints.ms2(), std::move(h), sector, e_fci,
          std::move(hf)};
}

Problem load_problem(const std::filesystem::path& fcidump) {
  if (!std::filesystem::exists(fcidump)) {
    throw std::runtime_error("FCIDUMP not found: " + fcidump.string());
  }
  return make_problem(load_fcidump(fcidump.string()));
}

StateVector build_initial_state(std::size_t n_qubits,
                                const std::vector<DeterminantTerm>& terms) {
  StateVector psi(n_qubits);
  psi[0] = 0.0;
  for (const auto& t : terms) {
    const StateVector det = reference_state(n_qubits, t.occupied);
    psi.axpy(t.coeff, det);
  }
  psi.normalize();
  return psi;
}

std::optional<int> cnots_to_accuracy(const std::vector<TraceRow>& trace,
                                     double reference, double target) {
  for (const auto& row : trace) {
    if (std::abs(row.energy - reference) <= target) return row.cnots;
  }
  return std::nullopt;
}

int run(const RunConfig& cfg, std::ostream& log) {
  const Problem prob = load_problem(cfg.fcidump);
  log << "loaded " << cfg.fcidump.string() << ": " << prob.hamiltonian.n_qubits()
      << " qubits, " << prob.hamiltonian.size() << " Pauli terms, E_FCI = "
      << prob.e_fci << "\n";

  if (cfg.pools.size() == 1) {
    return run_pool(cfg, prob, cfg.pools.front(), cfg.output_dir, log).exit_code;
  }

  int code = 0;
  ordered_json comparison;
  std::map<PoolFamily, PoolRun> runs;
  for (auto family : cfg.pools) {
    PoolRun r = run_pool(cfg, prob, family, cfg.output_dir / std::string(to_string(family)), log);
    code = std::max(code, r.exit_code);
    comparison["pools"][std::string(to_string(family))] = {
        {"total_cnots", r.summary["total_cnots"]},
        {"error", r.summary["error"]},
        {"status", r.summary["status"]}};
    runs.emplace(family, std::move(r));
  }
  if (runs.count(PoolFamily::SQEB) && runs.count(PoolFamily::QEB)) {
    const double ref = cfg.target == Target::Ground
                           ? prob.e_fci
                           : runs.at(PoolFamily::SQEB).summary["fci_energy"].get<double>();
    const auto& sq = runs.at(PoolFamily::SQEB).result;
    const auto& q = runs.at(PoolFamily::QEB).result;
    const double n_sq = sq.ansatz.cnot_count(), n_q = q.ansatz.cnot_count();
    comparison["cnot_reduction_ratio"] = n_q > 0 ? round12(1.0 - n_sq / n_q) : 0.0;
    for (double target : {1e-3, 1e-6}) {
      char key[32];
      std::snprintf(key, sizeof(key), "%g", target);
      const auto a = cnots_to_accuracy(sq.trace, ref, target);
      const auto b = cnots_to_accuracy(q.trace, ref, target);
      ordered_json entry{{"sqeb_cnots", a ? ordered_json(*a) : ordered_json()},
                         {"qeb_cnots", b ? ordered_json(*b) : ordered_json()}};
      if (a && b && *b > 0) entry["reduction_ratio"] = round12(1.0 - double(*a) / *b);
      comparison["at_accuracy"][key] = entry;
    }
  }
  write_text(cfg.output_dir / "comparison.json", comparison.dump(2) + "\n");
  return code;
}

void spectrum(const RunConfig& cfg, std::size_t k, std::ostream& csv) {
  const Problem prob = load_problem(cfg.fcidump);
  write_spectrum_csv(csv, exact_spectrum(prob.hamiltonian, k, prob.sector));
}

}  // namespace adapt_forge
