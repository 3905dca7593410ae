#include "adapt_forge/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

namespace adapt_forge {

namespace {

constexpr double kImaginaryResidueTolerance = 1e-10;
constexpr std::size_t kMaxTabulatedEntries = std::size_t{1} << 23;
// Cancellation residue between terms that should sum to zero.
constexpr double kSparseDropTolerance = 1e-14;
const Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

void require_same_dimension(const StateVector& a, const StateVector& b,
                            const char* what) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.n_qubits()) + " vs " +
                                std::to_string(b.n_qubits()) + " qubits)");
  }
}

}  // namespace

StateVector::StateVector(std::size_t n_qubits)
    : n_qubits_(n_qubits), amps_(std::size_t{1} << n_qubits, Complex{}) {
  if (n_qubits > 30) throw std::invalid_argument("too many qubits");
  amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  if (amps_.size() != (std::size_t{1} << n_qubits)) {
    throw std::invalid_argument("amplitude count does not match 2^n_qubits");
  }
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

StateVector& StateVector::normalize() {
  const double n = norm();
  if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
  for (auto& a : amps_) a /= n;
  return *this;
}

StateVector& StateVector::operator+=(const StateVector& o) {
  require_same_dimension(*this, o, "StateVector::+");
  for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] += o.amps_[i];
  return *this;
}

StateVector& StateVector::operator-=(const StateVector& o) {
  require_same_dimension(*this, o, "StateVector::-");
  for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] -= o.amps_[i];
  return *this;
}

StateVector& StateVector::operator*=(Complex s) {
  for (auto& a : amps_) a *= s;
  return *this;
}

void StateVector::axpy(Complex s, const StateVector& o) {
  require_same_dimension(*this, o, "StateVector::axpy");
  for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] += s * o.amps_[i];
}

void StateVector::write_binary(std::ostream& out) const {
  static_assert(std::endian::native == std::endian::little,
                "binary dumps assume a little-endian host");
  for (const auto& a : amps_) {
    const double pair[2] = {a.real(), a.imag()};
    out.write(reinterpret_cast<const char*>(pair), sizeof(pair));
  }
}

StateVector StateVector::read_binary(std::istream& in, std::size_t n_qubits) {
  std::vector<Complex> amps(std::size_t{1} << n_qubits);
  for (auto& a : amps) {
    double pair[2];
    if (!in.read(reinterpret_cast<char*>(pair), sizeof(pair))) {
      throw std::runtime_error("truncated state-vector dump");
    }
    a = {pair[0], pair[1]};
  }
  return StateVector(n_qubits, std::move(amps));
}

CompiledOperator::CompiledOperator(const QubitOperator& op)
    : n_qubits_(op.n_qubits()), term_count_(op.size()) {
  std::map<std::uint64_t, std::vector<Term>> by_flip;
  for (const auto& [p, c] : op.terms()) {
    const int ny = std::popcount(p.x_mask() & p.z_mask());
    by_flip[p.x_mask()].push_back({p.z_mask(), c * kIPowers[ny % 4]});
  }
  groups_.reserve(by_flip.size());
  for (auto& [flip, terms] : by_flip) groups_.push_back({flip, std::move(terms)});

  const std::size_t dim = std::size_t{1} << n_qubits_;
  if (n_qubits_ <= 30 && groups_.size() * dim <= kMaxTabulatedEntries) {
    auto m = std::make_shared<Sparse>();
    m->row_start.reserve(dim + 1);
    m->row_start.push_back(0);
    for (std::uint64_t row = 0; row < dim; ++row) {
      for (const auto& g : groups_) {
        const std::uint64_t src = row ^ g.flip;
        Complex sum{};
        for (const auto& t : g.terms) {
          if (std::popcount(src & t.phase_mask) & 1) {
            sum -= t.coeff;
          } else {
            sum += t.coeff;
          }
        }
        if (std::abs(sum) > kSparseDropTolerance) {
          m->col.push_back(static_cast<std::uint32_t>(src));
          m->value.push_back(sum);
        }
      }
      m->row_start.push_back(static_cast<std::uint32_t>(m->col.size()));
    }
    sparse_ = std::move(m);
  }
}

void CompiledOperator::apply(const StateVector& psi, StateVector& out) const {
  if (psi.n_qubits() != n_qubits_) {
    throw std::invalid_argument("operator/state dimension mismatch (" +
                                std::to_string(n_qubits_) + " vs " +
                                std::to_string(psi.n_qubits()) + " qubits)");
  }
  if (out.n_qubits() != n_qubits_) out = StateVector(n_qubits_);
  const std::int64_t dim = static_cast<std::int64_t>(psi.dimension());
  const Complex* in = psi.amplitudes().data();
  Complex* dst = out.amplitudes().data();
  if (sparse_) {
    const Sparse& m = *sparse_;
#pragma omp parallel for schedule(static) if (dim >= 4096)
    for (std::int64_t b = 0; b < dim; ++b) {
      Complex acc{};
      for (std::uint32_t k = m.row_start[b]; k < m.row_start[b + 1]; ++k) {
        acc += m.value[k] * in[m.col[k]];
      }
      dst[b] = acc;
    }
    return;
  }
#pragma omp parallel for schedule(static) if (dim >= 4096)
  for (std::int64_t b = 0; b < dim; ++b) {
    Complex acc{};
    for (const auto& g : groups_) {
      const std::uint64_t src = static_cast<std::uint64_t>(b) ^ g.flip;
      Complex sum{};
      for (const auto& t : g.terms) {
        if (std::popcount(src & t.phase_mask) & 1) {
          sum -= t.coeff;
        } else {
          sum += t.coeff;
        }
      }
      acc += sum * in[src];
    }
    dst[b] = acc;
  }
}

StateVector CompiledOperator::apply(const StateVector& psi) const {
  StateVector out(n_qubits_);
  apply(psi, out);
  return out;
}

std::vector<std::pair<std::uint64_t, Complex>> CompiledOperator::column(
    std::uint64_t basis) const {
  std::vector<std::pair<std::uint64_t, Complex>> out;
  for (const auto& g : groups_) {
    Complex sum{};
    for (const auto& t : g.terms) {
      if (std::popcount(basis & t.phase_mask) & 1) {
        sum -= t.coeff;
      } else {
        sum += t.coeff;
      }
    }
    if (sum != Complex{}) out.emplace_back(basis ^ g.flip, sum);
  }
  return out;
}

StateVector reference_state(std::size_t n_qubits,
                            const std::vector<std::size_t>& occupied) {
  std::uint64_t index = 0;
  for (auto q : occupied) {
    if (q >= n_qubits) {
      throw std::out_of_range("reference_state: qubit " + std::to_string(q) +
                              " outside " + std::to_string(n_qubits));
    }
    index |= 1ULL << q;
  }
  StateVector psi(n_qubits);
  psi[0] = 0.0;
  psi[index] = 1.0;
  return psi;
}

StateVector apply_operator(const QubitOperator& op, const StateVector& psi) {
  return CompiledOperator(op).apply(psi);
}

StateVector apply_exponential(const CompiledOperator& generator, double theta,
                              const StateVector& psi) {
  const StateVector t1 = generator.apply(psi);
  const StateVector t2 = generator.apply(t1);
  StateVector out = psi;
  out.axpy(std::sin(theta), t1);
  out.axpy(1.0 - std::cos(theta), t2);
  return out;
}

StateVector apply_exponential(const QubitOperator& generator, double theta,
                              const StateVector& psi) {
  return apply_exponential(CompiledOperator(generator), theta, psi);
}

Complex overlap(const StateVector& a, const StateVector& b) {
  require_same_dimension(a, b, "overlap");
  Complex s{};
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

namespace {

double real_part_checked(Complex value) {
  if (std::abs(value.imag()) > kImaginaryResidueTolerance) {
    throw std::domain_error(
        "expectation has imaginary residue " + std::to_string(value.imag()) +
        "; operator is not Hermitian");
  }
  return value.real();
}

}  // namespace

double expectation(const CompiledOperator& op, const StateVector& psi) {
  return real_part_checked(overlap(psi, op.apply(psi)));
}

double expectation(const QubitOperator& op, const StateVector& psi) {
  return expectation(CompiledOperator(op), psi);
}

Objective::Objective(const QubitOperator& hamiltonian) : op_(hamiltonian) {}

Objective::Objective(const QubitOperator& hamiltonian,
                     std::vector<Projector> projectors)
    : op_(hamiltonian), projectors_(std::move(projectors)) {
  for (const auto& p : projectors_) {
    if (p.state.n_qubits() != hamiltonian.n_qubits()) {
      throw std::invalid_argument("penalty state dimension mismatch");
    }
  }
}

StateVector Objective::apply(const StateVector& psi) const {
  StateVector out = op_.apply(psi);
  for (const auto& p : projectors_) {
    out.axpy(p.weight * overlap(p.state, psi), p.state);
  }
  return out;
}

double Objective::expectation(const StateVector& psi) const {
  return real_part_checked(overlap(psi, apply(psi)));
}

void Ansatz::append(const PoolOperator& op, double theta) {
  elements_.push_back({op, CompiledOperator(op.generator), theta});
}

std::vector<double> Ansatz::parameters() const {
  std::vector<double> out;
  out.reserve(elements_.size());
  for (const auto& e : elements_) out.push_back(e.theta);
  return out;
}

void Ansatz::set_parameters(std::span<const double> theta) {
  if (theta.size() != elements_.size()) {
    throw std::invalid_argument("parameter count does not match ansatz size");
  }
  for (std::size_t i = 0; i < theta.size(); ++i) elements_[i].theta = theta[i];
}

int Ansatz::cnot_count() const {
  int total = 0;
  for (const auto& e : elements_) total += e.op.cnot_cost;
  return total;
}

StateVector Ansatz::prepare(const StateVector& psi0) const {
  StateVector psi = psi0;
  for (const auto& e : elements_) psi = apply_exponential(e.generator, e.theta, psi);
  return psi;
}

EnergyGradient ansatz_energy_and_gradient(const Ansatz& ansatz,
                                          const Objective& objective,
                                          const StateVector& psi0) {
  if (psi0.n_qubits() != objective.n_qubits()) {
    throw std::invalid_argument("ansatz_energy_and_gradient: dimension mismatch");
  }
  StateVector psi = ansatz.prepare(psi0);
  StateVector lambda = objective.apply(psi);
  EnergyGradient result;
  result.energy = overlap(psi, lambda).real();
  result.gradient.assign(ansatz.size(), 0.0);
  for (std::size_t k = ansatz.size(); k-- > 0;) {
    const auto& e = ansatz[k];
    result.gradient[k] = 2.0 * overlap(lambda, e.generator.apply(psi)).real();
    if (k == 0) break;
    psi = apply_exponential(e.generator, -e.theta, psi);
    lambda = apply_exponential(e.generator, -e.theta, lambda);
  }
  return result;
}

}  // namespace adapt_forge
