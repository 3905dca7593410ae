#include "adapt_forge/circuits.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace adapt_forge {

namespace {

constexpr double kPi = std::numbers::pi;

void require_distinct(std::initializer_list<std::size_t> idx, const char* what) {
  std::vector<std::size_t> v(idx);
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end()) {
    throw std::invalid_argument(std::string(what) + ": repeated qubits");
  }
}

using Mat2 = std::array<Complex, 4>;  // row-major

Mat2 rotation_matrix(GateKind kind, double angle) {
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  switch (kind) {
    case GateKind::RX: return {Complex{c, 0}, {0, -s}, {0, -s}, {c, 0}};
    case GateKind::RY:
    case GateKind::MCRY: return {Complex{c, 0}, {-s, 0}, {s, 0}, {c, 0}};
    case GateKind::RZ: return {Complex{c, -s}, {0, 0}, {0, 0}, {c, s}};
    case GateKind::CNOT: return {Complex{0, 0}, {1, 0}, {1, 0}, {0, 0}};
  }
  return {};
}

// Applies a (multi-)controlled single-qubit matrix to a vector of 2^n
// amplitudes in place.
template <typename Vec>
void apply_gate(const Gate& g, Vec& v, std::size_t dim) {
  const Mat2 m = rotation_matrix(g.kind, g.angle);
  std::uint64_t need_one = 0, need_zero = 0;
  for (const auto& c : g.controls) {
    (c.on_one ? need_one : need_zero) |= 1ULL << c.qubit;
  }
  const std::uint64_t tbit = 1ULL << g.target;
  for (std::uint64_t b = 0; b < dim; ++b) {
    if (b & tbit) continue;
    if ((b & need_one) != need_one || (b & need_zero) != 0) continue;
    const Complex a0 = v[b], a1 = v[b | tbit];
    v[b] = m[0] * a0 + m[1] * a1;
    v[b | tbit] = m[2] * a0 + m[3] * a1;
  }
}

// Working representation during decomposition: CZ exists only here.
struct Proto {
  enum class Kind { Gate, CZ } kind;
  Gate gate;  // valid for Kind::Gate
  std::size_t a = 0, b = 0;  // CZ qubits
};

bool commutes_with_cz(const Proto& p, std::size_t a, std::size_t b) {
  if (p.kind == Proto::Kind::CZ) return true;
  const Gate& g = p.gate;
  const auto touches = [&](std::size_t q) { return q == a || q == b; };
  switch (g.kind) {
    case GateKind::RZ: return true;
    case GateKind::RX:
    case GateKind::RY: return !touches(g.target);
    case GateKind::CNOT: return !touches(g.target);
    case GateKind::MCRY: {
      if (touches(g.target)) return false;
      return true;
    }
  }
  return false;
}

// Index of a CNOT on {a, b} reachable from position `from` through gates that
// commute with CZ(a, b), if any.
std::optional<std::size_t> find_merge_partner(const std::vector<Proto>& seq,
                                              std::size_t from, std::size_t a,
                                              std::size_t b) {
  for (std::size_t j = from; j < seq.size(); ++j) {
    const Proto& p = seq[j];
    if (p.kind == Proto::Kind::Gate && p.gate.kind == GateKind::CNOT) {
      const std::size_t c = p.gate.controls[0].qubit, t = p.gate.target;
      if ((c == a && t == b) || (c == b && t == a)) return j;
    }
    if (!commutes_with_cz(p, a, b)) return std::nullopt;
  }
  return std::nullopt;
}

// Gray-code expansion of R_y(angle) controlled on `controls` (all on-one),
// using 2^k controlled-Z gates; `controls.back()` hosts the final CZ.
std::vector<Proto> expand_mcry(double angle, const std::vector<std::size_t>& controls,
                               std::size_t target) {
  const std::size_t k = controls.size();
  const std::size_t steps = std::size_t{1} << k;
  const double a = angle / static_cast<double>(steps);
  std::vector<Proto> out;
  for (std::size_t j = 0; j < steps; ++j) {
    out.push_back({Proto::Kind::Gate, Gate::ry(target, (j % 2 == 0) ? a : -a)});
    const std::size_t bit =
        (j + 1 == steps) ? k - 1 : static_cast<std::size_t>(std::countr_zero(j + 1));
    out.push_back({Proto::Kind::CZ, {}, target, controls[bit]});
  }
  return out;
}

}  // namespace

Gate Gate::cnot(std::size_t control, std::size_t target) {
  return {GateKind::CNOT, target, {{control, true}}, 0.0};
}
Gate Gate::rx(std::size_t q, double angle) { return {GateKind::RX, q, {}, angle}; }
Gate Gate::ry(std::size_t q, double angle) { return {GateKind::RY, q, {}, angle}; }
Gate Gate::rz(std::size_t q, double angle) { return {GateKind::RZ, q, {}, angle}; }
Gate Gate::mcry(double angle, std::vector<Control> controls, std::size_t target) {
  if (controls.empty()) throw std::invalid_argument("MCRY needs a control");
  return {GateKind::MCRY, target, std::move(controls), angle};
}

std::vector<std::size_t> Gate::qubits() const {
  std::vector<std::size_t> q{target};
  for (const auto& c : controls) q.push_back(c.qubit);
  return q;
}

void Circuit::add(Gate g) {
  auto qs = g.qubits();
  for (auto q : qs) {
    if (q >= n_qubits_) {
      throw std::out_of_range("gate qubit " + std::to_string(q) +
                              " outside circuit of " +
                              std::to_string(n_qubits_) + " qubits");
    }
  }
  std::sort(qs.begin(), qs.end());
  if (std::adjacent_find(qs.begin(), qs.end()) != qs.end()) {
    throw std::invalid_argument("gate acts twice on the same qubit");
  }
  if (g.kind == GateKind::CNOT && g.controls.size() != 1) {
    throw std::invalid_argument("CNOT needs exactly one control");
  }
  gates_.push_back(std::move(g));
}

void Circuit::append(const Circuit& other) {
  if (other.n_qubits_ > n_qubits_) {
    throw std::invalid_argument("appended circuit is wider than the target");
  }
  for (const auto& g : other.gates_) add(g);
}

int Circuit::cnot_count() const {
  return static_cast<int>(std::count_if(gates_.begin(), gates_.end(),
                                        [](const Gate& g) {
                                          return g.kind == GateKind::CNOT;
                                        }));
}

namespace {

int layered_depth(const std::vector<Gate>& gates, std::size_t n,
                  bool cnot_only) {
  std::vector<int> level(n, 0);
  int depth = 0;
  for (const auto& g : gates) {
    if (cnot_only && g.kind != GateKind::CNOT) continue;
    int layer = 0;
    for (auto q : g.qubits()) layer = std::max(layer, level[q]);
    ++layer;
    for (auto q : g.qubits()) level[q] = layer;
    depth = std::max(depth, layer);
  }
  return depth;
}

}  // namespace

int Circuit::depth() const { return layered_depth(gates_, n_qubits_, false); }
int Circuit::cnot_depth() const { return layered_depth(gates_, n_qubits_, true); }

std::string Circuit::dump() const {
  std::ostringstream os;
  os.precision(17);
  for (const auto& g : gates_) {
    switch (g.kind) {
      case GateKind::CNOT: os << "CNOT"; break;
      case GateKind::RX: os << "RX"; break;
      case GateKind::RY: os << "RY"; break;
      case GateKind::RZ: os << "RZ"; break;
      case GateKind::MCRY: os << "MCRY"; break;
    }
    os << ' ' << g.target << " [";
    for (std::size_t i = 0; i < g.controls.size(); ++i) {
      if (i) os << ',';
      os << g.controls[i].qubit << (g.controls[i].on_one ? "" : "o");
    }
    os << ']';
    if (g.kind != GateKind::CNOT) os << ' ' << g.angle;
    os << '\n';
  }
  return os.str();
}

Circuit qeb1_circuit(std::size_t p, std::size_t q, double theta,
                     std::size_t n_qubits) {
  require_distinct({p, q}, "qeb1_circuit");
  Circuit c(n_qubits ? n_qubits : std::max(p, q) + 1);
  c.add(Gate::rz(p, kPi / 2));
  c.add(Gate::rx(p, kPi / 2));
  c.add(Gate::rx(q, kPi / 2));
  c.add(Gate::cnot(p, q));
  c.add(Gate::rx(p, -theta));
  c.add(Gate::rz(q, -theta));
  c.add(Gate::cnot(p, q));
  c.add(Gate::rx(p, -kPi / 2));
  c.add(Gate::rx(q, -kPi / 2));
  c.add(Gate::rz(p, -kPi / 2));
  return c;
}

namespace {

// CNOT ladder `pre`, MCRY(2θ), mirrored ladder.
Circuit sandwich(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pre,
                 std::vector<Control> controls, std::size_t target, double theta) {
  Circuit c(n);
  for (const auto& [ctl, tgt] : pre) c.add(Gate::cnot(ctl, tgt));
  c.add(Gate::mcry(2.0 * theta, std::move(controls), target));
  for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
    c.add(Gate::cnot(it->first, it->second));
  }
  return c;
}

std::size_t width(std::size_t n_qubits, std::size_t p, std::size_t q,
                  std::size_t r, std::size_t s) {
  return n_qubits ? n_qubits : std::max({p, q, r, s}) + 1;
}

}  // namespace

Circuit qeb2_circuit(std::size_t p, std::size_t q, std::size_t r, std::size_t s,
                     double theta, std::size_t n_qubits) {
  require_distinct({p, q, r, s}, "qeb2_circuit");
  return sandwich(width(n_qubits, p, q, r, s), {{p, r}, {q, s}, {q, p}},
                  {{p, false}, {r, true}, {s, true}}, q, theta);
}

Circuit sqeb2_circuit(std::size_t p, std::size_t q, std::size_t r,
                      std::size_t s, double theta, std::size_t n_qubits) {
  require_distinct({p, q, r, s}, "sqeb2_circuit");
  return sandwich(width(n_qubits, p, q, r, s), {{p, r}, {q, s}, {q, p}},
                  {{r, true}, {s, true}}, q, theta);
}

std::vector<CircuitVariant> variant_circuits(OperatorKind kind) {
  using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;
  const auto make = [](std::string name, auto layout) {
    return CircuitVariant{
        std::move(name),
        [layout](std::size_t p, std::size_t q, std::size_t r, std::size_t s,
                 double theta) {
          const auto [pre, controls, target] = layout(p, q, r, s);
          return sandwich(std::max({p, q, r, s}) + 1, pre, controls, target,
                          theta);
        }};
  };
  using Layout = std::tuple<Pairs, std::vector<Control>, std::size_t>;
  std::vector<CircuitVariant> out;
  if (kind == OperatorKind::QEB2) {
    out.push_back(make("qeb2-standard", [](auto p, auto q, auto r, auto s) {
      return Layout{Pairs{{p, r}, {q, s}, {q, p}}, {{p, false}, {r, true}, {s, true}}, q};
    }));
    out.push_back(make("qeb2-exchanged-a", [](auto p, auto q, auto r, auto s) {
      return Layout{Pairs{{p, q}, {r, s}, {p, r}}, {{q, false}, {r, true}, {s, false}}, p};
    }));
    out.push_back(make("qeb2-exchanged-b", [](auto p, auto q, auto r, auto s) {
      return Layout{Pairs{{q, p}, {s, r}, {q, s}}, {{p, false}, {r, false}, {s, true}}, q};
    }));
    out.push_back(make("qeb2-target-p", [](auto p, auto q, auto r, auto s) {
      return Layout{Pairs{{s, q}, {p, r}, {p, s}}, {{q, true}, {r, true}, {s, true}}, p};
    }));
    out.push_back(make("qeb2-fan-s", [](auto p, auto q, auto r, auto s) {
      return Layout{Pairs{{s, r}, {s, q}, {p, s}}, {{q, true}, {r, false}, {s, true}}, p};
    }));
    out.push_back(make("qeb2-chain", [](auto p, auto q, auto r, auto s) {
      return Layout{Pairs{{r, s}, {q, r}, {p, q}}, {{q, false}, {r, true}, {s, false}}, p};
    }));
  } else if (kind == OperatorKind::SQEB2) {
    out.push_back(make("sqeb2-standard", [](auto p, auto q, auto r, auto s) {
      return Layout{Pairs{{p, r}, {q, s}, {q, p}}, {{r, true}, {s, true}}, q};
    }));
    out.push_back(make("sqeb2-s-to-p", [](auto p, auto q, auto r, auto s) {
      return Layout{Pairs{{p, r}, {s, p}, {q, s}}, {{r, true}, {s, true}}, q};
    }));
    out.push_back(make("sqeb2-swapped-layer", [](auto p, auto q, auto r, auto s) {
      return Layout{Pairs{{p, r}, {q, p}, {q, s}}, {{r, true}, {s, true}}, q};
    }));
  } else {
    throw std::invalid_argument("no circuit variants for " +
                                std::string(to_string(kind)));
  }
  return out;
}

Circuit decompose(const Circuit& c) {
  std::vector<Proto> seq;
  const auto& gates = c.gates();
  // Original gates after position i, in proto form, for merge lookahead.
  const auto tail_after = [&](std::size_t i) {
    std::vector<Proto> tail;
    for (std::size_t j = i + 1; j < gates.size(); ++j) {
      tail.push_back({Proto::Kind::Gate, gates[j]});
    }
    return tail;
  };

  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    switch (g.kind) {
      case GateKind::CNOT:
      case GateKind::RX:
      case GateKind::RY:
      case GateKind::RZ:
        seq.push_back({Proto::Kind::Gate, g});
        break;
      case GateKind::MCRY: {
        std::vector<std::size_t> open, controls;
        for (const auto& ctl : g.controls) {
          controls.push_back(ctl.qubit);
          if (!ctl.on_one) open.push_back(ctl.qubit);
        }
        // Put the control whose final CZ can be absorbed downstream last.
        std::vector<Proto> restore;
        for (auto q : open) restore.push_back({Proto::Kind::Gate, Gate::rx(q, kPi)});
        std::vector<Proto> after = restore;
        const auto tail = tail_after(i);
        after.insert(after.end(), tail.begin(), tail.end());
        for (std::size_t k = controls.size(); k-- > 0;) {
          if (find_merge_partner(after, 0, g.target, controls[k])) {
            std::rotate(controls.begin() + k, controls.begin() + k + 1,
                        controls.end());
            break;
          }
        }
        for (auto q : open) seq.push_back({Proto::Kind::Gate, Gate::rx(q, kPi)});
        const auto body = expand_mcry(g.angle, controls, g.target);
        seq.insert(seq.end(), body.begin(), body.end());
        seq.insert(seq.end(), restore.begin(), restore.end());
        break;
      }
    }
  }

  // Absorb CZ(a,b) followed by CNOT on {a,b}: CNOT·CZ = S†_c ⊗ C(Y), and
  // C(Y) = S_t CNOT S†_t, all up to global phase.
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i].kind != Proto::Kind::CZ) continue;
    const auto partner = find_merge_partner(seq, i + 1, seq[i].a, seq[i].b);
    if (!partner) continue;
    const Gate cx = seq[*partner].gate;
    const std::size_t ctl = cx.controls[0].qubit, tgt = cx.target;
    std::vector<Proto> repl{{Proto::Kind::Gate, Gate::rz(tgt, -kPi / 2)},
                            {Proto::Kind::Gate, cx},
                            {Proto::Kind::Gate, Gate::rz(tgt, kPi / 2)},
                            {Proto::Kind::Gate, Gate::rz(ctl, -kPi / 2)}};
    seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(*partner));
    seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(*partner), repl.begin(),
               repl.end());
    seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(i));
    --i;
  }

  Circuit out(c.n_qubits());
  for (const auto& p : seq) {
    if (p.kind == Proto::Kind::Gate) {
      out.add(p.gate);
    } else {
      // CZ(a,b) = R_y(-π/2)_a CNOT(b→a) R_y(π/2)_a
      out.add(Gate::ry(p.a, kPi / 2));
      out.add(Gate::cnot(p.b, p.a));
      out.add(Gate::ry(p.a, -kPi / 2));
    }
  }
  return out;
}

StateVector simulate(const Circuit& c, const StateVector& psi) {
  if (c.n_qubits() > psi.n_qubits()) {
    throw std::invalid_argument("circuit wider than state");
  }
  StateVector out = psi;
  auto amps = out.amplitudes();
  for (const auto& g : c.gates()) apply_gate(g, amps, amps.size());
  return out;
}

Eigen::MatrixXcd circuit_unitary(const Circuit& c, std::size_t n_qubits) {
  if (n_qubits > 12) {
    throw std::invalid_argument("circuit_unitary: more than 12 qubits");
  }
  if (c.n_qubits() > n_qubits) {
    throw std::invalid_argument("circuit_unitary: circuit wider than n_qubits");
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    auto column = u.col(col);
    for (const auto& g : c.gates()) apply_gate(g, column, dim);
  }
  return u;
}

double phase_insensitive_distance(const Eigen::MatrixXcd& u,
                                  const Eigen::MatrixXcd& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw std::invalid_argument("equivalent_up_to_phase: shape mismatch");
  }
  Eigen::Index r = 0, c = 0;
  v.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(v(r, c)) == 0.0) return u.cwiseAbs().maxCoeff();
  Complex phase = u(r, c) / v(r, c);
  if (std::abs(phase) == 0.0) return (u - v).cwiseAbs().maxCoeff();
  phase /= std::abs(phase);
  return (u - phase * v).cwiseAbs().maxCoeff();
}

bool equivalent_up_to_phase(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v,
                            double tol) {
  return phase_insensitive_distance(u, v) <= tol;
}

Circuit element_circuit(const PoolOperator& op, double theta,
                        std::size_t n_qubits) {
  const auto& i = op.indices;
  switch (op.kind) {
    case OperatorKind::QEB1:
      return decompose(qeb1_circuit(i[0], i[1], theta, n_qubits));
    case OperatorKind::QEB2:
      return decompose(qeb2_circuit(i[0], i[1], i[2], i[3], theta, n_qubits));
    case OperatorKind::SQEB2:
      return decompose(sqeb2_circuit(i[0], i[1], i[2], i[3], theta, n_qubits));
    default:
      throw std::invalid_argument("no gate-level circuit for " +
                                  std::string(to_string(op.kind)));
  }
}

Circuit ansatz_to_circuit(const Ansatz& ansatz, std::size_t n_qubits) {
  Circuit out(n_qubits);
  for (const auto& e : ansatz.elements()) {
    out.append(element_circuit(e.op, e.theta, n_qubits));
  }
  return out;
}

std::string export_qasm(const Circuit& c) {
  std::ostringstream os;
  os << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" << c.n_qubits()
     << "];\n";
  char angle[64];
  for (const auto& g : c.gates()) {
    std::snprintf(angle, sizeof(angle), "%.17g", g.angle);
    switch (g.kind) {
      case GateKind::CNOT:
        os << "cx q[" << g.controls[0].qubit << "],q[" << g.target << "];\n";
        break;
      case GateKind::RX: os << "rx(" << angle << ") q[" << g.target << "];\n"; break;
      case GateKind::RY: os << "ry(" << angle << ") q[" << g.target << "];\n"; break;
      case GateKind::RZ: os << "rz(" << angle << ") q[" << g.target << "];\n"; break;
      case GateKind::MCRY:
        throw std::invalid_argument(
            "export_qasm: MCRY is not an elementary gate; decompose first");
    }
  }
  return os.str();
}

Circuit parse_qasm(const std::string& text) {
  static const std::regex qreg(R"(^\s*qreg\s+q\[(\d+)\]\s*;\s*$)");
  static const std::regex cx(R"(^\s*cx\s+q\[(\d+)\]\s*,\s*q\[(\d+)\]\s*;\s*$)");
  static const std::regex rot(
      R"(^\s*(rx|ry|rz)\(\s*([-+0-9.eE]+)\s*\)\s+q\[(\d+)\]\s*;\s*$)");
  std::istringstream in(text);
  std::string line;
  std::optional<Circuit> c;
  std::smatch m;
  while (std::getline(in, line)) {
    if (line.empty() || line.starts_with("OPENQASM") || line.starts_with("include") ||
        line.starts_with("//")) {
      continue;
    }
    if (std::regex_match(line, m, qreg)) {
      c.emplace(std::stoul(m[1].str()));
    } else if (!c) {
      throw std::invalid_argument("QASM gate before qreg declaration");
    } else if (std::regex_match(line, m, cx)) {
      c->add(Gate::cnot(std::stoul(m[1].str()), std::stoul(m[2].str())));
    } else if (std::regex_match(line, m, rot)) {
      const double a = std::stod(m[2].str());
      const std::size_t q = std::stoul(m[3].str());
      const auto name = m[1].str();
      c->add(name == "rx" ? Gate::rx(q, a) : name == "ry" ? Gate::ry(q, a)
                                                          : Gate::rz(q, a));
    } else {
      throw std::invalid_argument("unsupported QASM line: " + line);
    }
  }
  if (!c) throw std::invalid_argument("QASM text has no qreg");
  return *c;
}

}  // namespace adapt_forge
