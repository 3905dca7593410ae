#include "adapt_forge/verify.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "adapt_forge/circuits.hpp"
#include "adapt_forge/reference.hpp"

namespace adapt_forge {

namespace {

using Index = std::vector<std::size_t>;

// Fixed, reproducible angles spread over (-π, π).
const std::vector<double> kAngles{0.37, -1.21, 2.74, -2.93, 0.0012, 1.5707963};

// Index placements on 4 qubits, including non-monotone ones.
const std::vector<Index> kPlacements{{0, 1, 2, 3}, {2, 0, 3, 1}, {3, 2, 1, 0}, {1, 3, 0, 2}};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

Eigen::MatrixXcd expm(const QubitOperator& g, double theta) {
  return (theta * dense_matrix(g)).exp();
}

struct Recorder {
  std::vector<VerifyCheck> checks;
  void add(std::string name, bool ok, std::string detail = {}) {
    checks.push_back({std::move(name), ok, std::move(detail)});
  }
};

// Worst phase-insensitive distance between a circuit builder and exp(θG).
template <typename Build>
double circuit_vs_exponential(const GeneratorFactory& factory, OperatorKind kind,
                              Build build) {
  double worst = 0.0;
  for (const auto& idx : kPlacements) {
    const std::size_t n = 4;
    const QubitOperator g =
        factory(kind, is_two_body(kind) ? idx : Index{idx[0], idx[1]}, n);
    for (double theta : kAngles) {
      const Eigen::MatrixXcd u = circuit_unitary(build(idx, theta), n);
      worst = std::max(worst, phase_insensitive_distance(u, expm(g, theta)));
    }
  }
  return worst;
}

// |n_p n_q n_r n_s> with (p,q,r,s) = (0,1,2,3).
std::size_t ket(int np, int nq, int nr, int ns) {
  return static_cast<std::size_t>(np | nq << 1 | nr << 2 | ns << 3);
}

}  // namespace

std::vector<VerifyCheck> run_verification(const GeneratorFactory& factory) {
  Recorder rec;
  constexpr double tol = 1e-10;

  {
    const double d = circuit_vs_exponential(
        factory, OperatorKind::QEB1, [](const Index& i, double t) {
          return qeb1_circuit(i[0], i[1], t, 4);
        });
    rec.add("qeb1 circuit == exp(theta*QEB1)", d <= tol, "max deviation " + fmt(d));
  }
  {
    const double d = circuit_vs_exponential(
        factory, OperatorKind::QEB2, [](const Index& i, double t) {
          return decompose(qeb2_circuit(i[0], i[1], i[2], i[3], t, 4));
        });
    rec.add("decomposed qeb2 circuit == exp(theta*kappa)", d <= tol,
            "max deviation " + fmt(d));
  }
  {
    const double d = circuit_vs_exponential(
        factory, OperatorKind::SQEB2, [](const Index& i, double t) {
          return decompose(sqeb2_circuit(i[0], i[1], i[2], i[3], t, 4));
        });
    rec.add("decomposed sqeb2 circuit == exp(theta*tau)", d <= tol,
            "max deviation " + fmt(d));
  }

  const Circuit q1 = decompose(qeb1_circuit(0, 1, 0.3));
  const Circuit q2 = decompose(qeb2_circuit(0, 1, 2, 3, 0.3));
  const Circuit sq = decompose(sqeb2_circuit(0, 1, 2, 3, 0.3));
  rec.add("qeb1 CNOT count == 2", q1.cnot_count() == 2,
          std::to_string(q1.cnot_count()));
  rec.add("qeb2 CNOT count == 13", q2.cnot_count() == 13,
          std::to_string(q2.cnot_count()));
  rec.add("sqeb2 CNOT count == 9", sq.cnot_count() == 9,
          std::to_string(sq.cnot_count()));
  rec.add("sqeb2 CNOT-layer depth == 7", sq.cnot_depth() == 7,
          std::to_string(sq.cnot_depth()));
  rec.add("pool cnot_cost matches decomposed circuits",
          cnot_cost(OperatorKind::QEB1, {0, 1}) == q1.cnot_count() &&
              cnot_cost(OperatorKind::QEB2, {0, 1, 2, 3}) == q2.cnot_count() &&
              cnot_cost(OperatorKind::SQEB2, {0, 1, 2, 3}) == sq.cnot_count());

  for (auto kind : {OperatorKind::QEB2, OperatorKind::SQEB2}) {
    double worst = 0.0;
    const auto variants = variant_circuits(kind);
    for (const auto& idx : kPlacements) {
      const QubitOperator g = factory(kind, idx, 4);
      for (double theta : kAngles) {
        const Eigen::MatrixXcd ref = expm(g, theta);
        for (const auto& v : variants) {
          const Circuit c = v.build(idx[0], idx[1], idx[2], idx[3], theta);
          worst = std::max(worst, phase_insensitive_distance(
                                      circuit_unitary(c, 4), ref));
          worst = std::max(worst, phase_insensitive_distance(
                                      circuit_unitary(decompose(c), 4), ref));
        }
      }
    }
    rec.add(std::string(to_string(kind)) + " layout variants all equivalent (" +
                std::to_string(variants.size()) + " layouts)",
            worst <= tol, "max deviation " + fmt(worst));
  }

  {
    // κ^{pq}_{rs} = -κ^{rs}_{pq}: exchanged indices realize the inverse angle.
    double worst = 0.0;
    for (double theta : kAngles) {
      const Eigen::MatrixXcd a =
          circuit_unitary(qeb2_circuit(0, 1, 2, 3, theta, 4), 4);
      const Eigen::MatrixXcd b =
          circuit_unitary(qeb2_circuit(2, 3, 0, 1, -theta, 4), 4);
      worst = std::max(worst, phase_insensitive_distance(a, b));
    }
    rec.add("index exchange pq<->rs equals negated angle", worst <= tol,
            "max deviation " + fmt(worst));
  }

  {
    double worst = 0.0;
    for (const auto& i : kPlacements) {
      const QubitOperator tau1 = factory(OperatorKind::SQEB2, i, 4);
      const QubitOperator tau2 =
          factory(OperatorKind::SQEB2, {i[1], i[0], i[3], i[2]}, 4);
      const QubitOperator kappa = factory(OperatorKind::QEB2, i, 4);
      for (double theta : kAngles) {
        const Eigen::MatrixXcd lhs = expm(tau1, theta / 2) * expm(tau2, theta / 2);
        worst = std::max(worst, (lhs - expm(kappa, theta)).cwiseAbs().maxCoeff());
      }
    }
    rec.add("combination identity exp(t/2 tau^pq_rs) exp(t/2 tau^qp_sr) == exp(t kappa^pq_rs)",
            worst <= 1e-12, "max deviation " + fmt(worst));
  }

  {
    // Basis-state actions in |n_p n_q n_r n_s>.
    const double theta = 0.61;
    const double c = std::cos(theta), s = std::sin(theta);
    const Eigen::MatrixXcd uq = expm(factory(OperatorKind::QEB2, {0, 1, 2, 3}, 4), theta);
    const Eigen::MatrixXcd us = expm(factory(OperatorKind::SQEB2, {0, 1, 2, 3}, 4), theta);
    Eigen::MatrixXcd want_q = Eigen::MatrixXcd::Identity(16, 16);
    Eigen::MatrixXcd want_s = Eigen::MatrixXcd::Identity(16, 16);
    const auto rotate = [&](Eigen::MatrixXcd& m, std::size_t a, std::size_t b) {
      // U|a> = c|a> + s|b>, U|b> = c|b> - s|a>
      m(a, a) = c;
      m(b, a) = s;
      m(b, b) = c;
      m(a, b) = -s;
    };
    rotate(want_q, ket(0, 0, 1, 1), ket(1, 1, 0, 0));
    rotate(want_s, ket(0, 0, 1, 1), ket(1, 1, 0, 0));
    rotate(want_s, ket(1, 0, 0, 1), ket(0, 1, 1, 0));
    const double dq = (uq - want_q).cwiseAbs().maxCoeff();
    const double ds = (us - want_s).cwiseAbs().maxCoeff();
    rec.add("QEB2 basis-state action", dq <= 1e-12, "max deviation " + fmt(dq));
    rec.add("SQEB2 basis-state action", ds <= 1e-12, "max deviation " + fmt(ds));
  }

  return rec.checks;
}

int verify(std::ostream& out, const GeneratorFactory& factory) {
  int failures = 0;
  for (const auto& c : run_verification(factory)) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << "\n";
    if (!c.passed) ++failures;
  }
  out << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) failed")
      << "\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace adapt_forge
