#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "adapt_forge/fermion.hpp"
#include "adapt_forge/integrals.hpp"
#include "adapt_forge/pools.hpp"
#include "adapt_forge/statevector.hpp"
#include "test_support.hpp"

using namespace adapt_forge;
using test_support::max_diff;
using test_support::operator_dense;
using test_support::to_eigen;

namespace {

QubitOperator h2_hamiltonian() {
  const auto ints = load_fcidump(test_support::fixture("h2_0.74.fcidump"));
  return jordan_wigner(build_fermionic_hamiltonian(ints), 4);
}

}  // namespace

TEST(ReferenceState, Examples) {
  const auto psi = reference_state(4, {0, 1});
  EXPECT_EQ(psi[0b0011], Complex(1, 0));
  EXPECT_NEAR(psi.norm(), 1.0, 1e-15);
  const auto vac = reference_state(3, {});
  EXPECT_EQ(vac[0], Complex(1, 0));
  EXPECT_ANY_THROW(reference_state(3, {3}));
}

TEST(ApplyOperator, Examples) {
  std::mt19937 rng(1);
  const auto psi = test_support::random_state(3, rng);
  EXPECT_LT(max_diff(apply_operator(QubitOperator::identity(3), psi), to_eigen(psi)), 1e-15);

  const auto one = reference_state(3, {0});
  const auto z = apply_operator(QubitOperator::single(3, PauliLetter::Z, 0), one);
  EXPECT_EQ(z[1], Complex(-1, 0));
}

TEST(ApplyOperator, MatchesDenseProduct) {
  std::mt19937 rng(2);
  for (int t = 0; t < 20; ++t) {
    const auto op = test_support::random_hermitian(3, 10, rng) * Complex(0.4, -0.9);
    const auto psi = test_support::random_state(3, rng);
    EXPECT_LT(max_diff(apply_operator(op, psi), operator_dense(op) * to_eigen(psi)), 1e-13);
  }
}

TEST(ApplyOperator, SparsePathMatchesDense) {
  // 13 qubits exceeds the compiled sparse-cache threshold for this many terms.
  std::mt19937 rng(3);
  for (std::size_t n : {6u, 13u}) {
    const auto op = test_support::random_hermitian(n, 40, rng);
    const auto psi = test_support::random_state(n, rng);
    const CompiledOperator c(op);
    const auto a = c.apply(psi);
    StateVector b(n);
    b[0] = 0;
    for (const auto& [p, coeff] : op.terms()) {
      const auto single = apply_operator(QubitOperator(p, coeff), psi);
      b += single;
    }
    double diff = 0;
    for (std::size_t i = 0; i < a.dimension(); ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
    EXPECT_LT(diff, 1e-12) << n;
  }
}

TEST(CompiledOperator, ColumnMatchesDense) {
  std::mt19937 rng(4);
  const auto op = test_support::random_hermitian(3, 8, rng);
  const auto m = operator_dense(op);
  const CompiledOperator c(op);
  for (std::uint64_t b = 0; b < 8; ++b) {
    test_support::VectorXcd col = test_support::VectorXcd::Zero(8);
    for (const auto& [row, v] : c.column(b)) col(static_cast<Eigen::Index>(row)) += v;
    EXPECT_LT((col - m.col(static_cast<Eigen::Index>(b))).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(ApplyExponential, Examples) {
  std::mt19937 rng(5);
  const auto psi = test_support::random_state(4, rng);
  const auto g = build_generator(OperatorKind::QEB2, {0, 1, 2, 3}, 4);
  EXPECT_LT(max_diff(apply_exponential(g, 0.0, psi), to_eigen(psi)), 1e-15);

  const double theta = 0.813;
  // |0011> with (p,q,r,s) = (3,2,1,0) as the leftmost-to-rightmost bits.
  const auto qeb = build_generator(OperatorKind::QEB2, {3, 2, 1, 0}, 4);
  const auto out = apply_exponential(qeb, theta, reference_state(4, {0, 1}));
  EXPECT_NEAR(out[0b0011].real(), std::cos(theta), 1e-14);
  EXPECT_NEAR(out[0b1100].real(), std::sin(theta), 1e-14);

  const auto sqeb = build_generator(OperatorKind::SQEB2, {3, 2, 1, 0}, 4);
  const auto out2 = apply_exponential(sqeb, theta, reference_state(4, {0, 3}));
  EXPECT_NEAR(out2[0b1001].real(), std::cos(theta), 1e-14);
  EXPECT_NEAR(out2[0b0110].real(), std::sin(theta), 1e-14);
}

TEST(ApplyExponential, MatchesMatrixExponential) {
  std::mt19937 rng(6);
  std::uniform_real_distribution<double> u(-3, 3);
  const auto pool = generate_pool(PoolFamily::SFEB, 3, 2, PoolMode::Generalized);
  for (std::size_t k = 0; k < pool.size(); k += 7) {
    const double theta = u(rng);
    const auto psi = test_support::random_state(6, rng);
    const test_support::VectorXcd expected = test_support::expm(pool[k].generator, theta) * to_eigen(psi);
    EXPECT_LT(max_diff(apply_exponential(pool[k].generator, theta, psi), expected), 1e-12)
        << pool[k].label();
  }
}

TEST(Expectation, Examples) {
  EXPECT_NEAR(expectation(QubitOperator::single(2, PauliLetter::Z, 0), StateVector(2)), 1.0,
              1e-15);
  const auto h = h2_hamiltonian();
  const auto hf = reference_state(4, {0, 1});
  EXPECT_NEAR(expectation(h, hf), test_support::kH2Hf, 1e-10);
  const auto dense = operator_dense(h);
  EXPECT_NEAR(expectation(h, hf), dense(3, 3).real(), 1e-12);

  std::mt19937 rng(7);
  auto psi = test_support::random_state(4, rng);
  const double e = expectation(h, psi);
  psi *= std::polar(1.0, 1.234);
  EXPECT_NEAR(expectation(h, psi), e, 1e-13);
}

TEST(Expectation, NonHermitianThrows) {
  std::mt19937 rng(8);
  const auto psi = test_support::random_state(3, rng);
  const auto anti = test_support::random_hermitian(3, 5, rng) * Complex(0, 1);
  EXPECT_THROW(expectation(anti, psi), std::domain_error);
}

TEST(Overlap, Examples) {
  std::mt19937 rng(9);
  const auto a = test_support::random_state(4, rng);
  EXPECT_NEAR(std::abs(overlap(a, a) - 1.0), 0.0, 1e-14);
  EXPECT_EQ(overlap(reference_state(4, {0}), reference_state(4, {1})), Complex(0, 0));
  EXPECT_ANY_THROW(overlap(StateVector(3), StateVector(4)));

  // |<a|b>|^2 invariant under a shared random unitary.
  const auto b = test_support::random_state(4, rng);
  const auto gen = test_support::random_hermitian(4, 12, rng) * Complex(0, 1);
  const test_support::MatrixXcd u = operator_dense(gen).exp();
  const test_support::VectorXcd va = u * to_eigen(a), vb = u * to_eigen(b);
  const double before = std::norm(overlap(a, b));
  const double after = std::norm(va.dot(vb));
  EXPECT_NEAR(before, after, 1e-12);
}

TEST(StateVector, BinaryRoundTrip) {
  std::mt19937 rng(10);
  const auto a = test_support::random_state(5, rng);
  std::stringstream ss;
  a.write_binary(ss);
  const auto b = StateVector::read_binary(ss, 5);
  for (std::size_t i = 0; i < a.dimension(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(AnsatzGradient, EmptyAnsatz) {
  const Objective obj(h2_hamiltonian());
  const auto hf = reference_state(4, {0, 1});
  const auto eg = ansatz_energy_and_gradient(Ansatz{}, obj, hf);
  EXPECT_NEAR(eg.energy, test_support::kH2Hf, 1e-10);
  EXPECT_TRUE(eg.gradient.empty());
}

TEST(AnsatzGradient, SingleElementEqualsCommutator) {
  const auto h = h2_hamiltonian();
  const Objective obj(h);
  const auto hf = reference_state(4, {0, 1});
  const auto pool = generate_pool(PoolFamily::QEB, 2, 2, PoolMode::Restricted);
  for (const auto& op : pool.elements) {
    Ansatz a;
    a.append(op, 0.0);
    const auto eg = ansatz_energy_and_gradient(a, obj, hf);
    const auto comm = commutator(h, op.generator);
    const auto v = to_eigen(hf);
    const double expected = (v.adjoint() * operator_dense(comm) * v)(0).real();
    EXPECT_NEAR(eg.gradient[0], expected, 1e-12) << op.label();
  }
}

TEST(AnsatzGradient, MatchesFiniteDifferences) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  const auto h = test_support::random_hermitian(6, 30, rng);
  const auto psi0 = test_support::random_state(6, rng);
  const Objective obj(h, {{test_support::random_state(6, rng), 0.7}});
  const auto pool = generate_pool(PoolFamily::SQEB, 3, 2, PoolMode::Generalized);
  for (int t = 0; t < 10; ++t) {
    Ansatz a;
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int k = 0; k < 3; ++k) a.append(pool[pick(rng)], u(rng));
    const auto eg = ansatz_energy_and_gradient(a, obj, psi0);
    EXPECT_NEAR(eg.energy, obj.expectation(a.prepare(psi0)), 1e-12);
    auto theta = a.parameters();
    for (std::size_t k = 0; k < theta.size(); ++k) {
      const double h_step = 1e-5;
      auto plus = theta, minus = theta;
      plus[k] += h_step;
      minus[k] -= h_step;
      a.set_parameters(plus);
      const double ep = obj.expectation(a.prepare(psi0));
      a.set_parameters(minus);
      const double em = obj.expectation(a.prepare(psi0));
      a.set_parameters(theta);
      EXPECT_NEAR(eg.gradient[k], (ep - em) / (2 * h_step), 1e-7);
    }
  }
}

TEST(Ansatz, CnotCountAndParameters) {
  const auto pool = generate_pool(PoolFamily::SQEB, 2, 2, PoolMode::Restricted);
  Ansatz a;
  int expected = 0;
  for (const auto& op : pool.elements) {
    a.append(op, 0.1);
    expected += op.cnot_cost;
  }
  EXPECT_EQ(a.cnot_count(), expected);
  EXPECT_EQ(a.parameters().size(), pool.size());
  std::vector<double> wrong(pool.size() + 1, 0.0);
  EXPECT_ANY_THROW(a.set_parameters(wrong));
}
