#include <gtest/gtest.h>

#include <random>

#include "adapt_forge/fermion.hpp"
#include "adapt_forge/integrals.hpp"
#include "adapt_forge/pauli.hpp"
#include "adapt_forge/statevector.hpp"
#include "test_support.hpp"

using namespace adapt_forge;
using test_support::MatrixXcd;
using test_support::operator_dense;

namespace {

// Ladder matrices built directly from occupation-number bits, without Pauli
// algebra: a_j|b> = (-1)^{popcount(b & ((1<<j)-1))} |b ^ (1<<j)> if bit j set.
MatrixXcd annihilator(std::size_t n, std::size_t j) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  MatrixXcd m = MatrixXcd::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    if (!((b >> j) & 1)) continue;
    const int parity = __builtin_popcountll(static_cast<unsigned long long>(b) &
                                            ((1ULL << j) - 1));
    m(b ^ (Eigen::Index{1} << j), b) = parity % 2 ? -1.0 : 1.0;
  }
  return m;
}

MatrixXcd fermion_dense(const FermionOperator& f, std::size_t n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  MatrixXcd total = MatrixXcd::Zero(dim, dim);
  for (const auto& [ops, c] : f.terms()) {
    MatrixXcd m = MatrixXcd::Identity(dim, dim);
    for (const auto& op : ops) {
      const MatrixXcd a = annihilator(n, op.mode);
      m = m * (op.creation ? MatrixXcd(a.adjoint()) : a);
    }
    total += c * m;
  }
  return total;
}

FermionOperator random_fermion(std::size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<std::size_t> mode(0, n - 1);
  std::uniform_int_distribution<int> len(1, 4);
  std::uniform_real_distribution<double> u(-1, 1);
  FermionOperator f;
  for (int t = 0; t < 5; ++t) {
    LadderSequence seq;
    const int l = len(rng);
    for (int i = 0; i < l; ++i) seq.push_back({mode(rng), u(rng) > 0});
    f.add(seq, Complex(u(rng), u(rng)));
  }
  return f;
}

double expect_basis(const QubitOperator& op, std::size_t basis) {
  StateVector psi(op.n_qubits());
  psi[0] = 0;
  psi[basis] = 1;
  return expectation(op, psi);
}

QubitOperator load_h(const std::string& name) {
  const auto ints = load_fcidump(test_support::fixture(name));
  return jordan_wigner(build_fermionic_hamiltonian(ints), ints.n_qubits());
}

}  // namespace

TEST(PauliString, MultiplicationTable) {
  const PauliString x(1, {{PauliLetter::X, 0}}), y(1, {{PauliLetter::Y, 0}}),
      z(1, {{PauliLetter::Z, 0}});
  auto [ph, p] = x.multiply(y);
  EXPECT_EQ(p, z);
  EXPECT_EQ(ph, Complex(0, 1));
  std::tie(ph, p) = y.multiply(x);
  EXPECT_EQ(p, z);
  EXPECT_EQ(ph, Complex(0, -1));
  std::tie(ph, p) = z.multiply(x);
  EXPECT_EQ(p, y);
  EXPECT_EQ(ph, Complex(0, 1));
}

TEST(PauliString, SquareIsIdentity) {
  std::mt19937 rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto op = test_support::random_hermitian(5, 1, rng);
    const PauliString p = op.terms().begin()->first;
    const auto [ph, sq] = p.multiply(p);
    EXPECT_TRUE(sq.is_identity());
    EXPECT_EQ(ph, Complex(1, 0));
  }
}

TEST(PauliString, ParseAndRender) {
  const auto p = PauliString::parse(6, "X0 Y3 Z5");
  EXPECT_EQ(p.letter(0), PauliLetter::X);
  EXPECT_EQ(p.letter(3), PauliLetter::Y);
  EXPECT_EQ(p.letter(5), PauliLetter::Z);
  EXPECT_EQ(p.letter(1), PauliLetter::I);
  EXPECT_EQ(p.weight(), 3u);
  EXPECT_EQ(PauliString::parse(6, p.to_string()), p);
  EXPECT_TRUE(PauliString::parse(3, "").is_identity());
}

TEST(PauliString, CommutationMatchesDense) {
  std::mt19937 rng(5);
  for (int t = 0; t < 50; ++t) {
    const auto a = test_support::random_hermitian(3, 1, rng).terms().begin()->first;
    const auto b = test_support::random_hermitian(3, 1, rng).terms().begin()->first;
    const MatrixXcd ma = test_support::pauli_dense(a), mb = test_support::pauli_dense(b);
    const bool dense_commute = (ma * mb - mb * ma).cwiseAbs().maxCoeff() < 1e-12;
    EXPECT_EQ(a.commutes_with(b), dense_commute);
  }
}

TEST(QubitOperator, ProductMatchesDense) {
  std::mt19937 rng(7);
  for (int t = 0; t < 20; ++t) {
    const auto a = test_support::random_hermitian(3, 6, rng) * Complex(0.3, 0.7);
    const auto b = test_support::random_hermitian(3, 5, rng);
    const MatrixXcd expected = operator_dense(a) * operator_dense(b);
    EXPECT_LT((operator_dense(multiply(a, b)) - expected).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(QubitOperator, TwoQubitProductExample) {
  const auto a = QubitOperator::single(2, PauliLetter::X, 0) +
                 QubitOperator::single(2, PauliLetter::Y, 1);
  const auto b = QubitOperator::single(2, PauliLetter::X, 0) -
                 QubitOperator::single(2, PauliLetter::Y, 1);
  const auto ab = multiply(a, b);
  EXPECT_LT((operator_dense(ab) - operator_dense(a) * operator_dense(b)).cwiseAbs().maxCoeff(),
            1e-14);
}

TEST(QubitOperator, MultiplyIsAssociative) {
  std::mt19937 rng(11);
  for (int t = 0; t < 10; ++t) {
    const auto a = test_support::random_hermitian(4, 5, rng);
    const auto b = test_support::random_hermitian(4, 5, rng) * Complex(0, 1);
    const auto c = test_support::random_hermitian(4, 5, rng);
    const auto lhs = multiply(multiply(a, b), c);
    const auto rhs = multiply(a, multiply(b, c));
    auto diff = lhs - rhs;
    diff.simplify(1e-12);
    EXPECT_TRUE(diff.empty()) << diff.to_string();
  }
}

TEST(QubitOperator, MismatchedQubitCountThrows) {
  EXPECT_ANY_THROW(multiply(QubitOperator::identity(2), QubitOperator::identity(3)));
}

TEST(Commutator, Examples) {
  std::mt19937 rng(13);
  const auto a = test_support::random_hermitian(4, 8, rng);
  EXPECT_TRUE(commutator(a, a).empty());

  const auto zx = commutator(QubitOperator::single(1, PauliLetter::Z, 0),
                             QubitOperator::single(1, PauliLetter::X, 0));
  ASSERT_EQ(zx.size(), 1u);
  EXPECT_EQ(zx.coefficient(PauliString(1, {{PauliLetter::Y, 0}})), Complex(0, 2));
}

TEST(Commutator, HamiltonianConservesNumberAndSpin) {
  for (const char* name : {"h2_0.74.fcidump", "h4_chain_1.0.fcidump"}) {
    const auto h = load_h(name);
    const std::size_t n = h.n_qubits();
    auto cn = commutator(h, number_operator(n));
    auto cs = commutator(h, sz_operator(n));
    auto cs2 = commutator(h, s_squared_operator(n));
    EXPECT_TRUE(cn.simplify(1e-12).empty()) << name;
    EXPECT_TRUE(cs.simplify(1e-12).empty()) << name;
    EXPECT_TRUE(cs2.simplify(1e-12).empty()) << name;
  }
}

TEST(Commutator, SpinOperatorsCommute) {
  const std::size_t n = 6;
  const auto nn = number_operator(n), sz = sz_operator(n), s2 = s_squared_operator(n);
  EXPECT_TRUE(commutator(nn, sz).empty());
  EXPECT_TRUE(commutator(nn, s2).empty());
  EXPECT_TRUE(commutator(sz, s2).empty());
}

TEST(JordanWigner, NumberOperatorIdentity) {
  const auto q = jordan_wigner(FermionOperator::excitation(0, 0), 1);
  EXPECT_EQ(q.size(), 2u);
  EXPECT_NEAR(q.coefficient(PauliString(1)).real(), 0.5, 1e-15);
  EXPECT_NEAR(q.coefficient(PauliString(1, {{PauliLetter::Z, 0}})).real(), -0.5, 1e-15);
}

TEST(JordanWigner, HoppingExample) {
  const auto f = FermionOperator::excitation(0, 1) - FermionOperator::excitation(1, 0);
  const auto q = jordan_wigner(f, 2);
  ASSERT_EQ(q.size(), 2u);
  EXPECT_EQ(q.coefficient(PauliString::parse(2, "X0 Y1")), Complex(0, 0.5));
  EXPECT_EQ(q.coefficient(PauliString::parse(2, "Y0 X1")), Complex(0, -0.5));
  EXPECT_LT((operator_dense(q) - fermion_dense(f, 2)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(JordanWigner, MatchesLadderOracle) {
  std::mt19937 rng(17);
  for (int t = 0; t < 20; ++t) {
    const auto f = random_fermion(4, rng);
    const auto q = jordan_wigner(f, 4);
    EXPECT_LT((operator_dense(q) - fermion_dense(f, 4)).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(JordanWigner, CommutesWithAdjoint) {
  std::mt19937 rng(19);
  for (int t = 0; t < 20; ++t) {
    const auto f = random_fermion(5, rng);
    auto diff = jordan_wigner(f, 5).adjoint() - jordan_wigner(f.adjoint(), 5);
    EXPECT_TRUE(diff.simplify(1e-12).empty());
  }
}

TEST(JordanWigner, ModeBeyondRegisterThrows) {
  EXPECT_ANY_THROW(jordan_wigner(FermionOperator::excitation(0, 4), 4));
}

TEST(JordanWigner, RaiseLowerDefinitions) {
  Eigen::Matrix2cd raise;
  raise << 0, 0, 1, 0;  // |1><0|
  const MatrixXcd r = operator_dense(qubit_raise(1, 0));
  const MatrixXcd l = operator_dense(qubit_lower(1, 0));
  EXPECT_LT((r - MatrixXcd(raise)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((l - MatrixXcd(raise.adjoint())).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(SpinOperators, NumberAndSz) {
  const auto n2 = number_operator(2);
  EXPECT_EQ(n2.size(), 3u);
  EXPECT_NEAR(n2.coefficient(PauliString(2)).real(), 1.0, 1e-15);
  EXPECT_NEAR(n2.coefficient(PauliString::parse(2, "Z0")).real(), -0.5, 1e-15);
  EXPECT_NEAR(n2.coefficient(PauliString::parse(2, "Z1")).real(), -0.5, 1e-15);

  // |1100> lists n_3 n_2 n_1 n_0: qubits 2 and 3 occupied, one alpha one beta.
  EXPECT_NEAR(expect_basis(number_operator(4), 0b1100), 2.0, 1e-14);
  EXPECT_NEAR(expect_basis(sz_operator(4), 0b1100), 0.0, 1e-14);
  EXPECT_NEAR(expect_basis(sz_operator(4), 0b0101), 1.0, 1e-14);
}

TEST(SpinOperators, SSquaredExamples) {
  const auto s2 = s_squared_operator(4);
  EXPECT_TRUE(s2.is_hermitian());
  EXPECT_NEAR(expect_basis(s2, 0), 0.0, 1e-14);
  EXPECT_NEAR(expect_basis(s2, 0b0101), 2.0, 1e-14);  // both alpha orbitals

  StateVector singlet(4);
  singlet[0] = 0;
  singlet[0b1001] = 1 / std::sqrt(2.0);
  singlet[0b0110] = -1 / std::sqrt(2.0);
  const test_support::VectorXcd v = test_support::to_eigen(singlet);
  const double dense = (v.adjoint() * operator_dense(s2) * v)(0).real();
  EXPECT_NEAR(dense, 0.0, 1e-14);
  EXPECT_NEAR(expectation(s2, singlet), 0.0, 1e-14);
}

TEST(SpinOperators, OddQubitCountThrows) {
  EXPECT_ANY_THROW(number_operator(3));
  EXPECT_ANY_THROW(sz_operator(5));
  EXPECT_ANY_THROW(s_squared_operator(1));
}

TEST(QubitOperator, HermiticityChecks) {
  const auto h = load_h("h2_0.74.fcidump");
  EXPECT_TRUE(h.is_hermitian());
  EXPECT_FALSE(h.is_anti_hermitian());
  EXPECT_TRUE((h * Complex(0, 1)).is_anti_hermitian());
  EXPECT_EQ(h.size(), 15u);
}
