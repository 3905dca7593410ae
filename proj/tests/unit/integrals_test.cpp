#include <gtest/gtest.h>

#include "adapt_forge/fermion.hpp"
#include "adapt_forge/integrals.hpp"
#include "test_support.hpp"

using namespace adapt_forge;

TEST(Fcidump, HeaderAndCoreEnergy) {
  const auto ints = parse_fcidump(std::string_view(
      "&FCI NORB=6,NELEC=4,MS2=0,\n ORBSYM=1,1,1,1,1,1,\n ISYM=1,\n&END\n"
      " 0.7137 0 0 0 0\n"));
  EXPECT_EQ(ints.norb(), 6u);
  EXPECT_EQ(ints.nelec(), 4);
  EXPECT_EQ(ints.ms2(), 0);
  EXPECT_EQ(ints.n_qubits(), 12u);
  EXPECT_DOUBLE_EQ(ints.e_core(), 0.7137);
}

TEST(Fcidump, RecordsFillSymmetricSlots) {
  const auto ints = parse_fcidump(std::string_view(
      "&FCI NORB=2,NELEC=2,MS2=0 /\n"
      " 0.5 1 2 1 1\n"
      " -0.25 2 1 0 0\n"));
  EXPECT_DOUBLE_EQ(ints.two_body(0, 1, 0, 0), 0.5);
  EXPECT_DOUBLE_EQ(ints.two_body(1, 0, 0, 0), 0.5);
  EXPECT_DOUBLE_EQ(ints.two_body(0, 0, 1, 0), 0.5);
  EXPECT_DOUBLE_EQ(ints.two_body(0, 0, 0, 1), 0.5);
  EXPECT_DOUBLE_EQ(ints.one_body(1, 0), -0.25);
  EXPECT_DOUBLE_EQ(ints.one_body(0, 1), -0.25);
}

TEST(Fcidump, MissingHeaderKeyIsFormatError) {
  EXPECT_THROW(parse_fcidump(std::string_view("&FCI NORB=2,MS2=0 /\n 1.0 1 1 0 0\n")),
               FormatError);
  EXPECT_THROW(parse_fcidump(std::string_view("1.0 1 1 0 0\n")), FormatError);
}

TEST(Fcidump, IndexOutOfRangeIsRangeError) {
  EXPECT_THROW(parse_fcidump(std::string_view("&FCI NORB=2,NELEC=2,MS2=0 /\n 1.0 3 1 0 0\n")),
               RangeError);
}

TEST(Fcidump, ConflictingDuplicateIsConsistencyError) {
  EXPECT_THROW(parse_fcidump(std::string_view("&FCI NORB=2,NELEC=2,MS2=0 /\n"
                                              " 1.0 1 1 0 0\n 2.0 1 1 0 0\n")),
               ConsistencyError);
  EXPECT_NO_THROW(parse_fcidump(std::string_view("&FCI NORB=2,NELEC=2,MS2=0 /\n"
                                                 " 1.0 1 2 0 0\n 1.0 2 1 0 0\n")));
}

TEST(Fcidump, FixturesLoad) {
  const auto h2 = load_fcidump(test_support::fixture("h2_0.74.fcidump"));
  EXPECT_EQ(h2.n_qubits(), 4u);
  const auto h4 = load_fcidump(test_support::fixture("h4_chain_1.0.fcidump"));
  EXPECT_EQ(h4.n_qubits(), 8u);
  const auto lih = load_fcidump(test_support::fixture("lih_1.5.fcidump"));
  EXPECT_EQ(lih.n_qubits(), 12u);
  EXPECT_EQ(lih.nelec(), 4);
}

TEST(FermionicHamiltonian, SingleOrbitalNumberOperator) {
  MolecularIntegrals ints(1, 1, 1);
  ints.set_one_body(0, 0, -0.3);
  ints.set_e_core(0.2);
  const auto h = build_fermionic_hamiltonian(ints).normal_ordered();
  FermionOperator expected = FermionOperator::identity(0.2);
  expected += FermionOperator::excitation(0, 0) * Complex(-0.3);
  expected += FermionOperator::excitation(1, 1) * Complex(-0.3);
  const auto diff = (h - expected.normal_ordered()).normal_ordered();
  EXPECT_TRUE(diff.empty()) << diff.to_string();
}

TEST(FermionicHamiltonian, ZeroIntegralsGiveConstant) {
  MolecularIntegrals ints(3, 2, 0);
  ints.set_e_core(1.25);
  const auto h = build_fermionic_hamiltonian(ints).normal_ordered();
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h.terms().begin()->first.size(), 0u);
  EXPECT_DOUBLE_EQ(h.terms().begin()->second.real(), 1.25);
}

TEST(FermionicHamiltonian, IsHermitian) {
  const auto ints = load_fcidump(test_support::fixture("h4_chain_1.0.fcidump"));
  EXPECT_TRUE(build_fermionic_hamiltonian(ints).is_hermitian());
}
