#pragma once

#include <cstddef>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace adapt_forge {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Electronic integrals over spatial orbitals, in Hartree.
///
/// Two-body integrals use chemists' notation (pq|rs) exactly as an FCIDUMP
/// stores them. Every one of the eight symmetry-equivalent slots is kept
/// populated so that lookups never need to canonicalize indices.
class MolecularIntegrals {
 public:
  MolecularIntegrals(std::size_t norb, int nelec, int ms2);

  std::size_t norb() const { return norb_; }
  int nelec() const { return nelec_; }
  int ms2() const { return ms2_; }
  std::size_t n_qubits() const { return 2 * norb_; }

  double e_core() const { return e_core_; }
  void set_e_core(double value) { e_core_ = value; }

  double one_body(std::size_t p, std::size_t q) const {
    return one_body_[p * norb_ + q];
  }
  double two_body(std::size_t p, std::size_t q, std::size_t r,
                  std::size_t s) const {
    return two_body_[((p * norb_ + q) * norb_ + r) * norb_ + s];
  }

  /// Sets h_pq and h_qp.
  void set_one_body(std::size_t p, std::size_t q, double value);
  /// Sets all eight permutations of (pq|rs).
  void set_two_body(std::size_t p, std::size_t q, std::size_t r, std::size_t s,
                    double value);

 private:
  std::size_t norb_;
  int nelec_;
  int ms2_;
  double e_core_ = 0.0;
  std::vector<double> one_body_;
  std::vector<double> two_body_;
};

/// Parses FCIDUMP text (namelist header followed by `value i j k l` records).
/// Throws FormatError, RangeError or ConsistencyError.
MolecularIntegrals parse_fcidump(std::istream& in);
MolecularIntegrals parse_fcidump(std::string_view text);
MolecularIntegrals load_fcidump(const std::string& path);

}  // namespace adapt_forge
