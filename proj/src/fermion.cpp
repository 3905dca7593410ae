#include "adapt_forge/fermion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace adapt_forge {

namespace {

constexpr double kIntegralThreshold = 1e-12;

// Returns true when `left` must move to the right of `right`.
bool out_of_order(const LadderOp& left, const LadderOp& right) {
  if (left.creation != right.creation) return !left.creation;
  return right.mode > left.mode;
}

}  // namespace

FermionOperator FermionOperator::identity(Complex coeff) {
  return term({}, coeff);
}

FermionOperator FermionOperator::term(LadderSequence ops, Complex coeff) {
  FermionOperator f;
  f.add(ops, coeff);
  return f;
}

FermionOperator FermionOperator::excitation(std::size_t p, std::size_t q) {
  return term({{p, true}, {q, false}});
}

FermionOperator FermionOperator::excitation(std::size_t p, std::size_t q,
                                            std::size_t r, std::size_t s) {
  return term({{p, true}, {q, true}, {r, false}, {s, false}});
}

void FermionOperator::add(const LadderSequence& ops, Complex coeff) {
  if (coeff == Complex{}) return;
  auto [it, inserted] = terms_.try_emplace(ops, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == Complex{}) terms_.erase(it);
  }
}

FermionOperator& FermionOperator::operator+=(const FermionOperator& other) {
  for (const auto& [ops, c] : other.terms_) add(ops, c);
  return *this;
}

FermionOperator& FermionOperator::operator-=(const FermionOperator& other) {
  for (const auto& [ops, c] : other.terms_) add(ops, -c);
  return *this;
}

FermionOperator& FermionOperator::operator*=(Complex scale) {
  if (scale == Complex{}) {
    terms_.clear();
    return *this;
  }
  for (auto& [ops, c] : terms_) c *= scale;
  return *this;
}

FermionOperator operator*(const FermionOperator& a, const FermionOperator& b) {
  FermionOperator out;
  for (const auto& [ops_a, ca] : a.terms_) {
    for (const auto& [ops_b, cb] : b.terms_) {
      LadderSequence joined = ops_a;
      joined.insert(joined.end(), ops_b.begin(), ops_b.end());
      out.add(joined, ca * cb);
    }
  }
  return out;
}

FermionOperator FermionOperator::adjoint() const {
  FermionOperator out;
  for (const auto& [ops, c] : terms_) {
    LadderSequence rev(ops.rbegin(), ops.rend());
    for (auto& op : rev) op.creation = !op.creation;
    out.add(rev, std::conj(c));
  }
  return out;
}

FermionOperator FermionOperator::normal_ordered(double threshold) const {
  FermionOperator out;
  std::vector<std::pair<LadderSequence, Complex>> work(terms_.begin(),
                                                       terms_.end());
  while (!work.empty()) {
    auto [ops, coeff] = std::move(work.back());
    work.pop_back();
    bool vanished = false;
    for (std::size_t i = 1; i < ops.size() && !vanished; ++i) {
      for (std::size_t j = i; j > 0; --j) {
        const LadderOp left = ops[j - 1];
        const LadderOp right = ops[j];
        if (left.creation == right.creation && left.mode == right.mode) {
          vanished = true;
          break;
        }
        if (!out_of_order(left, right)) break;
        if (!left.creation && right.creation && left.mode == right.mode) {
          // a_p a†_p = 1 - a†_p a_p
          LadderSequence contracted;
          contracted.reserve(ops.size() - 2);
          contracted.insert(contracted.end(), ops.begin(), ops.begin() + (j - 1));
          contracted.insert(contracted.end(), ops.begin() + (j + 1), ops.end());
          work.emplace_back(std::move(contracted), coeff);
        }
        std::swap(ops[j - 1], ops[j]);
        coeff = -coeff;
      }
    }
    if (!vanished) out.add(ops, coeff);
  }
  FermionOperator cleaned;
  for (const auto& [ops, c] : out.terms_) {
    if (std::abs(c) >= threshold) cleaned.terms_.emplace(ops, c);
  }
  return cleaned;
}

bool FermionOperator::is_hermitian(double tol) const {
  const FermionOperator diff = (*this - adjoint()).normal_ordered(0.0);
  for (const auto& [ops, c] : diff.terms_) {
    if (std::abs(c) > tol) return false;
  }
  return true;
}

std::size_t FermionOperator::mode_count() const {
  std::size_t n = 0;
  for (const auto& [ops, c] : terms_) {
    for (const auto& op : ops) n = std::max(n, op.mode + 1);
  }
  return n;
}

std::string FermionOperator::to_string() const {
  std::ostringstream os;
  os.precision(12);
  for (const auto& [ops, c] : terms_) {
    os << c;
    for (const auto& op : ops) os << ' ' << op.mode << (op.creation ? "^" : "");
    os << '\n';
  }
  return os.str();
}

FermionOperator build_fermionic_hamiltonian(const MolecularIntegrals& ints) {
  const std::size_t n = ints.norb();
  FermionOperator h;
  h.add({}, ints.e_core());

  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      const double hpq = ints.one_body(p, q);
      if (std::abs(hpq) < kIntegralThreshold) continue;
      for (int sigma = 0; sigma < 2; ++sigma) {
        h.add({{spin_orbital(p, sigma), true}, {spin_orbital(q, sigma), false}},
              hpq);
      }
    }
  }

  // (pq|rs) couples a†_{p,σ} a_{q,σ} with a†_{r,τ} a_{s,τ}:
  // ½ (pq|rs) a†_{pσ} a†_{rτ} a_{sτ} a_{qσ}.
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t s = 0; s < n; ++s) {
          const double v = ints.two_body(p, q, r, s);
          if (std::abs(v) < kIntegralThreshold) continue;
          for (int sigma = 0; sigma < 2; ++sigma) {
            for (int tau = 0; tau < 2; ++tau) {
              const std::size_t P = spin_orbital(p, sigma);
              const std::size_t Q = spin_orbital(q, sigma);
              const std::size_t R = spin_orbital(r, tau);
              const std::size_t S = spin_orbital(s, tau);
              if (P == R || Q == S) continue;
              h.add({{P, true}, {R, true}, {S, false}, {Q, false}}, 0.5 * v);
            }
          }
        }
      }
    }
  }
  return h;
}

}  // namespace adapt_forge
