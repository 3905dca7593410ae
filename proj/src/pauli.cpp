#include "adapt_forge/pauli.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace adapt_forge {

namespace {

const Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": qubit-count mismatch (" +
                                std::to_string(a) + " vs " + std::to_string(b) +
                                ")");
  }
}

}  // namespace

PauliString::PauliString(std::size_t n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits > kMaxQubits) {
    throw std::invalid_argument("PauliString supports at most 64 qubits");
  }
}

PauliString::PauliString(std::size_t n_qubits, std::uint64_t x, std::uint64_t z)
    : PauliString(n_qubits) {
  const std::uint64_t mask =
      n_qubits == 64 ? ~0ULL : ((1ULL << n_qubits) - 1ULL);
  if ((x & ~mask) || (z & ~mask)) {
    throw std::out_of_range("Pauli mask exceeds qubit count");
  }
  x_ = x;
  z_ = z;
}

PauliString::PauliString(
    std::size_t n_qubits,
    std::initializer_list<std::pair<PauliLetter, std::size_t>> ops)
    : PauliString(n_qubits) {
  for (const auto& [letter, qubit] : ops) set(qubit, letter);
}

PauliString PauliString::parse(std::size_t n_qubits, const std::string& text) {
  PauliString p(n_qubits);
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "I") continue;
    PauliLetter letter;
    switch (tok[0]) {
      case 'X': letter = PauliLetter::X; break;
      case 'Y': letter = PauliLetter::Y; break;
      case 'Z': letter = PauliLetter::Z; break;
      default: throw std::invalid_argument("bad Pauli token '" + tok + "'");
    }
    const std::size_t q = std::stoul(tok.substr(1));
    if (p.letter(q) != PauliLetter::I) {
      throw std::invalid_argument("qubit repeated in Pauli string: " + text);
    }
    p.set(q, letter);
  }
  return p;
}

PauliLetter PauliString::letter(std::size_t qubit) const {
  const unsigned bits =
      static_cast<unsigned>((x_ >> qubit) & 1ULL) |
      (static_cast<unsigned>((z_ >> qubit) & 1ULL) << 1);
  return static_cast<PauliLetter>(bits);
}

void PauliString::set(std::size_t qubit, PauliLetter letter) {
  if (qubit >= n_qubits_) {
    throw std::out_of_range("qubit " + std::to_string(qubit) +
                            " outside Pauli string of " +
                            std::to_string(n_qubits_) + " qubits");
  }
  const std::uint64_t bit = 1ULL << qubit;
  const auto v = static_cast<unsigned>(letter);
  x_ = (v & 1U) ? (x_ | bit) : (x_ & ~bit);
  z_ = (v & 2U) ? (z_ | bit) : (z_ & ~bit);
}

std::size_t PauliString::weight() const {
  return static_cast<std::size_t>(std::popcount(x_ | z_));
}

bool PauliString::commutes_with(const PauliString& other) const {
  const int anti = std::popcount(x_ & other.z_) + std::popcount(z_ & other.x_);
  return anti % 2 == 0;
}

std::pair<Complex, PauliString> PauliString::multiply(
    const PauliString& other) const {
  require_same_size(n_qubits_, other.n_qubits_, "PauliString::multiply");
  // With P = i^{|x&z|} X^x Z^z, the product picks up (-1)^{|z1&x2|} from
  // moving Z^{z1} past X^{x2}.
  const std::uint64_t x = x_ ^ other.x_;
  const std::uint64_t z = z_ ^ other.z_;
  const int exponent = std::popcount(x_ & z_) + std::popcount(other.x_ & other.z_) -
                       std::popcount(x & z) + 2 * std::popcount(z_ & other.x_);
  PauliString product(n_qubits_);
  product.x_ = x;
  product.z_ = z;
  return {kIPowers[((exponent % 4) + 4) % 4], product};
}

std::string PauliString::to_string() const {
  std::string out;
  for (std::size_t q = 0; q < n_qubits_; ++q) {
    const PauliLetter l = letter(q);
    if (l == PauliLetter::I) continue;
    if (!out.empty()) out += ' ';
    out += "IXZY"[static_cast<int>(l)];
    out += std::to_string(q);
  }
  return out.empty() ? "I" : out;
}

QubitOperator::QubitOperator(const PauliString& p, Complex coeff)
    : n_qubits_(p.n_qubits()) {
  add(p, coeff);
}

QubitOperator QubitOperator::identity(std::size_t n_qubits, Complex coeff) {
  return QubitOperator(PauliString(n_qubits), coeff);
}

QubitOperator QubitOperator::single(std::size_t n_qubits, PauliLetter letter,
                                    std::size_t qubit, Complex coeff) {
  PauliString p(n_qubits);
  p.set(qubit, letter);
  return QubitOperator(p, coeff);
}

Complex QubitOperator::coefficient(const PauliString& p) const {
  const auto it = terms_.find(p);
  return it == terms_.end() ? Complex{} : it->second;
}

void QubitOperator::add(const PauliString& p, Complex coeff) {
  require_same_size(n_qubits_, p.n_qubits(), "QubitOperator::add");
  if (coeff == Complex{}) return;
  auto [it, inserted] = terms_.try_emplace(p, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == Complex{}) terms_.erase(it);
  }
}

QubitOperator& QubitOperator::simplify(double threshold) {
  std::erase_if(terms_, [threshold](const auto& kv) {
    return std::abs(kv.second) < threshold;
  });
  return *this;
}

QubitOperator& QubitOperator::operator+=(const QubitOperator& other) {
  require_same_size(n_qubits_, other.n_qubits_, "QubitOperator::+");
  for (const auto& [p, c] : other.terms_) add(p, c);
  return *this;
}

QubitOperator& QubitOperator::operator-=(const QubitOperator& other) {
  require_same_size(n_qubits_, other.n_qubits_, "QubitOperator::-");
  for (const auto& [p, c] : other.terms_) add(p, -c);
  return *this;
}

QubitOperator& QubitOperator::operator*=(Complex scale) {
  if (scale == Complex{}) {
    terms_.clear();
    return *this;
  }
  for (auto& [p, c] : terms_) c *= scale;
  return *this;
}

QubitOperator operator*(const QubitOperator& a, const QubitOperator& b) {
  require_same_size(a.n_qubits_, b.n_qubits_, "multiply");
  QubitOperator out(a.n_qubits_);
  for (const auto& [pa, ca] : a.terms_) {
    for (const auto& [pb, cb] : b.terms_) {
      const auto [phase, prod] = pa.multiply(pb);
      out.add(prod, phase * ca * cb);
    }
  }
  return out;
}

QubitOperator multiply(const QubitOperator& a, const QubitOperator& b) {
  QubitOperator out = a * b;
  out.simplify();
  return out;
}

QubitOperator commutator(const QubitOperator& a, const QubitOperator& b) {
  require_same_size(a.n_qubits(), b.n_qubits(), "commutator");
  QubitOperator out(a.n_qubits());
  // Commuting string pairs cancel exactly; anticommuting pairs contribute
  // twice their product.
  for (const auto& [pa, ca] : a.terms()) {
    for (const auto& [pb, cb] : b.terms()) {
      if (pa.commutes_with(pb)) continue;
      const auto [phase, prod] = pa.multiply(pb);
      out.add(prod, 2.0 * phase * ca * cb);
    }
  }
  out.simplify();
  return out;
}

QubitOperator QubitOperator::adjoint() const {
  QubitOperator out(n_qubits_);
  for (const auto& [p, c] : terms_) out.terms_.emplace(p, std::conj(c));
  return out;
}

bool QubitOperator::is_hermitian(double tol) const {
  for (const auto& [p, c] : terms_) {
    if (std::abs(c.imag()) > tol) return false;
  }
  return true;
}

bool QubitOperator::is_anti_hermitian(double tol) const {
  for (const auto& [p, c] : terms_) {
    if (std::abs(c.real()) > tol) return false;
  }
  return true;
}

double QubitOperator::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [p, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

std::vector<PauliString> QubitOperator::support() const {
  std::vector<PauliString> out;
  out.reserve(terms_.size());
  for (const auto& [p, c] : terms_) {
    if (c != Complex{}) out.push_back(p);
  }
  return out;
}

std::string QubitOperator::to_string() const {
  std::ostringstream os;
  os.precision(12);
  for (const auto& [p, c] : terms_) {
    if (c.imag() == 0.0) {
      os << c.real();
    } else if (c.real() == 0.0) {
      os << c.imag() << 'j';
    } else {
      os << '(' << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "j)";
    }
    os << " * " << p.to_string() << '\n';
  }
  return os.str();
}

QubitOperator qubit_raise(std::size_t n_qubits, std::size_t qubit) {
  return QubitOperator::single(n_qubits, PauliLetter::X, qubit, 0.5) +
         QubitOperator::single(n_qubits, PauliLetter::Y, qubit, {0.0, -0.5});
}

QubitOperator qubit_lower(std::size_t n_qubits, std::size_t qubit) {
  return QubitOperator::single(n_qubits, PauliLetter::X, qubit, 0.5) +
         QubitOperator::single(n_qubits, PauliLetter::Y, qubit, {0.0, 0.5});
}

QubitOperator jordan_wigner(const FermionOperator& f, std::size_t n_qubits) {
  if (n_qubits > PauliString::kMaxQubits) {
    throw std::invalid_argument("jordan_wigner: too many qubits");
  }
  std::vector<QubitOperator> creation(n_qubits), annihilation(n_qubits);
  for (std::size_t j = 0; j < n_qubits; ++j) {
    const std::uint64_t parity = (1ULL << j) - 1ULL;
    const PauliString zx(n_qubits, 1ULL << j, parity);
    const PauliString zy(n_qubits, 1ULL << j, parity | (1ULL << j));
    creation[j] = QubitOperator(zx, 0.5);
    creation[j].add(zy, {0.0, -0.5});
    annihilation[j] = QubitOperator(zx, 0.5);
    annihilation[j].add(zy, {0.0, 0.5});
  }
  QubitOperator out(n_qubits);
  for (const auto& [ops, coeff] : f.terms()) {
    QubitOperator term = QubitOperator::identity(n_qubits, coeff);
    for (const auto& op : ops) {
      if (op.mode >= n_qubits) {
        throw std::out_of_range("jordan_wigner: mode " +
                                std::to_string(op.mode) + " >= " +
                                std::to_string(n_qubits) + " qubits");
      }
      term = term * (op.creation ? creation[op.mode] : annihilation[op.mode]);
    }
    out += term;
  }
  out.simplify();
  return out;
}

namespace {

void require_even(std::size_t n_qubits, const char* what) {
  if (n_qubits % 2 != 0) {
    throw std::invalid_argument(std::string(what) +
                                " requires an even number of qubits");
  }
}

}  // namespace

QubitOperator number_operator(std::size_t n_qubits) {
  require_even(n_qubits, "number_operator");
  QubitOperator n = QubitOperator::identity(n_qubits, 0.5 * n_qubits);
  for (std::size_t j = 0; j < n_qubits; ++j) {
    n += QubitOperator::single(n_qubits, PauliLetter::Z, j, -0.5);
  }
  n.simplify();
  return n;
}

QubitOperator sz_operator(std::size_t n_qubits) {
  require_even(n_qubits, "sz_operator");
  QubitOperator sz(n_qubits);
  for (std::size_t p = 0; p < n_qubits / 2; ++p) {
    // ½(n_alpha - n_beta) = ¼(Z_beta - Z_alpha)
    sz += QubitOperator::single(n_qubits, PauliLetter::Z, 2 * p, -0.25);
    sz += QubitOperator::single(n_qubits, PauliLetter::Z, 2 * p + 1, 0.25);
  }
  sz.simplify();
  return sz;
}

QubitOperator s_squared_operator(std::size_t n_qubits) {
  require_even(n_qubits, "s_squared_operator");
  FermionOperator raise;
  for (std::size_t p = 0; p < n_qubits / 2; ++p) {
    raise += FermionOperator::excitation(spin_orbital(p, 0), spin_orbital(p, 1));
  }
  const QubitOperator s_plus = jordan_wigner(raise, n_qubits);
  const QubitOperator s_minus = s_plus.adjoint();
  const QubitOperator sz = sz_operator(n_qubits);
  QubitOperator s2 = s_minus * s_plus;
  s2 += sz * (sz + QubitOperator::identity(n_qubits));
  s2.simplify();
  return s2;
}

}  // namespace adapt_forge
