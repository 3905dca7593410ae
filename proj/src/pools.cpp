#include "adapt_forge/pools.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>
#include <stdexcept>

namespace adapt_forge {

namespace {

void require_arity(OperatorKind kind, const std::vector<std::size_t>& idx) {
  const std::size_t want = is_two_body(kind) ? 4 : 2;
  if (idx.size() != want) {
    throw std::invalid_argument(std::string(to_string(kind)) + " needs " +
                                std::to_string(want) + " indices");
  }
}

void require_distinct(OperatorKind kind, const std::vector<std::size_t>& idx) {
  std::vector<std::size_t> sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument(std::string(to_string(kind)) +
                                ": repeated spin-orbital index");
  }
}

// Q†_p Q†_q Q_r Q_s - h.c.
QubitOperator qubit_double(std::size_t n, std::size_t p, std::size_t q,
                           std::size_t r, std::size_t s) {
  const QubitOperator up = qubit_raise(n, p) * qubit_raise(n, q) *
                           qubit_lower(n, r) * qubit_lower(n, s);
  QubitOperator g = up - up.adjoint();
  g.simplify();
  return g;
}

FermionOperator fermion_double(std::size_t p, std::size_t q, std::size_t r,
                               std::size_t s) {
  const FermionOperator e = FermionOperator::excitation(p, q, r, s);
  return e - e.adjoint();
}

}  // namespace

std::string_view to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::FEB1: return "FEB1";
    case OperatorKind::FEB2: return "FEB2";
    case OperatorKind::QEB1: return "QEB1";
    case OperatorKind::QEB2: return "QEB2";
    case OperatorKind::SQEB2: return "SQEB2";
    case OperatorKind::SFEB2: return "SFEB2";
  }
  return "?";
}

std::string_view to_string(PoolFamily family) {
  switch (family) {
    case PoolFamily::FEB: return "feb";
    case PoolFamily::QEB: return "qeb";
    case PoolFamily::SQEB: return "sqeb";
    case PoolFamily::SFEB: return "sfeb";
  }
  return "?";
}

std::string_view to_string(PoolMode mode) {
  return mode == PoolMode::Restricted ? "restricted" : "generalized";
}

OperatorKind parse_operator_kind(std::string_view text) {
  for (auto k : {OperatorKind::FEB1, OperatorKind::FEB2, OperatorKind::QEB1,
                 OperatorKind::QEB2, OperatorKind::SQEB2, OperatorKind::SFEB2}) {
    if (to_string(k) == text) return k;
  }
  throw std::invalid_argument("unknown operator kind '" + std::string(text) +
                              "'");
}

PoolFamily parse_pool_family(std::string_view text) {
  for (auto f :
       {PoolFamily::FEB, PoolFamily::QEB, PoolFamily::SQEB, PoolFamily::SFEB}) {
    if (to_string(f) == text) return f;
  }
  throw std::invalid_argument("unknown pool '" + std::string(text) +
                              "' (expected feb, qeb, sqeb or sfeb)");
}

PoolMode parse_pool_mode(std::string_view text) {
  if (text == "restricted") return PoolMode::Restricted;
  if (text == "generalized") return PoolMode::Generalized;
  throw std::invalid_argument("unknown pool mode '" + std::string(text) + "'");
}

std::string PoolOperator::label() const {
  std::string out(to_string(kind));
  out += '(';
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(indices[i]);
  }
  return out + ')';
}

std::string OperatorPool::dump() const {
  std::ostringstream os;
  for (const auto& op : elements) {
    os << to_string(op.kind);
    for (auto i : op.indices) os << ' ' << i;
    os << ' ' << op.cnot_cost << '\n';
  }
  return os.str();
}

QubitOperator build_generator(OperatorKind kind,
                              const std::vector<std::size_t>& indices,
                              std::size_t n_qubits) {
  require_arity(kind, indices);
  require_distinct(kind, indices);
  for (auto i : indices) {
    if (i >= n_qubits) {
      throw std::out_of_range(std::string(to_string(kind)) + ": index " +
                              std::to_string(i) + " >= " +
                              std::to_string(n_qubits) + " qubits");
    }
  }
  const std::size_t n = n_qubits;
  switch (kind) {
    case OperatorKind::QEB1: {
      const std::size_t p = indices[0], q = indices[1];
      const QubitOperator up = qubit_raise(n, p) * qubit_lower(n, q);
      QubitOperator g = up - up.adjoint();
      return g.simplify();
    }
    case OperatorKind::QEB2:
      return qubit_double(n, indices[0], indices[1], indices[2], indices[3]);
    case OperatorKind::SQEB2: {
      const auto [p, q, r, s] =
          std::tuple{indices[0], indices[1], indices[2], indices[3]};
      QubitOperator g = qubit_double(n, p, q, r, s) + qubit_double(n, q, r, s, p);
      return g.simplify();
    }
    case OperatorKind::FEB1: {
      const FermionOperator e = FermionOperator::excitation(indices[0], indices[1]);
      return jordan_wigner(e - e.adjoint(), n);
    }
    case OperatorKind::FEB2:
      return jordan_wigner(
          fermion_double(indices[0], indices[1], indices[2], indices[3]), n);
    case OperatorKind::SFEB2: {
      const auto [p, q, r, s] =
          std::tuple{indices[0], indices[1], indices[2], indices[3]};
      return jordan_wigner(fermion_double(p, q, r, s) + fermion_double(q, r, s, p),
                           n);
    }
  }
  throw std::invalid_argument("unknown operator kind");
}

bool symmetry_admissible(OperatorKind kind,
                         const std::vector<std::size_t>& indices) {
  require_arity(kind, indices);
  if (!is_two_body(kind)) return spin_of(indices[0]) == spin_of(indices[1]);
  const int sp = spin_of(indices[0]), sq = spin_of(indices[1]),
            sr = spin_of(indices[2]), ss = spin_of(indices[3]);
  const bool pair_balance = sp + sq == sr + ss;
  if (kind == OperatorKind::QEB2 || kind == OperatorKind::FEB2) {
    return pair_balance;
  }
  // Both blocks of the simplified operators must conserve Sz; the two stated
  // forms of the condition are equivalent.
  const bool both_blocks = pair_balance && (sp + ss == sq + sr);
  const bool paired = (sp == sr) && (sq == ss);
  if (both_blocks != paired) {
    throw std::logic_error("inconsistent sQEB spin conditions");
  }
  return both_blocks;
}

int cnot_cost(OperatorKind kind, const std::vector<std::size_t>& indices) {
  require_arity(kind, indices);
  const auto at = [&](std::size_t i) {
    return static_cast<long>(indices[i]);
  };
  switch (kind) {
    case OperatorKind::QEB1: return 2;
    case OperatorKind::QEB2: return 13;
    case OperatorKind::SQEB2: return 9;
    case OperatorKind::FEB1: return static_cast<int>(2 * std::labs(at(0) - at(1)) + 1);
    case OperatorKind::FEB2:
      return static_cast<int>(2 * std::labs(at(1) + at(3) - at(0) - at(2)) + 9);
    case OperatorKind::SFEB2:
      return static_cast<int>(2 * std::labs(at(1) + at(3) - at(0) - at(2)) + 9 - 4);
  }
  return 0;
}

std::vector<std::size_t> canonical_indices(
    OperatorKind kind, const std::vector<std::size_t>& idx) {
  require_arity(kind, idx);
  if (!is_two_body(kind)) {
    return {std::min(idx[0], idx[1]), std::max(idx[0], idx[1])};
  }
  const std::size_t p = idx[0], q = idx[1], r = idx[2], s = idx[3];
  if (kind == OperatorKind::QEB2 || kind == OperatorKind::FEB2) {
    // κ^{pq}_{rs} = κ^{qp}_{rs} = κ^{pq}_{sr} = -κ^{rs}_{pq}
    std::vector<std::size_t> a{std::min(p, q), std::max(p, q)};
    std::vector<std::size_t> b{std::min(r, s), std::max(r, s)};
    if (b < a) std::swap(a, b);
    return {a[0], a[1], b[0], b[1]};
  }
  // τ^{pq}_{rs} = τ^{rq}_{ps} = -τ^{ps}_{rq} = -τ^{rs}_{pq}
  const std::vector<std::vector<std::size_t>> orbit{
      {p, q, r, s}, {r, q, p, s}, {p, s, r, q}, {r, s, p, q}};
  return *std::min_element(orbit.begin(), orbit.end());
}

PoolOperator make_pool_operator(OperatorKind kind,
                                std::vector<std::size_t> indices,
                                std::size_t n_qubits) {
  PoolOperator op{kind, indices, build_generator(kind, indices, n_qubits),
                  cnot_cost(kind, indices)};
  return op;
}

OperatorKind singles_kind(PoolFamily family) {
  return (family == PoolFamily::FEB || family == PoolFamily::SFEB)
             ? OperatorKind::FEB1
             : OperatorKind::QEB1;
}

OperatorKind doubles_kind(PoolFamily family) {
  switch (family) {
    case PoolFamily::FEB: return OperatorKind::FEB2;
    case PoolFamily::QEB: return OperatorKind::QEB2;
    case PoolFamily::SQEB: return OperatorKind::SQEB2;
    case PoolFamily::SFEB: return OperatorKind::SFEB2;
  }
  throw std::invalid_argument("unknown pool family");
}

OperatorPool generate_pool(PoolFamily family, std::size_t norb,
                           std::size_t nelec, PoolMode mode) {
  if (nelec > 2 * norb) {
    throw std::invalid_argument("generate_pool: nelec exceeds 2*norb");
  }
  const std::size_t n = 2 * norb;
  const OperatorKind single = singles_kind(family);
  const OperatorKind dbl = doubles_kind(family);

  std::vector<std::size_t> occ, virt, all;
  for (std::size_t i = 0; i < n; ++i) {
    (i < nelec ? occ : virt).push_back(i);
    all.push_back(i);
  }
  const auto& left = mode == PoolMode::Restricted ? occ : all;
  const auto& right = mode == PoolMode::Restricted ? virt : all;

  std::set<std::vector<std::size_t>> singles, doubles;
  for (auto i : left) {
    for (auto a : right) {
      if (i == a) continue;
      const std::vector<std::size_t> idx{i, a};
      if (symmetry_admissible(single, idx)) {
        singles.insert(canonical_indices(single, idx));
      }
    }
  }
  for (auto p : left) {
    for (auto q : left) {
      if (q == p) continue;
      for (auto r : right) {
        if (r == p || r == q) continue;
        for (auto s : right) {
          if (s == p || s == q || s == r) continue;
          const std::vector<std::size_t> idx{p, q, r, s};
          if (symmetry_admissible(dbl, idx)) {
            doubles.insert(canonical_indices(dbl, idx));
          }
        }
      }
    }
  }

  OperatorPool pool{{}, family, mode};
  pool.elements.reserve(singles.size() + doubles.size());
  for (const auto& idx : singles) {
    pool.elements.push_back(make_pool_operator(single, idx, n));
  }
  for (const auto& idx : doubles) {
    pool.elements.push_back(make_pool_operator(dbl, idx, n));
  }
  return pool;
}

}  // namespace adapt_forge
