#include "adapt_forge/reference.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace adapt_forge {

namespace {

constexpr std::size_t kMaxQubits = 14;
constexpr std::size_t kDenseMaxQubits = 12;
constexpr std::uint64_t kEvenBits = 0x5555555555555555ULL;

using SparseMatrix = Eigen::SparseMatrix<Complex>;

struct EigenPairs {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;  // columns, in sector coordinates
};

SparseMatrix assemble(const CompiledOperator& op,
                      const std::vector<std::uint64_t>& basis) {
  std::vector<std::int64_t> position(std::size_t{1} << op.n_qubits(), -1);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    position[basis[i]] = static_cast<std::int64_t>(i);
  }
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    for (const auto& [row, value] : op.column(basis[col])) {
      const auto r = position[row];
      if (r < 0 && std::abs(value) <= 1e-10) continue;  // rounding residue
      if (r < 0) {
        throw std::invalid_argument(
            "Hamiltonian does not conserve the requested sector");
      }
      triplets.emplace_back(r, static_cast<Eigen::Index>(col), value);
    }
  }
  const auto d = static_cast<Eigen::Index>(basis.size());
  SparseMatrix m(d, d);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

EigenPairs dense_eigenpairs(const SparseMatrix& m, std::size_t k) {
  const Eigen::MatrixXcd dense(m);
  EigenPairs out;
  if (dense.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense.real());
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("dense eigensolver failed");
    }
    out.values = solver.eigenvalues().head(static_cast<Eigen::Index>(k));
    out.vectors = solver.eigenvectors()
                      .leftCols(static_cast<Eigen::Index>(k))
                      .cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense);
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("dense eigensolver failed");
    }
    out.values = solver.eigenvalues().head(static_cast<Eigen::Index>(k));
    out.vectors = solver.eigenvectors().leftCols(static_cast<Eigen::Index>(k));
  }
  return out;
}

// Restarted Lanczos (Krylov-Schur style thick restart) with full
// reorthogonalization. The start vector is deterministic.
EigenPairs lanczos_eigenpairs(const SparseMatrix& m, std::size_t k,
                              double tolerance) {
  const Eigen::Index dim = m.rows();
  const Eigen::Index nev = static_cast<Eigen::Index>(k);
  const Eigen::Index max_basis = std::min<Eigen::Index>(dim, std::max<Eigen::Index>(2 * nev + 20, 40));
  const Eigen::Index keep = std::min<Eigen::Index>(max_basis - 1, nev + 8);

  Eigen::MatrixXcd v(dim, max_basis), av(dim, max_basis);
  Eigen::Index cols = 0;

  const auto add_vector = [&](Eigen::VectorXcd w) -> bool {
    for (int pass = 0; pass < 2; ++pass) {
      if (cols > 0) w -= v.leftCols(cols) * (v.leftCols(cols).adjoint() * w);
    }
    const double nrm = w.norm();
    if (nrm < 1e-12) return false;
    v.col(cols) = w / nrm;
    av.col(cols) = m * v.col(cols);
    ++cols;
    return true;
  };

  // Smooth, nonzero overlap with every basis state.
  Eigen::VectorXcd start(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    start(i) = 1.0 + 0.1 * std::sin(static_cast<double>(i + 1));
  }
  add_vector(start);

  Eigen::VectorXd ritz_values;
  Eigen::MatrixXcd ritz_vectors;
  for (int restart = 0; restart < 10000; ++restart) {
    std::uint64_t fresh = 0;
    while (cols < max_basis) {
      if (add_vector(av.col(cols - 1))) continue;
      // Krylov space is invariant; extend with deterministic unit vectors.
      bool added = false;
      while (!added && fresh < static_cast<std::uint64_t>(dim)) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
        e(static_cast<Eigen::Index>(fresh++)) = 1.0;
        added = add_vector(e);
      }
      if (!added) break;
    }
    const Eigen::MatrixXcd t = v.leftCols(cols).adjoint() * av.leftCols(cols);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        0.5 * (t + t.adjoint()));
    ritz_values = solver.eigenvalues();
    const Eigen::MatrixXcd y = solver.eigenvectors();
    ritz_vectors = v.leftCols(cols) * y;
    const Eigen::MatrixXcd aritz = av.leftCols(cols) * y;

    Eigen::Index first_unconverged = -1;
    for (Eigen::Index i = 0; i < nev; ++i) {
      const double res =
          (aritz.col(i) - ritz_values(i) * ritz_vectors.col(i)).norm();
      if (res > tolerance * std::max(1.0, std::abs(ritz_values(i)))) {
        first_unconverged = i;
        break;
      }
    }
    if (first_unconverged < 0 || cols == dim) {
      return {ritz_values.head(nev), ritz_vectors.leftCols(nev)};
    }
    const Eigen::VectorXcd residual =
        aritz.col(first_unconverged) -
        ritz_values(first_unconverged) * ritz_vectors.col(first_unconverged);
    const Eigen::Index kept = std::min(keep, cols);
    v.leftCols(kept) = ritz_vectors.leftCols(kept);
    av.leftCols(kept) = aritz.leftCols(kept);
    cols = kept;
    add_vector(residual);
  }
  throw std::runtime_error("Lanczos eigensolver did not converge");
}

double s_squared_of(const StateVector& psi) {
  if (psi.n_qubits() % 2 != 0) return std::numeric_limits<double>::quiet_NaN();
  return expectation(s_squared_operator(psi.n_qubits()), psi);
}

}  // namespace

Eigen::MatrixXcd dense_matrix(const QubitOperator& op) {
  if (op.n_qubits() > kDenseMaxQubits) {
    throw std::invalid_argument("dense_matrix: more than 12 qubits");
  }
  const CompiledOperator compiled(op);
  const std::size_t dim = std::size_t{1} << op.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    for (const auto& [row, value] : compiled.column(col)) {
      m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += value;
    }
  }
  return m;
}

std::vector<std::uint64_t> sector_basis(std::size_t n_qubits, Sector sector) {
  const long twice_sz = std::lround(2.0 * sector.sz);
  std::vector<std::uint64_t> out;
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  for (std::uint64_t b = 0; b < dim; ++b) {
    if (std::popcount(b) != sector.n_electrons) continue;
    const long na = std::popcount(b & kEvenBits);
    const long nb = std::popcount(b & ~kEvenBits);
    if (na - nb == twice_sz) out.push_back(b);
  }
  return out;
}

std::vector<SpectrumEntry> exact_spectrum(const QubitOperator& hamiltonian,
                                          std::size_t k,
                                          std::optional<Sector> sector,
                                          const SpectrumOptions& options) {
  const std::size_t n = hamiltonian.n_qubits();
  if (n > kMaxQubits) {
    throw std::invalid_argument("exact_spectrum: " + std::to_string(n) +
                                " qubits exceeds the cap of " +
                                std::to_string(kMaxQubits));
  }
  std::vector<std::uint64_t> basis;
  if (sector) {
    basis = sector_basis(n, *sector);
  } else {
    basis.resize(std::size_t{1} << n);
    for (std::size_t i = 0; i < basis.size(); ++i) basis[i] = i;
  }
  if (k == 0 || k > basis.size()) {
    throw std::invalid_argument("exact_spectrum: k=" + std::to_string(k) +
                                " outside [1, " + std::to_string(basis.size()) +
                                "]");
  }
  const CompiledOperator op(hamiltonian);
  const SparseMatrix m = assemble(op, basis);
  const EigenPairs pairs =
      (n <= kDenseMaxQubits && !options.force_iterative)
          ? dense_eigenpairs(m, k)
          : lanczos_eigenpairs(m, k, options.residual_tolerance);

  std::vector<SpectrumEntry> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    StateVector psi(n);
    psi[0] = 0.0;
    double num = 0.0, sz = 0.0;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Complex c = pairs.vectors(static_cast<Eigen::Index>(j),
                                      static_cast<Eigen::Index>(i));
      psi[basis[j]] = c;
      const double w = std::norm(c);
      num += w * std::popcount(basis[j]);
      sz += 0.5 * w *
            (std::popcount(basis[j] & kEvenBits) -
             std::popcount(basis[j] & ~kEvenBits));
    }
    const double s2 = s_squared_of(psi);
    out.push_back({pairs.values(static_cast<Eigen::Index>(i)), num, sz, s2,
                   std::move(psi)});
  }
  return out;
}

SpectrumEntry ground_state(const QubitOperator& hamiltonian,
                           std::optional<Sector> sector) {
  return std::move(exact_spectrum(hamiltonian, 1, sector).front());
}

SpectrumEntry first_excited_singlet(const QubitOperator& hamiltonian,
                                    const QubitOperator& s_squared,
                                    std::optional<Sector> sector) {
  const std::size_t n = hamiltonian.n_qubits();
  const std::size_t dim = sector ? sector_basis(n, *sector).size()
                                 : (std::size_t{1} << n);
  std::size_t k = std::min<std::size_t>(dim, 16);
  for (;;) {
    const auto spectrum = exact_spectrum(hamiltonian, k, sector);
    std::optional<double> ground;
    for (const auto& e : spectrum) {
      const double s2 = expectation(s_squared, e.eigenvector);
      if (s2 > 1e-6) continue;
      if (!ground) {
        ground = e.eigenvalue;
      } else if (e.eigenvalue - *ground > 1e-9) {
        SpectrumEntry out = e;
        out.s_squared = s2;
        return out;
      }
    }
    if (k == dim) {
      throw std::runtime_error(ground ? "no excited singlet above the ground singlet"
                                      : "no singlet state in the spectrum");
    }
    k = std::min(dim, 2 * k);
  }
}

void write_spectrum_csv(std::ostream& out,
                        const std::vector<SpectrumEntry>& entries) {
  out << "index,eigenvalue,N,Sz,S2\n";
  char line[160];
  const auto clean = [](double x) { return std::abs(x) < 5e-7 ? 0.0 : x; };
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    std::snprintf(line, sizeof(line), "%zu,%.12g,%.6f,%.6f,%.6f\n", i,
                  e.eigenvalue, clean(e.particle_number), clean(e.sz),
                  clean(e.s_squared));
    out << line;
  }
}

}  // namespace adapt_forge
