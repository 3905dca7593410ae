#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "adapt_forge/adapt.hpp"
#include "adapt_forge/fermion.hpp"
#include "adapt_forge/integrals.hpp"
#include "adapt_forge/reference.hpp"
#include "test_support.hpp"

using namespace adapt_forge;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Fixture {
  QubitOperator h;
  std::size_t norb;
  StateVector hf;
};

Fixture load(const std::string& name) {
  const auto ints = load_fcidump(test_support::fixture(name));
  std::vector<std::size_t> occ;
  for (int i = 0; i < ints.nelec(); ++i) occ.push_back(static_cast<std::size_t>(i));
  return {jordan_wigner(build_fermionic_hamiltonian(ints), ints.n_qubits()), ints.norb(),
          reference_state(ints.n_qubits(), occ)};
}

// Dense oracle for <psi|e^{-θτ} O e^{θτ}|psi>.
double direct_energy(const QubitOperator& o, const QubitOperator& tau, double theta,
                     const StateVector& psi) {
  const test_support::VectorXcd v = test_support::expm(tau, theta) * test_support::to_eigen(psi);
  return (v.adjoint() * test_support::operator_dense(o) * v)(0).real();
}

}  // namespace

TEST(ThetaCoeffs, ReconstructionMatchesDirectEvaluation) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  const auto fx = load("h4_chain_1.0.fcidump");
  const Objective obj(fx.h);
  const auto psi = test_support::random_state(8, rng);
  for (auto family : {PoolFamily::QEB, PoolFamily::SQEB, PoolFamily::FEB, PoolFamily::SFEB}) {
    const auto pool = generate_pool(family, fx.norb, 4, PoolMode::Restricted);
    for (std::size_t k = 0; k < pool.size(); k += 5) {
      const auto c = theta_energy_coeffs(pool[k], obj, psi);
      EXPECT_NEAR(c.energy(0), obj.expectation(psi), 1e-10);
      EXPECT_NEAR(c.derivative(0), residual_gradient(pool[k], obj, psi), 1e-10);
      for (int t = 0; t < 5; ++t) {
        const double theta = u(rng);
        EXPECT_NEAR(c.energy(theta), direct_energy(fx.h, pool[k].generator, theta, psi), 1e-10)
            << pool[k].label();
      }
    }
  }
}

TEST(ThetaCoeffs, DerivativesMatchFiniteDifferences) {
  const ThetaEnergyCoeffs c{0.3, -0.2, 0.7, 0.1, -0.4};
  const double h = 1e-5;
  for (double t : {-2.0, 0.0, 0.4, 1.9}) {
    EXPECT_NEAR(c.derivative(t), (c.energy(t + h) - c.energy(t - h)) / (2 * h), 1e-9);
    EXPECT_NEAR(c.second_derivative(t), (c.derivative(t + h) - c.derivative(t - h)) / (2 * h),
                1e-8);
  }
}

TEST(ThetaCoeffs, RejectsHermitianGenerator) {
  const auto fx = load("h2_0.74.fcidump");
  PoolOperator bad = make_pool_operator(OperatorKind::QEB2, {0, 1, 2, 3}, 4);
  bad.generator = bad.generator * Complex(0, 1);
  EXPECT_ANY_THROW(theta_energy_coeffs(bad, Objective(fx.h), fx.hf));
}

TEST(ThetaCoeffs, PauliSpecialCase) {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  const auto fx = load("h2_0.74.fcidump");
  const Objective obj(fx.h);
  const auto psi = test_support::random_state(4, rng);
  for (const char* s : {"X0 Y1", "Y0 X1 X2 X3", "Y2", "Z0 Y3"}) {
    const auto p = PauliString::parse(4, s);
    const auto c = pauli_theta_energy_coeffs(p, obj, psi);
    EXPECT_EQ(c.f1, 0.0);
    EXPECT_EQ(c.f3, 0.0);
    const QubitOperator tau(p, Complex(0, 1));
    for (int t = 0; t < 10; ++t) {
      const double theta = u(rng);
      EXPECT_NEAR(c.energy(theta), direct_energy(fx.h, tau, theta, psi), 1e-10) << s;
    }
    // τHτ has exactly H's Pauli support.
    const auto tht = multiply(multiply(tau, fx.h), tau);
    EXPECT_EQ(tht.support(), fx.h.support()) << s;
  }
  QubitOperator two(4);
  two.add(PauliString::parse(4, "X0"), 1.0);
  two.add(PauliString::parse(4, "X1"), 1.0);
  EXPECT_THROW(pauli_theta_energy_coeffs(two, obj, psi), std::invalid_argument);
}

TEST(MinimizeTheta, Examples) {
  const auto m = minimize_theta({0, 0, 0, 0, 1});
  EXPECT_NEAR(m.energy, -1.0, 1e-14);
  EXPECT_NEAR(std::abs(m.theta), kPi / 2, 1e-10);

  const auto flat = minimize_theta({0.25, 0, 0, 0, 0});
  EXPECT_EQ(flat.energy, 0.25);
  EXPECT_EQ(flat.theta, 0.0);
}

TEST(MinimizeTheta, BeatsDenseScan) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 100; ++t) {
    const ThetaEnergyCoeffs c{u(rng), u(rng), u(rng), u(rng), u(rng)};
    const auto m = minimize_theta(c);
    EXPECT_GE(m.theta, -kPi);
    EXPECT_LT(m.theta, kPi);
    EXPECT_NEAR(m.energy, c.energy(m.theta), 1e-14);
    double best = 1e9;
    for (int k = 0; k < 200000; ++k) best = std::min(best, c.energy(-kPi + 2 * kPi * k / 200000));
    EXPECT_LE(m.energy, best + 1e-12);
  }
}

TEST(ResidualGradient, VanishesAtEigenstate) {
  const auto fx = load("h2_0.74.fcidump");
  const auto g = ground_state(fx.h, Sector{2, 0.0});
  const Objective obj(fx.h);
  for (auto family : {PoolFamily::QEB, PoolFamily::SQEB, PoolFamily::FEB}) {
    const auto pool = generate_pool(family, 2, 2, PoolMode::Generalized);
    for (const auto& op : pool.elements) {
      EXPECT_NEAR(residual_gradient(op, obj, g.eigenvector), 0.0, 1e-10) << op.label();
    }
  }
}

TEST(ResidualGradient, MatchesFiniteDifferences) {
  std::mt19937 rng(4);
  const auto fx = load("h4_chain_1.0.fcidump");
  const Objective obj(fx.h);
  const auto pool = generate_pool(PoolFamily::SQEB, fx.norb, 4, PoolMode::Generalized);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int t = 0; t < 20; ++t) {
    const auto psi = test_support::random_state(8, rng);
    const auto& op = pool[pick(rng)];
    const double h = 1e-5;
    const double fd = (obj.expectation(apply_exponential(op.generator, h, psi)) -
                       obj.expectation(apply_exponential(op.generator, -h, psi))) /
                      (2 * h);
    EXPECT_NEAR(residual_gradient(op, obj, psi), fd, 1e-7) << op.label();
  }
}

TEST(Selection, MatchesBruteForce) {
  std::mt19937 rng(5);
  const auto fx = load("h4_chain_1.0.fcidump");
  const Objective obj(fx.h);
  const auto pool = generate_pool(PoolFamily::QEB, fx.norb, 4, PoolMode::Restricted);
  const CompiledPool cp(pool);
  const auto psi = test_support::random_state(8, rng);
  for (auto crit : {Criterion::Gradient, Criterion::DeltaE}) {
    const auto sel = select_operator(cp, obj, psi, crit);
    ASSERT_EQ(sel.screening.size(), pool.size());
    double best = -1;
    std::size_t arg = 0;
    const double e0 = obj.expectation(psi);
    for (std::size_t k = 0; k < pool.size(); ++k) {
      const double g = residual_gradient(pool[k], obj, psi);
      EXPECT_NEAR(sel.gradients[k], g, 1e-10);
      double v = std::abs(g);
      if (crit == Criterion::DeltaE) {
        v = e0 - minimize_theta(theta_energy_coeffs(pool[k], obj, psi)).energy;
      }
      EXPECT_NEAR(sel.screening[k], v, 1e-10);
      if (v > best) {
        best = v;
        arg = k;
      }
    }
    EXPECT_EQ(sel.index, arg);
    if (crit == Criterion::DeltaE) {
      const auto c = theta_energy_coeffs(pool[arg], obj, psi);
      EXPECT_NEAR(c.energy(sel.theta_star), e0 - best, 1e-10);
    }
  }
}

TEST(Selection, AllZeroPicksFirst) {
  // Every excitation annihilates the vacuum, so all screening values are exactly zero.
  const auto fx = load("h2_0.74.fcidump");
  const auto pool = generate_pool(PoolFamily::SQEB, 2, 2, PoolMode::Restricted);
  for (auto crit : {Criterion::Gradient, Criterion::DeltaE}) {
    const auto sel = select_operator(CompiledPool(pool), Objective(fx.h), StateVector(4), crit);
    EXPECT_EQ(sel.index, 0u);
    EXPECT_EQ(sel.screen_norm(), 0.0);
  }
}

TEST(Vqe, SingleDoubleSolvesH2) {
  const auto fx = load("h2_0.74.fcidump");
  Ansatz a;
  a.append(make_pool_operator(OperatorKind::QEB2, {0, 1, 2, 3}, 4), 0.0);
  const auto r = vqe_optimize(a, Objective(fx.h), fx.hf);
  EXPECT_TRUE(r.converged) << r.message;
  EXPECT_NEAR(r.energy, test_support::kH2Fci, 1e-8);

  const auto theta = a.parameters();
  const auto again = vqe_optimize(a, Objective(fx.h), fx.hf);
  EXPECT_NEAR(again.energy, r.energy, 1e-10);
  EXPECT_NEAR(a.parameters()[0], theta[0], 1e-6);
}

TEST(Adapt, StartsAtGroundState) {
  const auto fx = load("h2_0.74.fcidump");
  const auto g = ground_state(fx.h, Sector{2, 0.0});
  const auto pool = generate_pool(PoolFamily::SQEB, 2, 2, PoolMode::Restricted);
  AdaptConfig cfg;
  cfg.epsilon = 1e-6;
  const auto r = adapt_run(cfg, pool, Objective(fx.h), g.eigenvector);
  EXPECT_EQ(r.status, AdaptStatus::Converged);
  EXPECT_TRUE(r.ansatz.empty());
  EXPECT_TRUE(r.trace.empty());
}

TEST(Adapt, H2EveryPoolBothCriteria) {
  const auto fx = load("h2_0.74.fcidump");
  for (auto family : {PoolFamily::FEB, PoolFamily::QEB, PoolFamily::SQEB, PoolFamily::SFEB}) {
    for (auto crit : {Criterion::Gradient, Criterion::DeltaE}) {
      AdaptConfig cfg;
      cfg.criterion = crit;
      cfg.epsilon = 1e-5;
      const auto pool = generate_pool(family, 2, 2, PoolMode::Restricted);
      const auto r = adapt_run(cfg, pool, Objective(fx.h), fx.hf);
      EXPECT_EQ(r.status, AdaptStatus::Converged) << to_string(family);
      EXPECT_NEAR(r.energy, test_support::kH2Fci, 1e-8) << to_string(family);
      EXPECT_LE(r.trace.size(), 5u);
    }
  }
}

TEST(Adapt, TraceInvariantsOnH4) {
  const auto fx = load("h4_chain_1.0.fcidump");
  const auto pool = generate_pool(PoolFamily::SQEB, fx.norb, 4, PoolMode::Restricted);
  AdaptConfig cfg;
  cfg.epsilon = 1e-3;
  std::vector<TraceRow> observed;
  const auto r = adapt_run(cfg, pool, Objective(fx.h), fx.hf,
                           [&](const TraceRow& row) { observed.push_back(row); });
  ASSERT_FALSE(r.trace.empty());
  EXPECT_EQ(observed.size(), r.trace.size());
  int cnots = 0;
  double prev = expectation(fx.h, fx.hf);
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    const auto& row = r.trace[i];
    EXPECT_EQ(row.iteration, static_cast<int>(i) + 1);
    EXPECT_EQ(row.params, i + 1);
    cnots += cnot_cost(row.kind, row.indices);
    EXPECT_EQ(row.cnots, cnots);
    EXPECT_LE(row.energy, prev + 1e-10);
    EXPECT_GE(row.energy, test_support::kH4Fci - 1e-9);
    prev = row.energy;
  }
  EXPECT_EQ(r.ansatz.cnot_count(), cnots);
  EXPECT_NEAR(r.energy, expectation(fx.h, r.state), 1e-10);
  EXPECT_NEAR(r.energy, test_support::kH4Fci, 1.59e-3);
}

TEST(Adapt, IterationCap) {
  const auto fx = load("h4_chain_1.0.fcidump");
  const auto pool = generate_pool(PoolFamily::QEB, fx.norb, 4, PoolMode::Restricted);
  AdaptConfig cfg;
  cfg.epsilon = 1e-12;
  cfg.max_iterations = 2;
  const auto r = adapt_run(cfg, pool, Objective(fx.h), fx.hf);
  EXPECT_EQ(r.status, AdaptStatus::IterationCap);
  EXPECT_EQ(r.trace.size(), 2u);
}

TEST(ExcitedObjective, Examples) {
  const auto fx = load("h2_0.74.fcidump");
  const auto s2 = s_squared_operator(4);
  const auto g = ground_state(fx.h, Sector{2, 0.0});
  const double alpha = 3.0, beta = 1.0;
  const auto obj = excited_objective(fx.h, g.eigenvector, alpha, beta);
  EXPECT_NEAR(obj.expectation(g.eigenvector),
              g.eigenvalue + alpha + beta * expectation(s2, g.eigenvector), 1e-10);

  const auto ex = first_excited_singlet(fx.h, s2, Sector{2, 0.0});
  EXPECT_NEAR(obj.expectation(ex.eigenvector), expectation(fx.h, ex.eigenvector), 1e-10);

  StateVector unnormalized = g.eigenvector;
  unnormalized *= 2.0;
  EXPECT_ANY_THROW(excited_objective(fx.h, unnormalized));
  EXPECT_ANY_THROW(excited_objective(fx.h, g.eigenvector, -1.0, 1.0));
}

TEST(Trace, CsvFormat) {
  std::ostringstream os;
  write_trace_header(os);
  write_trace_row(os, TraceRow{1, OperatorKind::SQEB2, {0, 1, 4, 5}, 0.125, -1.5, 1, 9, 0.0625});
  EXPECT_EQ(os.str(),
            "iter,kind,indices,screen_value,energy,params,cnots,grad_norm\n"
            "1,SQEB2,0 1 4 5,0.125,-1.5,1,9,0.0625\n");
}

TEST(Criterion, Parsing) {
  EXPECT_EQ(parse_criterion("gradient"), Criterion::Gradient);
  EXPECT_EQ(parse_criterion("delta_e"), Criterion::DeltaE);
  EXPECT_ANY_THROW(parse_criterion("energy"));
  EXPECT_EQ(to_string(AdaptStatus::IterationCap), "iteration_cap");
}
