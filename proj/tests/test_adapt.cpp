#include <gtest/gtest.h>

#include <random>

#include "oada/adapt.hpp"
#include "oada/ci.hpp"
#include "oada/parallel.hpp"
#include "oracles.hpp"

using namespace oada;

namespace {

struct System {
  FcidumpData data;
  MolecularHamiltonian mol;
  QubitOperator hq;
  std::vector<PoolOperator> pool;

  explicit System(const std::string& name)
      : data(read_fcidump(oracle::fixture(name))),
        mol(to_spin_orbital(data)),
        hq(jw_hamiltonian(mol)),
        pool(build_pool(mol.n_spin_orbitals, mol.n_electrons)) {}
  Ansatz empty() const { return {mol.n_spin_orbitals, mol.n_electrons, {}}; }
};

}  // namespace

TEST(Adapt, ArgmaxPrefersLowestIndexOnTies) {
  EXPECT_EQ(argmax_magnitude({0.1, -0.3, 0.3, -0.2}), 1);
  EXPECT_EQ(argmax_magnitude({}), -1);
}

TEST(Adapt, H2ReachesExactEnergy) {
  const System s("h2_0.7414");
  const OperatorKernel h(s.hq);
  AdaptOptions opt;
  opt.max_ops = 3;
  opt.e_fci = *s.data.ref_fci;
  const auto r = run_adapt(h, s.pool, s.empty(), opt);
  EXPECT_LE(r.ansatz.size(), 3u);
  EXPECT_LT(std::abs(r.energy - *s.data.ref_fci), 1e-8);
  EXPECT_EQ(r.trace.records.front().kind, "init");
  EXPECT_NEAR(r.trace.records.front().energy, *s.data.ref_hf, 1e-10);
}

TEST(Adapt, ScreeningGradientIsEnergySlopeOfAppendedOperator) {
  const System s("h4_1.5");
  const OperatorKernel h(s.hq);
  std::mt19937_64 rng(21);
  const auto a = oracle::random_ansatz(8, 4, s.pool, 4, rng);
  const auto psi = apply_ansatz(a);
  const auto g = screen_energy_gradients(psi, h, s.pool);
  const double step = 1e-5;
  for (const auto& op : s.pool) {
    Statevector plus = psi, minus = psi;
    apply_excitation(plus, op.excitation, step);
    apply_excitation(minus, op.excitation, -step);
    const double fd = (expectation(plus, h) - expectation(minus, h)) / (2 * step);
    EXPECT_NEAR(g[op.id], fd, 1e-7);
  }
}

TEST(Adapt, TraceInvariantsOnH4) {
  const System s("h4_1.5");
  const OperatorKernel h(s.hq);
  AdaptOptions opt;
  opt.max_ops = 12;
  opt.e_fci = *s.data.ref_fci;
  const auto fci = fci_ground_state(s.mol);
  const auto target = export_statevector(fci.wavefunction, 8);
  opt.monitor = &target;
  const auto r = run_adapt(h, s.pool, s.empty(), opt);
  const auto& rec = r.trace.records;
  ASSERT_GE(rec.size(), 2u);
  for (std::size_t k = 1; k < rec.size(); ++k) {
    EXPECT_EQ(rec[k].params, rec[k - 1].params + 1);
    EXPECT_LE(rec[k].energy, rec[k - 1].energy + 1e-12);
    EXPECT_GE(rec[k].energy, fci.energy - 1e-10);
    EXPECT_GE(rec[k].grad, opt.eps);
    EXPECT_GE(rec[k].infidelity, -1e-12);
    EXPECT_NEAR(rec[k].error_vs_fci, rec[k].energy - *s.data.ref_fci, 1e-14);
  }
  const auto rc = count_resources(r.ansatz);
  EXPECT_EQ(rec.back().cnots, 3 * rc.singles + 13 * rc.doubles);
  EXPECT_NEAR(r.energy, expectation(apply_ansatz(r.ansatz), h), 1e-12);
}

TEST(Adapt, BudgetCountsInitialOperators) {
  const System s("h4_1.5");
  const OperatorKernel h(s.hq);
  Ansatz init = s.empty();
  init.entries.push_back({s.pool[20].id, s.pool[20].excitation, 0.1});
  init.entries.push_back({s.pool[10].id, s.pool[10].excitation, -0.1});
  AdaptOptions opt;
  opt.max_ops = 4;
  const auto r = run_adapt(h, s.pool, init, opt);
  EXPECT_EQ(r.ansatz.size(), 4u);
  EXPECT_EQ(r.trace.records.front().params, 2);
  EXPECT_EQ(r.ansatz.entries[0].op_id, 20);
  EXPECT_EQ(r.stop_reason, "operator budget reached");
}

TEST(Adapt, GradientThresholdStops) {
  const System s("h4_1.5");
  const OperatorKernel h(s.hq);
  AdaptOptions opt;
  opt.eps = 10.0;
  const auto r = run_adapt(h, s.pool, s.empty(), opt);
  EXPECT_EQ(r.ansatz.size(), 0u);
  EXPECT_EQ(r.stop_reason, "gradient below threshold");
}

TEST(Adapt, DeterministicAcrossRunsAndThreadCounts) {
  const System s("h4_1.5");
  const OperatorKernel h(s.hq);
  AdaptOptions opt;
  opt.max_ops = 8;
  opt.e_fci = *s.data.ref_fci;
  set_num_threads(1);
  const auto a = run_adapt(h, s.pool, s.empty(), opt).trace.to_csv();
  set_num_threads(4);
  const auto b = run_adapt(h, s.pool, s.empty(), opt).trace.to_csv();
  const auto c = run_adapt(h, s.pool, s.empty(), opt).trace.to_csv();
  set_num_threads(0);
  EXPECT_EQ(a, b);
  EXPECT_EQ(b, c);
  EXPECT_EQ(a.substr(0, a.find('\n')), "iter,op_id,kind,grad,energy,error_vs_fci,params,cnots,evals");
}
