#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oada/ci.hpp"
#include "oracles.hpp"

using namespace oada;

namespace {

Eigen::MatrixXd dense_ci(const MolecularHamiltonian& h, const std::vector<Determinant>& dets) {
  return Eigen::MatrixXd(ci_hamiltonian(h, dets));
}

}  // namespace

TEST(Determinants, SpatialMasksInterleave) {
  const auto d = Determinant::from_spatial(0b011, 0b101);
  EXPECT_EQ(d.bits, 0b100111u);
  EXPECT_EQ(d.alpha_mask(), 0b011u);
  EXPECT_EQ(d.beta_mask(), 0b101u);
  EXPECT_EQ(d.n_electrons(), 4);
}

TEST(Determinants, SectorEnumeration) {
  const auto dets = sector_determinants({4, 2, 1});
  EXPECT_EQ(dets.size(), 6u * 4u);
  std::set<std::uint64_t> seen;
  for (const auto& d : dets) {
    EXPECT_EQ(std::popcount(d.alpha_mask()), 2);
    EXPECT_EQ(std::popcount(d.beta_mask()), 1);
    seen.insert(d.bits);
  }
  EXPECT_EQ(seen.size(), dets.size());
  EXPECT_TRUE(std::is_sorted(dets.begin(), dets.end()));
}

TEST(SlaterCondon, MatchesDenseJordanWigner) {
  std::mt19937_64 rng(41);
  for (auto [norb, ne, ms2] : {std::tuple{2, 2, 0}, {3, 2, 0}, {3, 3, 1}, {4, 4, 0}, {4, 3, 1}}) {
    const auto h = to_spin_orbital(oracle::random_integrals(norb, ne, rng, ms2));
    const auto jw = to_dense(jw_hamiltonian(h));
    const auto dets = sector_determinants(sector_of(h));
    double worst = 0.0;
    for (const auto& a : dets)
      for (const auto& b : dets)
        worst = std::max(worst, std::abs(slater_condon(h, a, b) - jw(a.bits, b.bits)));
    EXPECT_LT(worst, 1e-10) << norb << ' ' << ne;
  }
}

TEST(SlaterCondon, HartreeFockDiagonalIsScfEnergy) {
  const auto data = read_fcidump(oracle::fixture("h2_0.7414"));
  const auto h = to_spin_orbital(data);
  const Determinant hf{hf_occupation(2)};
  EXPECT_NEAR(slater_condon(h, hf, hf), *data.ref_hf, 1e-10);
}

TEST(SlaterCondon, TripleExcitationsVanish) {
  std::mt19937_64 rng(42);
  const auto h = to_spin_orbital(oracle::random_integrals(4, 4, rng));
  const Determinant a{0b00111001}, b{0b11100100};
  EXPECT_EQ(excitation_degree(a, b), 3);
  EXPECT_EQ(slater_condon(h, a, b), 0.0);
}

TEST(SlaterCondon, ConnectedEnumerationIsComplete) {
  const Determinant d{0b00110011};
  std::set<std::uint64_t> got;
  for_each_connected(d, 8, [&](Determinant k) { got.insert(k.bits); });
  std::set<std::uint64_t> want;
  for (const auto& k : sector_determinants({4, 2, 2}))
    if (int deg = excitation_degree(d, k); deg == 1 || deg == 2) want.insert(k.bits);
  EXPECT_EQ(got, want);
}

TEST(Fci, FixtureReferenceEnergies) {
  for (const char* name : {"h2_0.7414", "h4_1.5", "h6_3.0", "beh2_1.3264", "beh2_3.0"}) {
    const auto data = read_fcidump(oracle::fixture(name));
    const auto r = fci_ground_state(to_spin_orbital(data));
    EXPECT_NEAR(r.energy, *data.ref_fci, 1e-8) << name;
    EXPECT_NEAR(r.wavefunction.norm(), 1.0, 1e-12);
  }
}

TEST(Fci, DavidsonAgreesWithDense) {
  const auto h = to_spin_orbital(read_fcidump(oracle::fixture("h6_3.0")));
  const auto dets = sector_determinants(sector_of(h));
  const auto m = ci_hamiltonian(h, dets);
  EigenOptions dav;
  dav.force_davidson = true;
  const auto a = lowest_eigenpair(m, dav);
  const auto b = lowest_eigenpair(m);
  EXPECT_TRUE(a.davidson);
  EXPECT_FALSE(b.davidson);
  EXPECT_NEAR(a.eigenvalue, b.eigenvalue, 1e-9);
  EXPECT_NEAR(std::abs(a.vector.dot(b.vector)), 1.0, 1e-8);
}

TEST(Fci, SingleDeterminantSector) {
  std::mt19937_64 rng(43);
  const auto h = to_spin_orbital(oracle::random_integrals(2, 4, rng));
  const auto r = fci_ground_state(h);
  EXPECT_EQ(r.dimension, 1u);
  const Determinant d{0b1111};
  EXPECT_DOUBLE_EQ(r.energy, slater_condon(h, d, d));
}

TEST(Fci, DimensionCap) {
  const auto h = to_spin_orbital(read_fcidump(oracle::fixture("h6_3.0")));
  FciOptions opt;
  opt.dimension_cap = 100;
  EXPECT_THROW(fci_ground_state(h, opt), std::length_error);
}

TEST(Fci, ExportedStateReproducesEnergy) {
  const auto h = to_spin_orbital(read_fcidump(oracle::fixture("h4_1.5")));
  const auto r = fci_ground_state(h);
  const auto s = export_statevector(r.wavefunction, 8);
  EXPECT_NEAR(s.norm(), 1.0, 1e-12);
  EXPECT_NEAR(expectation(s, jw_hamiltonian(h)), r.energy, 1e-9);
}

TEST(Export, HartreeFockAndTwoDeterminants) {
  DeterminantWavefunction w;
  w.coeffs[Determinant{0b0011}] = 1.0;
  const auto s = export_statevector(w, 4);
  const auto hf = prepare_hf(4, 2);
  for (std::size_t i = 0; i < s.dim(); ++i) EXPECT_EQ(s[i], hf[i]);

  DeterminantWavefunction two;
  two.coeffs[Determinant{0b0011}] = 3.0;
  two.coeffs[Determinant{0b1100}] = -4.0;
  const auto t = export_statevector(two, 4);
  EXPECT_NEAR(t.norm(), 1.0, 1e-15);
  EXPECT_NEAR(t[0b0011].real() / t[0b1100].real(), -0.75, 1e-15);
  EXPECT_THROW(export_statevector(two, 3), std::out_of_range);
}

TEST(Export, DeterminantFileRoundTrip) {
  const auto h = to_spin_orbital(read_fcidump(oracle::fixture("h4_1.5")));
  auto w = fci_ground_state(h).wavefunction;
  int norb = 0, nelec = 0;
  const auto back = read_determinants(write_determinants(w, 4, 4), &norb, &nelec);
  EXPECT_EQ(norb, 4);
  EXPECT_EQ(nelec, 4);
  ASSERT_EQ(back.coeffs.size(), w.coeffs.size());
  for (const auto& [d, c] : w.coeffs) EXPECT_EQ(back.coeffs.at(d), c);
  EXPECT_THROW(read_determinants("0.5 1 1\n"), std::runtime_error);
}

TEST(Cipsi, InitialStateIsHartreeFock) {
  const auto data = read_fcidump(oracle::fixture("h4_1.5"));
  const auto s = cipsi_initial_state(to_spin_orbital(data));
  ASSERT_EQ(s.reference.size(), 1u);
  EXPECT_EQ(s.reference[0].bits, hf_occupation(4));
  EXPECT_NEAR(s.e_var, *data.ref_hf, 1e-10);
  EXPECT_LT(s.e_pt2, 0.0);
}

TEST(Cipsi, PerturbativeCorrectionMatchesDenseOracle) {
  const auto h = to_spin_orbital(read_fcidump(oracle::fixture("h4_1.5")));
  const auto all = sector_determinants(sector_of(h));
  const auto m = dense_ci(h, all);
  auto s = cipsi_initial_state(h);
  for (int it = 0; it < 3; ++it) s = cipsi_iterate(s, h);
  std::vector<int> pos;
  for (const auto& d : s.reference)
    pos.push_back(static_cast<int>(std::lower_bound(all.begin(), all.end(), d) - all.begin()));
  double e2 = 0.0;
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (std::find(s.reference.begin(), s.reference.end(), all[k]) != s.reference.end()) continue;
    double v = 0.0;
    for (std::size_t i = 0; i < pos.size(); ++i) v += s.coeffs[i] * m(pos[i], k);
    e2 += v * v / (s.e_var - m(k, k));
  }
  EXPECT_NEAR(s.e_pt2, e2, 1e-12);
  for (const auto& c : en_pt2(h, s.reference, s.coeffs, s.e_var))
    if (c.denominator < 0) EXPECT_LE(c.energy, 0.0);
}

TEST(Cipsi, IterationInvariants) {
  const auto data = read_fcidump(oracle::fixture("h6_3.0"));
  const auto h = to_spin_orbital(data);
  CipsiOptions opt;
  opt.max_dets = 400;
  std::vector<CipsiState> hist;
  const auto last = run_cipsi(h, opt, &hist);
  ASSERT_GE(hist.size(), 3u);
  for (std::size_t k = 1; k < hist.size(); ++k) {
    EXPECT_LE(hist[k].reference.size(), 2 * hist[k - 1].reference.size());
    EXPECT_GT(hist[k].reference.size(), hist[k - 1].reference.size());
    EXPECT_LE(hist[k].e_var, hist[k - 1].e_var + 1e-12);
    EXPECT_GE(hist[k].e_var, *data.ref_fci - 1e-10);
    EXPECT_EQ(hist[k].iteration, static_cast<int>(k));
  }
  // The full sector leaves nothing to perturb.
  EXPECT_EQ(last.reference.size(), 400u);
  EXPECT_EQ(last.e_pt2, 0.0);
  EXPECT_NEAR(last.e_var, *data.ref_fci, 1e-9);
}

TEST(Cipsi, StoppingRules) {
  const auto data = read_fcidump(oracle::fixture("h6_3.0"));
  const auto h = to_spin_orbital(data);
  CipsiOptions capped;
  capped.max_dets = 50;
  const auto a = run_cipsi(h, capped);
  EXPECT_EQ(a.reference.size(), 50u);
  CipsiOptions inf;
  inf.target_e2 = std::numeric_limits<double>::infinity();
  const auto b = run_cipsi(h, inf);
  EXPECT_EQ(b.reference.size(), 1u);
  CipsiOptions e2;
  e2.target_e2 = 1e-3;
  const auto c = run_cipsi(h, e2);
  EXPECT_LE(std::abs(c.e_pt2), 1e-3);
  EXPECT_NEAR(c.wavefunction().norm(), 1.0, 1e-12);
}

TEST(Cipsi, H2SingleIterationIsExact) {
  const auto data = read_fcidump(oracle::fixture("h2_0.7414"));
  const auto h = to_spin_orbital(data);
  const auto s = cipsi_iterate(cipsi_initial_state(h), h);
  EXPECT_NEAR(s.e_cipsi(), *data.ref_fci, 1e-8);
}

TEST(Cipsi, Deterministic) {
  const auto h = to_spin_orbital(read_fcidump(oracle::fixture("beh2_3.0")));
  CipsiOptions opt;
  opt.max_dets = 100;
  const auto a = run_cipsi(h, opt), b = run_cipsi(h, opt);
  EXPECT_EQ(a.reference, b.reference);
  EXPECT_EQ(a.coeffs, b.coeffs);
}
