#include <gtest/gtest.h>

#include <set>

#include "oada/pool.hpp"
#include "oracles.hpp"

using namespace oada;

namespace {

long choose2(long k) { return k * (k - 1) / 2; }

struct Counts {
  long singles, doubles;
};

Counts closed_form(int n, int ne) {
  const long oa = (ne + 1) / 2, ob = ne / 2;
  const long va = n / 2 - oa, vb = n / 2 - ob;
  return {oa * va + ob * vb, choose2(oa) * choose2(va) + choose2(ob) * choose2(vb) + oa * ob * va * vb};
}

// Every distinct pair of index sets whose generator moves the reference to
// another determinant with the same S_z. T and -T count once.
Counts brute_force(int n, int ne) {
  const auto hf = prepare_hf(n, ne);
  const std::uint64_t alpha = 0x5555555555555555ull & ((std::uint64_t(1) << n) - 1);
  const int sz = std::popcount(hf_occupation(ne) & alpha);
  auto qualifies = [&](const Excitation& e) {
    const auto out = apply_generator(hf, e);
    for (std::size_t i = 0; i < out.dim(); ++i)
      if (std::abs(out[i]) > 0 && std::popcount(i & alpha) == sz) return true;
    return false;
  };
  std::set<std::pair<std::uint64_t, std::uint64_t>> singles, doubles;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (p != q && qualifies(Excitation::single(p, q)))
        singles.insert(std::minmax(std::uint64_t(1) << p, std::uint64_t(1) << q));
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const std::set<int> idx{p, q, r, s};
          if (idx.size() < 4) continue;
          const auto e = Excitation::double_(p, q, r, s);
          if (qualifies(e)) doubles.insert(std::minmax(e.dest_mask(), e.source_mask()));
        }
  return {static_cast<long>(singles.size()), static_cast<long>(doubles.size())};
}

}  // namespace

TEST(Pool, H2HasTwoSinglesAndOneDouble) {
  const auto pool = build_pool(4, 2);
  ASSERT_EQ(pool.size(), 3u);
  EXPECT_EQ(pool[0].excitation, Excitation::single(2, 0));
  EXPECT_EQ(pool[1].excitation, Excitation::single(3, 1));
  EXPECT_EQ(pool[2].excitation, Excitation::double_(2, 3, 0, 1));
  EXPECT_EQ(dump_pool(pool), "0 single 2 0 3\n1 single 3 1 3\n2 double 2 3 0 1 13\n");
}

TEST(Pool, CountsMatchClosedFormAndBruteForce) {
  for (auto [n, ne] : {std::pair{4, 2}, {6, 2}, {8, 4}, {8, 2}, {10, 4}, {8, 3}}) {
    const auto pool = build_pool(n, ne);
    long singles = 0, doubles = 0;
    for (const auto& op : pool) (op.excitation.is_single() ? singles : doubles)++;
    const auto cf = closed_form(n, ne);
    const auto bf = brute_force(n, ne);
    EXPECT_EQ(singles, cf.singles) << n << ' ' << ne;
    EXPECT_EQ(doubles, cf.doubles) << n << ' ' << ne;
    EXPECT_EQ(singles, bf.singles) << n << ' ' << ne;
    EXPECT_EQ(doubles, bf.doubles) << n << ' ' << ne;
  }
}

TEST(Pool, FixtureSizes) {
  EXPECT_EQ(build_pool(12, 6).size(), 117u);  // H6
  EXPECT_EQ(build_pool(14, 6).size(), 24u + 180u);  // BeH2
}

TEST(Pool, OrderingAndIds) {
  const auto pool = build_pool(10, 4);
  bool seen_double = false;
  for (std::size_t k = 0; k < pool.size(); ++k) {
    EXPECT_EQ(pool[k].id, static_cast<int>(k));
    EXPECT_EQ(pool[k].cnot_cost, pool[k].excitation.is_single() ? 3 : 13);
    if (!pool[k].excitation.is_single()) seen_double = true;
    else EXPECT_FALSE(seen_double) << "single after a double";
    if (k > 0 && pool[k].excitation.kind == pool[k - 1].excitation.kind)
      EXPECT_LT(pool[k - 1].excitation.idx, pool[k].excitation.idx);
    const auto& e = pool[k].excitation;
    if (!e.is_single()) {
      EXPECT_LT(e.p(), e.q());
      EXPECT_LT(e.r(), e.s());
    }
  }
}

TEST(Pool, ResourceAccounting) {
  EXPECT_EQ(cnot_count(ExcitationKind::Single), 3);
  EXPECT_EQ(cnot_count(ExcitationKind::Double), 13);
  EXPECT_EQ((ResourceCount{0, 50}).cnots(), 650);
  EXPECT_EQ((ResourceCount{8, 42}).cnots(), 570);
  EXPECT_EQ((ResourceCount{17, 33}).cnots(), 480);
  EXPECT_EQ((ResourceCount{6, 44}).cnots(), 590);
  EXPECT_EQ((ResourceCount{6, 34}).cnots(), 460);
}

TEST(Pool, RejectsBadElectronCounts) {
  EXPECT_THROW(build_pool(4, 5), std::invalid_argument);
  EXPECT_THROW(Excitation::single(1, 1), std::invalid_argument);
  EXPECT_THROW(Excitation::double_(0, 1, 1, 2), std::invalid_argument);
}
