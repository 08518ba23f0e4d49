#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oada/fcidump.hpp"
#include "oracles.hpp"

using namespace oada;

namespace {

const char* kTiny = R"( &FCI NORB=2,NELEC=2,MS2=0,
  ORBSYM=1,1,
  ISYM=1,
 &END
  0.5 1 1 1 1
  0.25 2 1 2 1
  0.125 2 2 1 1
  -1.5 1 1 0 0
  -0.75 2 2 0 0
  0.1 2 1 0 0
  0.7 0 0 0 0
)";

FcidumpError parse_error(std::string_view text) {
  try {
    parse_fcidump(text);
  } catch (const FcidumpError& e) {
    return e;
  }
  ADD_FAILURE() << "no error raised";
  return FcidumpError("none");
}

}  // namespace

TEST(Fcidump, ParsesHeaderAndIntegrals) {
  const auto d = parse_fcidump(kTiny);
  EXPECT_EQ(d.norb, 2);
  EXPECT_EQ(d.nelec, 2);
  EXPECT_EQ(d.ms2, 0);
  EXPECT_DOUBLE_EQ(d.core_energy, 0.7);
  EXPECT_DOUBLE_EQ(d.one(1, 2), 0.1);
  EXPECT_DOUBLE_EQ(d.one(2, 1), 0.1);
  EXPECT_DOUBLE_EQ(d.two(1, 2, 1, 2), 0.25);
  EXPECT_DOUBLE_EQ(d.two(1, 1, 2, 2), 0.125);
  EXPECT_FALSE(d.ref_fci.has_value());
}

TEST(Fcidump, EightfoldSymmetryLookups) {
  const auto d = parse_fcidump(" &FCI NORB=3,NELEC=2,MS2=0 &END\n 0.3 1 2 3 1\n");
  const double expected = 0.3;
  for (auto [i, j, k, l] : {OrbitalQuad{1, 2, 3, 1}, {2, 1, 3, 1}, {1, 2, 1, 3}, {2, 1, 1, 3},
                            {3, 1, 1, 2}, {1, 3, 1, 2}, {3, 1, 2, 1}, {1, 3, 2, 1}})
    EXPECT_DOUBLE_EQ(d.two(i, j, k, l), expected);
  EXPECT_DOUBLE_EQ(d.two(1, 1, 2, 3), 0.0);
}

TEST(Fcidump, AcceptsFortranExponentsAndSlashTerminator) {
  const auto d = parse_fcidump("&fci norb=1, nelec=2, ms2=0 /\n 1.5D-01 1 1 1 1\n -2.0d0 1 1 0 0\n");
  EXPECT_DOUBLE_EQ(d.two(1, 1, 1, 1), 0.15);
  EXPECT_DOUBLE_EQ(d.one(1, 1), -2.0);
}

TEST(Fcidump, ReadsReferenceComments) {
  const auto d = parse_fcidump("# REF_HF=-1.0\n# REF_FCI=-1.25\n &FCI NORB=1,NELEC=2,MS2=0 &END\n");
  ASSERT_TRUE(d.ref_hf && d.ref_fci);
  EXPECT_DOUBLE_EQ(*d.ref_hf, -1.0);
  EXPECT_DOUBLE_EQ(*d.ref_fci, -1.25);
}

TEST(Fcidump, ErrorsCarryLineNumbers) {
  EXPECT_EQ(parse_error(" &FCI NORB=2,NELEC=2,MS2=0 &END\n 0.5 1 1 1\n").line(), 2u);
  EXPECT_EQ(parse_error(" &FCI NORB=2,NELEC=2,MS2=0 &END\n 0.5 1 3 1 1\n").line(), 2u);
  EXPECT_EQ(parse_error(" &FCI NORB=2,NELEC=2,MS2=0 &END\n\n 0.5x 1 1 1 1\n").line(), 3u);
  EXPECT_EQ(parse_error(" &FCI NORB=2,NELEC=2,MS2=0 &END\n 0.5 1 0 1 1\n").line(), 2u);
  EXPECT_EQ(parse_error(" &FCI NORB=2,NELEC=2,MS2=0 &END\n 0.5 0 1 0 0\n").line(), 2u);
  EXPECT_EQ(parse_error(" &FCI NORB=2,NELEC=2,MS2=0 &END\n 0.5 1 -1 1 1\n").line(), 2u);
}

TEST(Fcidump, RejectsBadHeaders) {
  parse_error("");
  parse_error("0.5 1 1 1 1\n");
  parse_error(" &FCI NORB=2,NELEC=2\n");
  parse_error(" &FCI NELEC=2,MS2=0 &END\n");
  parse_error(" &FCI NORB=2,NELEC=5,MS2=0 &END\n");
  parse_error(" &FCI NORB=2,NELEC=2,MS2=1 &END\n");
  parse_error(" &FCI NORB=two,NELEC=2,MS2=0 &END\n");
}

TEST(Fcidump, OrbitalEnergyRecordsAreIgnored) {
  const auto d = parse_fcidump(" &FCI NORB=2,NELEC=2,MS2=0 &END\n -0.5 1 0 0 0\n");
  EXPECT_TRUE(d.one_body.empty());
  EXPECT_EQ(d.core_energy, 0.0);
}

TEST(Fcidump, RoundTripIsBitExact) {
  std::mt19937_64 rng(11);
  auto d = oracle::random_integrals(4, 4, rng);
  d.set_one(1, 3, 1.0 / 3.0);
  d.set_two(1, 2, 3, 4, std::nextafter(0.1, 1.0));
  d.ref_fci = -2.0 / 3.0;
  const auto back = parse_fcidump(write_fcidump(d));
  EXPECT_EQ(back.norb, d.norb);
  EXPECT_EQ(back.nelec, d.nelec);
  EXPECT_EQ(back.core_energy, d.core_energy);
  EXPECT_EQ(back.one_body, d.one_body);
  EXPECT_EQ(back.two_body, d.two_body);
  EXPECT_EQ(back.ref_fci, d.ref_fci);
}

TEST(Fcidump, SpinOrbitalExpansion) {
  const auto d = parse_fcidump(kTiny);
  const auto h = to_spin_orbital(d);
  EXPECT_EQ(h.n_spin_orbitals, 4);
  EXPECT_EQ(h.n_alpha(), 1);
  EXPECT_EQ(h.n_beta(), 1);
  EXPECT_DOUBLE_EQ(h.h1(0, 0), -1.5);
  EXPECT_DOUBLE_EQ(h.h1(1, 1), -1.5);
  EXPECT_DOUBLE_EQ(h.h1(2, 0), 0.1);
  EXPECT_DOUBLE_EQ(h.h1(3, 1), 0.1);
  EXPECT_DOUBLE_EQ(h.h1(1, 0), 0.0);
  EXPECT_DOUBLE_EQ(h.h1(3, 0), 0.0);
  // (11|22) between alpha orbital 1 and beta orbital 2.
  EXPECT_DOUBLE_EQ(h.eri(0, 0, 3, 3), 0.125);
  EXPECT_DOUBLE_EQ(h.h2(0, 0, 3, 3), 0.0625);
  // Spin mismatch inside a charge distribution vanishes.
  EXPECT_DOUBLE_EQ(h.eri(0, 1, 2, 2), 0.0);
  EXPECT_DOUBLE_EQ(h.eri(2, 0, 2, 0), 0.25);
  EXPECT_DOUBLE_EQ(h.eri(3, 1, 2, 0), 0.25);
}

TEST(Fcidump, ShippedFixturesCarryReferences) {
  for (const char* name : {"h2_0.7414", "h4_1.5", "h6_3.0", "beh2_1.3264", "beh2_3.0"}) {
    const auto d = read_fcidump(oracle::fixture(name));
    EXPECT_TRUE(d.ref_hf.has_value()) << name;
    EXPECT_TRUE(d.ref_fci.has_value()) << name;
    EXPECT_LT(*d.ref_fci, *d.ref_hf) << name;
  }
}

TEST(Fcidump, MissingFileIsAnError) {
  EXPECT_THROW(read_fcidump("/nonexistent/x.fcidump"), FcidumpError);
}
