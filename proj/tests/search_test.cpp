#include "floq/search.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

namespace floq {
namespace {

MultiPoly V(std::uint32_t j) { return MultiPoly::variable(var_v(j)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  EXPECT_TRUE(in.good()) << path;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(GenSystem, PeriodThree) {
  PolySystem sys = gen_system(3);
  ASSERT_EQ(sys.equations.size(), 3u);
  ASSERT_EQ(sys.variables.size(), 3u);
  // trace coefficient: [lambda^2] det(D - lambda I) = (+1) * sum of diagonal
  EXPECT_EQ(sys.equations[2], V(1) + V(2) + V(3));
  EXPECT_EQ(sys.equations[1], -(V(1) * V(2) + V(1) * V(3) + V(2) * V(3)));
  EXPECT_EQ(sys.equations[0], V(1) * V(2) * V(3) - (V(1) + V(2) + V(3)));
}

TEST(GenSystem, PeriodFourContainsElementarySymmetric) {
  PolySystem sys = gen_system(4);
  const MultiPoly e2 = V(1) * V(2) + V(1) * V(3) + V(1) * V(4) + V(2) * V(3) + V(2) * V(4) +
                       V(3) * V(4);
  EXPECT_EQ(sys.equations[2], e2);
}

TEST(GenSystem, EquationCountEqualsPeriod) {
  for (int q = 3; q <= 6; ++q) EXPECT_EQ(gen_system(q).equations.size(), static_cast<std::size_t>(q));
}

TEST(GenSystem, PeriodTooSmall) {
  try {
    gen_system(2);
    FAIL() << "expected period_too_small";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), errc::period_too_small);
  }
}

TEST(GenSystem, SpecializesToPatternCoefficients) {
  // zeroing the off-slot variables and renaming v_{m+1}, v_{m+2} to v3, v4
  // reproduces f_coeff_symbolic index by index
  for (int m : {2, 3}) {
    const int q = 2 * m;
    PolySystem sys = gen_system(q);
    std::map<VarId, MultiPoly> subs;
    for (int j = 1; j <= q; ++j) subs[var_v(static_cast<std::uint32_t>(j))] = MultiPoly();
    subs[var_v(1)] = V(1);
    subs[var_v(2)] = V(2);
    subs[var_v(static_cast<std::uint32_t>(m) + 1)] = V(3);
    subs[var_v(static_cast<std::uint32_t>(m) + 2)] = V(4);
    const auto f = f_coeff_symbolic(m);
    for (int i = 0; i < q; ++i)
      EXPECT_EQ(sys.equations[static_cast<std::size_t>(i)].substitute(subs),
                f[static_cast<std::size_t>(i)])
          << "m=" << m << " i=" << i;
  }
}

TEST(ExportM2, EmptySystemIsRingOnly) {
  PolySystem sys;
  sys.variables = {var_v(1), var_v(2)};
  const std::string script = export_m2(sys);
  EXPECT_NE(script.find("R = K[v1, v2];"), std::string::npos);
  EXPECT_EQ(script.find("I = ideal("), std::string::npos);
  EXPECT_EQ(script.find("decompose"), std::string::npos);
}

TEST(ExportM2, GoldenPeriodFour) {
  const std::string script = export_m2(gen_system(4));
  EXPECT_EQ(script, read_file(std::string(FLOQ_GOLDEN_DIR) + "/system_q4.m2"));
  // byte-stable across generations
  EXPECT_EQ(script, export_m2(gen_system(4)));
}

TEST(ExportM2, PolynomialsPrintCanonically) {
  PolySystem sys = gen_system(3);
  for (const MultiPoly& eq : sys.equations) {
    const std::string text = eq.to_string();
    EXPECT_FALSE(text.empty());
    EXPECT_EQ(text, eq.to_string());
  }
}

TEST(VerifyCandidate, PaperPotential) {
  CandidateReport r = verify_candidate(paper_potential(2));
  EXPECT_TRUE(r.isospectral);
  ASSERT_EQ(r.residuals.size(), 4u);
  for (const GaussInt& g : r.residuals) EXPECT_TRUE(g.is_zero());
}

TEST(VerifyCandidate, RealSpikeFailsAtTrace) {
  Potential1D spike = Potential1D::exact({GaussInt(1), GaussInt(0), GaussInt(0), GaussInt(0)});
  CandidateReport r = verify_candidate(spike);
  EXPECT_FALSE(r.isospectral);
  // trace equation is the top-degree-index one; residual -1 under the
  // det(D - lambda I) convention
  EXPECT_EQ(r.residuals[3], GaussInt(-1));
}

TEST(VerifyCandidate, ZeroVector) {
  CandidateReport r = verify_candidate(Potential1D::zero(5));
  EXPECT_TRUE(r.isospectral);
}

TEST(Scan, FindsPaperSolutionInGaussianPalette) {
  const std::vector<GaussInt> palette{GaussInt(0), GaussInt(1, 1), GaussInt(1, -1),
                                      GaussInt(-1, 1), GaussInt(-1, -1)};
  auto reports = scan_candidates(4, {1, 2, 3, 4}, palette);
  bool found_paper = false, found_zero = false;
  const Potential1D paper = paper_potential(2);
  for (const CandidateReport& r : reports) {
    EXPECT_TRUE(r.isospectral);
    if (r.candidate.exact_values() == paper.exact_values()) found_paper = true;
    bool all_zero = true;
    for (const GaussInt& g : r.candidate.exact_values()) all_zero = all_zero && g.is_zero();
    if (all_zero) found_zero = true;
  }
  EXPECT_TRUE(found_paper);
  EXPECT_TRUE(found_zero);
}

TEST(Scan, SolutionsPassExactCharPolyEquality) {
  const std::vector<GaussInt> palette{GaussInt(0), GaussInt(1, 1), GaussInt(1, -1),
                                      GaussInt(-1, 1), GaussInt(-1, -1)};
  auto reports = scan_candidates(4, {1, 2, 3, 4}, palette);
  EXPECT_FALSE(reports.empty());
  CharPoly p0 = charpoly_exact(floquet_matrix_exact(Potential1D::zero(4)));
  for (const CandidateReport& r : reports) {
    CharPoly pv = charpoly_exact(floquet_matrix_exact(r.candidate));
    EXPECT_TRUE(pv == p0);
  }
}

TEST(Scan, ConjugationSymmetry) {
  const std::vector<GaussInt> palette{GaussInt(0), GaussInt(1, 1), GaussInt(1, -1),
                                      GaussInt(-1, 1), GaussInt(-1, -1)};
  auto reports = scan_candidates(4, {1, 2, 3, 4}, palette);
  for (const CandidateReport& r : reports) {
    CandidateReport conj = verify_candidate(r.candidate.conjugated());
    EXPECT_TRUE(conj.isospectral);
  }
}

TEST(Scan, UnitPaletteHasNoNonzeroSolutions) {
  auto reports = scan_candidates(4, {1, 2, 3, 4}, {GaussInt(1)});
  EXPECT_TRUE(reports.empty());  // trace equation forces sum v = 0
}

TEST(Scan, DeterministicAcrossThreadCounts) {
  const std::vector<GaussInt> palette{GaussInt(0), GaussInt(1, 1), GaussInt(1, -1),
                                      GaussInt(-1, 1), GaussInt(-1, -1)};
  auto serial = scan_candidates(4, {1, 2, 3, 4}, palette, 1);
  auto parallel = scan_candidates(4, {1, 2, 3, 4}, palette, 4);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i)
    EXPECT_EQ(serial[i].candidate.exact_values(), parallel[i].candidate.exact_values());
}

TEST(Scan, Guards) {
  std::vector<GaussInt> big_palette;
  for (int i = 0; i < 60; ++i) big_palette.emplace_back(i, 0);
  try {
    scan_candidates(8, {1, 2, 3, 4}, big_palette);  // 60^4 > 10^7
    FAIL() << "expected search_space_too_large";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), errc::search_space_too_large);
  }
  try {
    scan_candidates(8, {1, 2, 3, 4, 5, 6, 7}, {GaussInt(1)});
    FAIL() << "expected search_space_too_large";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), errc::search_space_too_large);
  }
  EXPECT_THROW(scan_candidates(4, {0, 1}, {GaussInt(1)}), Error);
  EXPECT_THROW(scan_candidates(4, {1, 1}, {GaussInt(1)}), Error);
}

}  // namespace
}  // namespace floq
