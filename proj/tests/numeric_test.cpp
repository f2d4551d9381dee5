#include "floq/numeric.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "floq/floquet.hpp"

namespace floq {
namespace {

double rel_err(const Cplx& got, const Cplx& want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

TEST(CharpolyNumeric, D0PeriodFour) {
  Matrix<Cplx> m = floquet_matrix_numeric(Potential1D::zero(4), 0.0);
  CharPolyNum p = charpoly_numeric(m);
  const Cplx expected[5] = {{0, 0}, {0, 0}, {-4, 0}, {0, 0}, {1, 0}};
  ASSERT_EQ(p.coeffs.size(), 5u);
  for (int i = 0; i < 5; ++i) EXPECT_LT(rel_err(p.coeffs[i], expected[i]), 1e-9) << i;
}

TEST(CharpolyNumeric, IdentityThree) {
  Matrix<Cplx> m = Matrix<Cplx>::identity(3, 1.0);
  CharPolyNum p = charpoly_numeric(m);
  // (1 - lambda)^3 = 1 - 3l + 3l^2 - l^3
  const Cplx expected[4] = {{1, 0}, {-3, 0}, {3, 0}, {-1, 0}};
  for (int i = 0; i < 4; ++i) EXPECT_LT(rel_err(p.coeffs[i], expected[i]), 1e-12) << i;
}

TEST(CharpolyNumeric, MatchesExactOnRandomIntegerMatrices) {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> val(-4, 4);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 5;
    Matrix<MultiPoly> exact(n, n);
    Matrix<Cplx> numeric(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        int re = val(rng), im = val(rng);
        exact(i, j) = MultiPoly::constant(GaussInt(re, im));
        numeric(i, j) = Cplx(re, im);
      }
    CharPoly pe = charpoly_exact(exact);
    CharPolyNum pn = charpoly_numeric(numeric);
    ASSERT_EQ(pe.coeffs.size(), pn.coeffs.size());
    for (std::size_t i = 0; i < pe.coeffs.size(); ++i)
      EXPECT_LT(rel_err(pn.coeffs[i], pe.coeffs[i].constant_term().to_cplx()), 1e-9);
  }
}

TEST(CharpolyNumeric, DimensionGuard) {
  Matrix<Cplx> m(65, 65);
  try {
    charpoly_numeric(m);
    FAIL() << "expected dimension_too_large";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), errc::dimension_too_large);
  }
}

TEST(PolyRoots, D0PeriodFour) {
  CharPolyNum p;
  p.coeffs = {{0, 0}, {0, 0}, {-4, 0}, {0, 0}, {1, 0}};  // l^4 - 4 l^2
  auto roots = poly_roots(p);
  ASSERT_EQ(roots.size(), 4u);
  std::sort(roots.begin(), roots.end(),
            [](const Cplx& a, const Cplx& b) { return a.real() < b.real(); });
  const double expected[4] = {-2, 0, 0, 2};
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(roots[i].real(), expected[i], 1e-7);
    EXPECT_NEAR(roots[i].imag(), 0.0, 1e-7);
  }
}

TEST(PolyRoots, ReproducesCharpolyProduct) {
  // p(x) must match lead * prod (x - root) at a few probe points
  std::mt19937 rng(555);
  std::uniform_int_distribution<int> val(-3, 3);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 6;
    Matrix<Cplx> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = Cplx(val(rng), val(rng));
    CharPolyNum p = charpoly_numeric(m);
    auto roots = poly_roots(p);
    ASSERT_EQ(roots.size(), n);
    for (double probe : {15.0, -17.5}) {
      Cplx direct = eval_poly(p.coeffs, {probe, 0.5});
      Cplx product = p.coeffs.back();
      for (const Cplx& r : roots) product *= Cplx(probe, 0.5) - r;
      EXPECT_LT(std::abs(direct - product) / std::abs(direct), 1e-8);
    }
  }
}

TEST(DetLU, MatchesLeibnizBruteForce) {
  std::mt19937 rng(808);
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix<Cplx> m(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = Cplx(val(rng), val(rng));
    // brute force over the 24 permutations
    int perm[4] = {0, 1, 2, 3};
    Cplx det = 0.0;
    std::sort(perm, perm + 4);
    do {
      int inv = 0;
      for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) inv += perm[a] > perm[b];
      Cplx term = inv % 2 == 0 ? 1.0 : -1.0;
      for (int i = 0; i < 4; ++i) term *= m(i, perm[i]);
      det += term;
    } while (std::next_permutation(perm, perm + 4));
    EXPECT_LT(std::abs(det_lu(m) - det) / std::max(1.0, std::abs(det)), 1e-12);
  }
}

}  // namespace
}  // namespace floq
