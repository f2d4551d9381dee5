#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "floq/charpoly.hpp"
#include "floq/errors.hpp"
#include "floq/matrix.hpp"

namespace floq {

inline constexpr std::size_t kMaxNumericDim = 64;

// Faddeev-LeVerrier trace recursion. Exact in floating point for small
// integer matrices (all intermediates are integers below 2^53).
inline CharPolyNum charpoly_numeric(const Matrix<Cplx>& a) {
  if (!a.square()) fail(errc::non_square, "characteristic polynomial of a non-square matrix");
  const std::size_t n = a.rows();
  if (n > kMaxNumericDim) fail(errc::dimension_too_large, "charpoly_numeric is guarded at 64");

  // det(lambda I - A) = lambda^n + c[1] lambda^(n-1) + ... + c[n]
  std::vector<Cplx> c(n + 1);
  c[0] = 1.0;
  Matrix<Cplx> m(n, n);  // zero
  for (std::size_t k = 1; k <= n; ++k) {
    // m <- a*m + c[k-1] * I
    Matrix<Cplx> am(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Cplx s = 0.0;
        for (std::size_t t = 0; t < n; ++t) s += a(i, t) * m(t, j);
        am(i, j) = s;
      }
    for (std::size_t i = 0; i < n; ++i) am(i, i) += c[k - 1];
    m = am;
    Cplx tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      Cplx s = 0.0;
      for (std::size_t t = 0; t < n; ++t) s += a(i, t) * m(t, i);
      tr += s;
    }
    c[k] = -tr / static_cast<double>(k);
  }

  // P(lambda) = det(A - lambda I) = (-1)^n det(lambda I - A)
  CharPolyNum p;
  p.coeffs.resize(n + 1);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  for (std::size_t i = 0; i <= n; ++i) p.coeffs[i] = sign * c[n - i];
  return p;
}

inline Cplx eval_poly(const std::vector<Cplx>& coeffs, Cplx x) {
  Cplx acc = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

// Durand-Kerner simultaneous iteration with fixed starting points, so runs
// are reproducible. Good to ~1e-12 on the well-separated spectra here;
// clustered double roots split symmetrically, which downstream products
// tolerate.
inline std::vector<Cplx> poly_roots(const CharPolyNum& p) {
  std::vector<Cplx> c = p.coeffs;
  while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
  if (c.size() <= 1) return {};
  const std::size_t n = c.size() - 1;
  const Cplx lead = c.back();
  for (Cplx& x : c) x /= lead;

  double radius = 0.0;
  for (std::size_t i = 0; i < n; ++i) radius = std::max(radius, std::abs(c[i]));
  radius = 1.0 + radius;

  std::vector<Cplx> z(n);
  const Cplx seed(0.4, 0.9);
  Cplx w = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    w *= seed;
    z[i] = radius * w;
  }

  for (int iter = 0; iter < 2000; ++iter) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      Cplx num = eval_poly(c, z[i]);
      Cplx den = 1.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) den *= z[i] - z[j];
      Cplx delta = num / den;
      z[i] -= delta;
      worst = std::max(worst, std::abs(delta));
    }
    if (worst < 1e-14 * radius) break;
  }
  return z;
}

// LU with partial pivoting; cross-check path for the Kronecker-sum matrices.
inline Cplx det_lu(Matrix<Cplx> m) {
  if (!m.square()) fail(errc::non_square, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Cplx det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m(r, col)) > std::abs(m(pivot, col))) pivot = r;
    if (std::abs(m(pivot, col)) == 0.0) return 0.0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      Cplx f = m(r, col) / m(col, col);
      for (std::size_t j = col; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return det;
}

}  // namespace floq
