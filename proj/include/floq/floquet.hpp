#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "floq/charpoly.hpp"
#include "floq/digraph.hpp"
#include "floq/numeric.hpp"

namespace floq {

// One axis of a separable periodic potential: q values, exact (Z[i]) or
// floating.
class Potential1D {
 public:
  static Potential1D exact(std::vector<GaussInt> values) {
    if (values.empty()) fail(errc::bad_argument, "potential needs a positive period");
    Potential1D p;
    p.exact_ = true;
    p.gvals_ = std::move(values);
    return p;
  }

  static Potential1D numeric(std::vector<Cplx> values) {
    if (values.empty()) fail(errc::bad_argument, "potential needs a positive period");
    Potential1D p;
    p.exact_ = false;
    p.fvals_ = std::move(values);
    return p;
  }

  static Potential1D zero(int period) {
    if (period < 1) fail(errc::bad_argument, "potential needs a positive period");
    return exact(std::vector<GaussInt>(static_cast<std::size_t>(period), GaussInt(0)));
  }

  int period() const { return static_cast<int>(exact_ ? gvals_.size() : fvals_.size()); }
  bool is_exact() const { return exact_; }

  const std::vector<GaussInt>& exact_values() const {
    if (!exact_) fail(errc::bad_argument, "potential holds floating values");
    return gvals_;
  }

  std::vector<Cplx> numeric_values() const {
    if (!exact_) return fvals_;
    std::vector<Cplx> out;
    out.reserve(gvals_.size());
    for (const GaussInt& g : gvals_) out.push_back(g.to_cplx());
    return out;
  }

  double max_abs() const {
    double m = 0.0;
    for (const Cplx& v : numeric_values()) m = std::max(m, std::abs(v));
    return m;
  }

  Potential1D conjugated() const {
    if (exact_) {
      std::vector<GaussInt> out;
      out.reserve(gvals_.size());
      for (const GaussInt& g : gvals_) out.push_back(g.conj());
      return exact(std::move(out));
    }
    std::vector<Cplx> out;
    out.reserve(fvals_.size());
    for (const Cplx& v : fvals_) out.push_back(std::conj(v));
    return numeric(std::move(out));
  }

 private:
  Potential1D() = default;
  bool exact_ = true;
  std::vector<GaussInt> gvals_;
  std::vector<Cplx> fvals_;
};

// V(n) = V_1(n_1) + ... + V_d(n_d) on the lattice q_1 Z + ... + q_d Z.
struct SeparablePotential {
  std::vector<Potential1D> axes;

  int dim() const { return static_cast<int>(axes.size()); }

  static SeparablePotential zero_like(const SeparablePotential& v) {
    SeparablePotential z;
    for (const Potential1D& a : v.axes) z.axes.push_back(Potential1D::zero(a.period()));
    return z;
  }
};

class Quasimomentum {
 public:
  explicit Quasimomentum(std::vector<double> k) : k_(std::move(k)) {
    for (double x : k_)
      if (!(x >= 0.0 && x <= 1.0)) fail(errc::bad_argument, "quasimomentum components lie in [0,1]");
  }
  static Quasimomentum zero(int dim) {
    return Quasimomentum(std::vector<double>(static_cast<std::size_t>(dim), 0.0));
  }
  int dim() const { return static_cast<int>(k_.size()); }
  double operator[](int j) const { return k_[static_cast<std::size_t>(j)]; }
  const std::vector<double>& components() const { return k_; }

 private:
  std::vector<double> k_;
};

// The explicit 2m-periodic potential (1+i, 1-i, 0, ..., 0, -1+i, -1-i, 0, ..., 0)
// with the nonzero values at positions 1, 2, m+1, m+2. m = 1 would put two
// values at position 2, hence the bound.
inline Potential1D paper_potential(int m) {
  if (m < 2) fail(errc::m_too_small, "paper potential needs m >= 2");
  std::vector<GaussInt> v(static_cast<std::size_t>(2 * m), GaussInt(0));
  v[0] = GaussInt(1, 1);
  v[1] = GaussInt(1, -1);
  v[static_cast<std::size_t>(m)] = GaussInt(-1, 1);
  v[static_cast<std::size_t>(m) + 1] = GaussInt(-1, -1);
  return Potential1D::exact(std::move(v));
}

namespace detail {

// Adds one unit per Laplacian hop. Entries accumulate, which is what makes
// q = 2 come out right: both hops land on the same neighbour.
template <typename T>
void add_hops(Matrix<T>& m, const T& up, const T& down) {
  const std::size_t q = m.rows();
  const T one = [] {
    if constexpr (std::is_same_v<T, MultiPoly>)
      return MultiPoly::constant(GaussInt(1));
    else
      return T(1.0);
  }();
  for (std::size_t i = 0; i < q; ++i) {
    if (i + 1 < q)
      m(i, i + 1) += one;
    else
      m(i, 0) += up;  // wrap (q,1)
    if (i > 0)
      m(i, i - 1) += one;
    else
      m(0, q - 1) += down;  // wrap (1,q)
  }
}

}  // namespace detail

// Exact Floquet matrix; only k = 0 keeps the corners in Z[i].
inline Matrix<MultiPoly> floquet_matrix_exact(const Potential1D& v, double k = 0.0) {
  if (v.period() < 2) fail(errc::period_too_small, "Floquet matrix needs period >= 2");
  if (k != 0.0) fail(errc::exact_mode_needs_k_zero, "exact mode requires k = 0");
  const auto& vals = v.exact_values();
  const std::size_t q = vals.size();
  Matrix<MultiPoly> m(q, q);
  for (std::size_t i = 0; i < q; ++i) m(i, i) = MultiPoly::constant(vals[i]);
  const MultiPoly one = MultiPoly::constant(GaussInt(1));
  detail::add_hops(m, one, one);
  return m;
}

inline Matrix<Cplx> floquet_matrix_numeric(const Potential1D& v, double k) {
  if (v.period() < 2) fail(errc::period_too_small, "Floquet matrix needs period >= 2");
  const auto vals = v.numeric_values();
  const std::size_t q = vals.size();
  Matrix<Cplx> m(q, q);
  for (std::size_t i = 0; i < q; ++i) m(i, i) = vals[i];
  const double theta = 2.0 * std::numbers::pi * k;
  detail::add_hops(m, std::exp(Cplx(0.0, theta)), std::exp(Cplx(0.0, -theta)));
  return m;
}

// D_v at k = 0 with the four-slot symbolic diagonal: v1, v2 at sites 1, 2 and
// v3, v4 at sites m+1, m+2.
inline Matrix<MultiPoly> pattern_floquet_matrix(int m) {
  if (m < 2) fail(errc::m_too_small, "potential pattern needs m >= 2");
  const std::size_t q = static_cast<std::size_t>(2 * m);
  Matrix<MultiPoly> mat(q, q);
  mat(0, 0) = MultiPoly::variable(var_v(1));
  mat(1, 1) = MultiPoly::variable(var_v(2));
  mat(static_cast<std::size_t>(m), static_cast<std::size_t>(m)) = MultiPoly::variable(var_v(3));
  mat(static_cast<std::size_t>(m) + 1, static_cast<std::size_t>(m) + 1) =
      MultiPoly::variable(var_v(4));
  const MultiPoly one = MultiPoly::constant(GaussInt(1));
  detail::add_hops(mat, one, one);
  return mat;
}

// D_v at k = 0 with a fully symbolic diagonal v1..vq.
inline Matrix<MultiPoly> symbolic_floquet_matrix(int q) {
  if (q < 2) fail(errc::period_too_small, "Floquet matrix needs period >= 2");
  const std::size_t n = static_cast<std::size_t>(q);
  Matrix<MultiPoly> mat(n, n);
  for (std::size_t i = 0; i < n; ++i)
    mat(i, i) = MultiPoly::variable(var_v(static_cast<std::uint32_t>(i) + 1));
  const MultiPoly one = MultiPoly::constant(GaussInt(1));
  detail::add_hops(mat, one, one);
  return mat;
}

inline constexpr std::size_t kMaxDirectKroneckerDim = 256;

// Materialized Q x Q Floquet matrix of a separable potential; cross-check
// path only, hence the tight guard.
inline Matrix<Cplx> floquet_matrix_nd(const SeparablePotential& v, const Quasimomentum& k) {
  if (v.dim() < 1) fail(errc::bad_argument, "potential needs at least one axis");
  if (k.dim() != v.dim()) fail(errc::bad_argument, "quasimomentum dimension mismatch");
  std::size_t total = 1;
  std::vector<std::size_t> periods;
  std::vector<std::vector<Cplx>> vals;
  for (const Potential1D& axis : v.axes) {
    if (axis.period() < 2) fail(errc::period_too_small, "axis periods must be >= 2");
    periods.push_back(static_cast<std::size_t>(axis.period()));
    vals.push_back(axis.numeric_values());
    total *= periods.back();
    if (total > kMaxDirectKroneckerDim)
      fail(errc::dimension_too_large, "direct Kronecker-sum path is guarded at Q = 256");
  }
  const int d = v.dim();

  // Site index: axis 0 fastest, idx = n_0 + q_0*(n_1 + q_1*(...)).
  auto decode = [&](std::size_t idx) {
    std::vector<std::size_t> digits(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
      digits[static_cast<std::size_t>(j)] = idx % periods[static_cast<std::size_t>(j)];
      idx /= periods[static_cast<std::size_t>(j)];
    }
    return digits;
  };
  std::vector<std::size_t> stride(static_cast<std::size_t>(d), 1);
  for (int j = 1; j < d; ++j)
    stride[static_cast<std::size_t>(j)] =
        stride[static_cast<std::size_t>(j) - 1] * periods[static_cast<std::size_t>(j) - 1];

  Matrix<Cplx> m(total, total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    auto digits = decode(idx);
    Cplx diag = 0.0;
    for (int j = 0; j < d; ++j) diag += vals[static_cast<std::size_t>(j)][digits[static_cast<std::size_t>(j)]];
    m(idx, idx) += diag;
    for (int j = 0; j < d; ++j) {
      const std::size_t sj = static_cast<std::size_t>(j);
      const std::size_t qj = periods[sj];
      const double theta = 2.0 * std::numbers::pi * k[j];
      // hop up in axis j
      if (digits[sj] + 1 < qj)
        m(idx, idx + stride[sj]) += 1.0;
      else
        m(idx, idx - (qj - 1) * stride[sj]) += std::exp(Cplx(0.0, theta));
      // hop down
      if (digits[sj] > 0)
        m(idx, idx - stride[sj]) += 1.0;
      else
        m(idx, idx + (qj - 1) * stride[sj]) += std::exp(Cplx(0.0, -theta));
    }
  }
  return m;
}

// P(lambda) = det(M - lambda I) through the cycle-cover expansion, collected
// by lambda power. Entries may involve the v variables but not lambda itself.
inline CharPoly charpoly_exact(const Matrix<MultiPoly>& m) {
  if (!m.square()) fail(errc::non_square, "characteristic polynomial of a non-square matrix");
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m(i, j).degree_in(kLambda) > 0)
        fail(errc::bad_argument, "matrix entries must not involve lambda");
  Matrix<MultiPoly> shifted = m;
  for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= MultiPoly::lambda();
  MultiPoly det = det_by_covers(digraph_of_matrix(shifted));
  CharPoly p;
  p.coeffs.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) p.coeffs.push_back(det.coeff_of_lambda(static_cast<std::uint32_t>(i)));
  const GaussInt lead = (n % 2 == 0) ? GaussInt(1) : GaussInt(-1);
  if (p.coeffs[n] != MultiPoly::constant(lead))
    throw std::logic_error("characteristic polynomial lost its leading coefficient");
  return p;
}

// F_i(v) = [lambda^i](P_v - P_0) for the four-slot pattern, i = 0..2m-1.
// F_2m vanishes identically and is asserted rather than returned.
inline std::vector<MultiPoly> f_coeff_symbolic(int m) {
  CharPoly pv = charpoly_exact(pattern_floquet_matrix(m));
  CharPoly p0 = charpoly_exact(floquet_matrix_exact(Potential1D::zero(2 * m)));
  if (pv.coeffs[static_cast<std::size_t>(2 * m)] != p0.coeffs[static_cast<std::size_t>(2 * m)])
    throw std::logic_error("leading coefficients of P_v and P_0 must agree");
  std::vector<MultiPoly> f(static_cast<std::size_t>(2 * m));
  for (int i = 0; i < 2 * m; ++i)
    f[static_cast<std::size_t>(i)] =
        pv.coeffs[static_cast<std::size_t>(i)] - p0.coeffs[static_cast<std::size_t>(i)];
  return f;
}

namespace detail {

inline GaussInt gi_of(std::uint64_t x) { return GaussInt(static_cast<long long>(x)); }

inline MultiPoly v_poly(std::uint32_t j) { return MultiPoly::variable(var_v(j)); }

}  // namespace detail

// Closed form for F_{2m-k}(v). Validated range: k = 2*ell or 2*ell + 1 with
// 1 <= ell <= m-1; everything else (including k = 1 and k = 2m, which the
// theorem's ranges omit) is rejected rather than extrapolated.
inline MultiPoly f_closed_form(int m, int k) {
  if (m < 2) fail(errc::m_too_small, "closed form needs m >= 2");
  if (k < 2 || k > 2 * m - 1)
    fail(errc::k_out_of_range, "closed form validated for 2 <= k <= 2m-1");
  using detail::gi_of;
  using detail::v_poly;
  const MultiPoly v1 = v_poly(1), v2 = v_poly(2), v3 = v_poly(3), v4 = v_poly(4);
  const int ell = k / 2;
  const GaussInt sign_ell = (ell % 2 == 0) ? GaussInt(1) : GaussInt(-1);
  if (k % 2 == 0) {
    std::uint64_t quart = 0;
    for (int i = 0; i <= ell - 2; ++i) quart += s_closed(m - 2, i) * s_closed(m - 2, ell - 2 - i);
    std::uint64_t pair13 = 0, pair14 = 0;
    for (int i = 0; i <= ell - 1; ++i) {
      pair13 += s_closed(m - 1, i) * s_closed(m - 1, ell - 1 - i);
      pair14 += s_closed(m, i) * s_closed(m - 2, ell - 1 - i);
    }
    const std::uint64_t pair12 = s_closed(2 * m - 2, ell - 1);
    MultiPoly f = sign_ell * gi_of(quart) * (v1 * v2 * v3 * v4);
    MultiPoly pairs = gi_of(pair12) * (v1 * v2 + v3 * v4) +
                      gi_of(pair13) * (v1 * v3 + v2 * v4) +
                      gi_of(pair14) * (v1 * v4 + v2 * v3);
    f -= sign_ell * pairs;  // (-1)^(ell-1) = -(-1)^ell
    return f;
  }
  std::uint64_t cubic = 0;
  for (int i = 0; i <= ell - 1; ++i) cubic += s_closed(m - 2, i) * s_closed(m - 1, ell - 1 - i);
  const std::uint64_t linear = s_closed(2 * m - 1, ell);
  const MultiPoly e3 = v1 * v2 * v3 + v1 * v2 * v4 + v1 * v3 * v4 + v2 * v3 * v4;
  const MultiPoly e1 = v1 + v2 + v3 + v4;
  return sign_ell * gi_of(cubic) * e3 - sign_ell * gi_of(linear) * e1;
}

// S(2m-2, ell-1) = sum S(m-2,i)S(m-2,ell-2-i) + sum S(m-1,i)S(m-1,ell-1-i),
// each side computed both by enumeration and by the closed form.
inline bool identity_check(int m, int ell) {
  if (m < 2) fail(errc::m_too_small, "identity needs m >= 2");
  if (ell < 1) fail(errc::bad_argument, "identity needs ell >= 1");
  const std::uint64_t lhs_enum = s_count(2 * m - 2, ell - 1);
  const std::uint64_t lhs_closed = s_closed(2 * m - 2, ell - 1);
  std::uint64_t rhs_enum = 0, rhs_closed = 0;
  for (int i = 0; i <= ell - 2; ++i) {
    rhs_enum += s_count(m - 2, i) * s_count(m - 2, ell - 2 - i);
    rhs_closed += s_closed(m - 2, i) * s_closed(m - 2, ell - 2 - i);
  }
  for (int i = 0; i <= ell - 1; ++i) {
    rhs_enum += s_count(m - 1, i) * s_count(m - 1, ell - 1 - i);
    rhs_closed += s_closed(m - 1, i) * s_closed(m - 1, ell - 1 - i);
  }
  return lhs_enum == lhs_closed && rhs_enum == rhs_closed && lhs_enum == rhs_enum;
}

struct Theorem33Report {
  int m = 0;
  bool equal = false;
  CharPoly p_v;
  CharPoly p_0;
};

// Exact comparison of the characteristic polynomials of D_v and D_0 at the
// paper potential.
inline Theorem33Report verify_theorem_3_3(int m) {
  Theorem33Report r;
  r.m = m;
  r.p_v = charpoly_exact(floquet_matrix_exact(paper_potential(m)));
  r.p_0 = charpoly_exact(floquet_matrix_exact(Potential1D::zero(2 * m)));
  r.equal = r.p_v == r.p_0;
  return r;
}

inline constexpr std::size_t kMaxSpectrumSize = 4096;

namespace detail {

inline bool cplx_less(const Cplx& a, const Cplx& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

inline std::vector<Cplx> axis_roots_sorted(const Potential1D& v, double k) {
  auto roots = poly_roots(charpoly_numeric(floquet_matrix_numeric(v, k)));
  std::sort(roots.begin(), roots.end(), cplx_less);
  return roots;
}

// Walks the product lattice of the axis value lists, last axis fastest.
template <typename Fn>
void for_each_lattice(const std::vector<std::size_t>& sizes, Fn&& fn) {
  std::vector<std::size_t> idx(sizes.size(), 0);
  if (sizes.empty()) return;
  for (;;) {
    fn(idx);
    std::size_t j = sizes.size();
    while (j-- > 0) {
      if (++idx[j] < sizes[j]) break;
      idx[j] = 0;
      if (j == 0) return;
    }
  }
}

inline void check_axes(const SeparablePotential& v, const Quasimomentum& k) {
  if (v.dim() < 1) fail(errc::bad_argument, "potential needs at least one axis");
  if (k.dim() != v.dim()) fail(errc::bad_argument, "quasimomentum dimension mismatch");
  for (const Potential1D& axis : v.axes) {
    if (axis.period() < 2) fail(errc::period_too_small, "axis periods must be >= 2");
    if (static_cast<std::size_t>(axis.period()) > kMaxNumericDim)
      fail(errc::axis_too_large, "axis periods are guarded at 64");
  }
}

}  // namespace detail

// Eigenvalues of D_V(k) for separable V as the Minkowski sum of the axis
// spectra, sorted by (re, im); multiplicities kept.
inline std::vector<Cplx> spectrum_separable(const SeparablePotential& v, const Quasimomentum& k) {
  detail::check_axes(v, k);
  std::size_t total = 1;
  std::vector<std::vector<Cplx>> roots;
  std::vector<std::size_t> sizes;
  for (int j = 0; j < v.dim(); ++j) {
    roots.push_back(detail::axis_roots_sorted(v.axes[static_cast<std::size_t>(j)], k[j]));
    sizes.push_back(roots.back().size());
    total *= sizes.back();
    if (total > kMaxSpectrumSize)
      fail(errc::axis_too_large, "materialized spectrum is guarded at Q = 4096");
  }
  std::vector<Cplx> out;
  out.reserve(total);
  detail::for_each_lattice(sizes, [&](const std::vector<std::size_t>& idx) {
    Cplx s = 0.0;
    for (std::size_t j = 0; j < idx.size(); ++j) s += roots[j][idx[j]];
    out.push_back(s);
  });
  std::sort(out.begin(), out.end(), detail::cplx_less);
  return out;
}

// Compares det(lambda I - D_V(k)) and det(lambda I - D_W(k)) at Q+1 sample
// points on the circle of radius R = 2d + max|v| + 1, strictly outside both
// spectra (Gershgorin). Computed as a product of per-eigenvalue factor
// ratios, which stays O(1) in magnitude regardless of Q.
inline bool isospectral_numeric(const SeparablePotential& v, const SeparablePotential& w,
                                const Quasimomentum& k, double tol) {
  if (v.dim() != w.dim()) fail(errc::lattice_mismatch, "potentials live on different lattices");
  for (int j = 0; j < v.dim(); ++j)
    if (v.axes[static_cast<std::size_t>(j)].period() != w.axes[static_cast<std::size_t>(j)].period())
      fail(errc::lattice_mismatch, "potentials live on different lattices");
  detail::check_axes(v, k);
  detail::check_axes(w, k);

  const int d = v.dim();
  std::size_t total = 1;
  double vmax = 0.0;
  std::vector<std::vector<Cplx>> roots_v, roots_w;
  std::vector<std::size_t> sizes;
  for (int j = 0; j < d; ++j) {
    const auto& av = v.axes[static_cast<std::size_t>(j)];
    const auto& aw = w.axes[static_cast<std::size_t>(j)];
    vmax = std::max({vmax, av.max_abs(), aw.max_abs()});
    roots_v.push_back(detail::axis_roots_sorted(av, k[j]));
    roots_w.push_back(detail::axis_roots_sorted(aw, k[j]));
    sizes.push_back(roots_v.back().size());
    total *= sizes.back();
  }
  const double radius = 2.0 * d + vmax + 1.0;

  for (std::size_t s = 0; s <= total; ++s) {
    const double angle =
        2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(total + 1);
    const Cplx sample = radius * std::exp(Cplx(0.0, angle));
    Cplx ratio = 1.0;
    detail::for_each_lattice(sizes, [&](const std::vector<std::size_t>& idx) {
      Cplx sum_v = 0.0, sum_w = 0.0;
      for (std::size_t j = 0; j < idx.size(); ++j) {
        sum_v += roots_v[j][idx[j]];
        sum_w += roots_w[j][idx[j]];
      }
      ratio *= (sample - sum_v) / (sample - sum_w);
    });
    if (std::abs(ratio - 1.0) > tol) return false;
  }
  return true;
}

}  // namespace floq
