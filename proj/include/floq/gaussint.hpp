#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include "floq/errors.hpp"

namespace floq {

using BigInt = boost::multiprecision::cpp_int;
using Cplx = std::complex<double>;

// Element of Z[i] with arbitrary-precision components. Symbolic determinants of
// 2m x 2m matrices overflow 64-bit coefficients well before m = 15, so fixed
// width is not an option here.
struct GaussInt {
  BigInt re;
  BigInt im;

  GaussInt() : re(0), im(0) {}
  GaussInt(int r) : re(r), im(0) {}  // NOLINT: plain integers embed in Z[i]
  GaussInt(long long r) : re(r), im(0) {}  // NOLINT
  GaussInt(BigInt r, BigInt i) : re(std::move(r)), im(std::move(i)) {}
  GaussInt(long long r, long long i) : re(r), im(i) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_one() const { return re == 1 && im == 0; }
  GaussInt conj() const { return {re, -im}; }

  Cplx to_cplx() const { return {re.convert_to<double>(), im.convert_to<double>()}; }
  double abs() const { return std::abs(to_cplx()); }

  friend GaussInt operator+(const GaussInt& a, const GaussInt& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussInt operator-(const GaussInt& a, const GaussInt& b) {
    return {a.re - b.re, a.im - b.im};
  }
  GaussInt operator-() const { return {-re, -im}; }
  friend GaussInt operator*(const GaussInt& a, const GaussInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussInt& operator+=(const GaussInt& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussInt& operator-=(const GaussInt& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussInt& operator*=(const GaussInt& o) { return *this = *this * o; }

  friend bool operator==(const GaussInt& a, const GaussInt& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussInt& a, const GaussInt& b) { return !(a == b); }

  // Canonical text form "(a+bi)", the imaginary part always signed:
  // (1+1i), (-2+0i), (0-3i).
  std::string to_string() const {
    std::string s = "(" + re.str();
    s += (im < 0) ? "-" : "+";
    BigInt a = im < 0 ? BigInt(-im) : im;
    s += a.str() + "i)";
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussInt& g) {
    return os << g.to_string();
  }
};

inline const GaussInt kImagUnit{0, 1};

// Parses "0", "-3", "i", "-i", "2i", "1+i", "1-2i", "-1+1i" and the canonical
// parenthesized form. Whitespace is ignored.
inline GaussInt parse_gauss(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') s += c;
  if (s.empty()) fail(errc::bad_argument, "empty Gaussian integer literal");

  auto parse_part = [](std::string p, bool imaginary) -> BigInt {
    if (imaginary) {
      if (p.empty() || p.back() != 'i')
        fail(errc::bad_argument, "missing i suffix in '" + p + "'");
      p.pop_back();
      if (p.empty() || p == "+") return 1;
      if (p == "-") return -1;
    }
    if (!p.empty() && p.front() == '+') p.erase(0, 1);
    if (p.empty()) fail(errc::bad_argument, "empty integer literal");
    try {
      return BigInt(p);
    } catch (const std::exception&) {
      fail(errc::bad_argument, "bad integer literal '" + p + "'");
    }
  };

  // Split at the last top-level +/- that is not the leading sign.
  std::size_t split = std::string::npos;
  for (std::size_t j = s.size(); j-- > 1;) {
    if (s[j] == '+' || s[j] == '-') {
      split = j;
      break;
    }
  }
  if (split == std::string::npos) {
    if (s.back() == 'i') return GaussInt{BigInt(0), parse_part(s, true)};
    return GaussInt{parse_part(s, false), BigInt(0)};
  }
  if (s.back() != 'i')
    fail(errc::bad_argument, "expected imaginary part last in '" + text + "'");
  return GaussInt{parse_part(s.substr(0, split), false), parse_part(s.substr(split), true)};
}

}  // namespace floq
