#pragma once

#include <vector>

#include "floq/multipoly.hpp"

namespace floq {

// Characteristic polynomial P(lambda) = det(D - lambda I) as an ascending
// coefficient list; coeffs[degree()] is (-1)^Q.
template <typename CoeffT>
struct BasicCharPoly {
  std::vector<CoeffT> coeffs;  // indexed 0..Q

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

using CharPoly = BasicCharPoly<MultiPoly>;
using CharPolyNum = BasicCharPoly<Cplx>;

inline bool operator==(const CharPoly& a, const CharPoly& b) { return a.coeffs == b.coeffs; }

// Reassembles sum coeffs[i] * lambda^i, mostly for printing reports.
inline MultiPoly charpoly_to_poly(const CharPoly& p) {
  MultiPoly acc;
  MultiPoly lam_pow = MultiPoly::constant(GaussInt(1));
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
    acc += p.coeffs[i] * lam_pow;
    lam_pow *= MultiPoly::lambda();
  }
  return acc;
}

}  // namespace floq
