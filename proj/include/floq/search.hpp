#pragma once

#include <algorithm>
#include <cstdint>
#include <future>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "floq/floquet.hpp"

namespace floq {

// The isospectrality-to-zero conditions F_0 = ... = F_{q-1} = 0 in fully
// symbolic v_1..v_q.
struct PolySystem {
  std::vector<VarId> variables;
  std::vector<MultiPoly> equations;
};

inline PolySystem gen_system(int q) {
  if (q < 3) fail(errc::period_too_small, "system generation needs period >= 3");
  CharPoly pv = charpoly_exact(symbolic_floquet_matrix(q));
  CharPoly p0 = charpoly_exact(floquet_matrix_exact(Potential1D::zero(q)));
  PolySystem sys;
  for (int j = 1; j <= q; ++j) sys.variables.push_back(var_v(static_cast<std::uint32_t>(j)));
  for (int i = 0; i < q; ++i)
    sys.equations.push_back(pv.coeffs[static_cast<std::size_t>(i)] -
                            p0.coeffs[static_cast<std::size_t>(i)]);
  return sys;
}

namespace detail {

// Macaulay2 rendering: Gaussian coefficients become (a+b*im) over
// QQ[im]/(im^2+1).
inline std::string m2_coeff(const GaussInt& c) {
  std::string s = "(" + c.re.str();
  s += (c.im < 0) ? "-" : "+";
  BigInt a = c.im < 0 ? BigInt(-c.im) : c.im;
  s += a.str() + "*im)";
  return s;
}

inline std::string m2_poly(const MultiPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    if (!s.empty()) s += " + ";
    s += m2_coeff(it->second);
    for (const auto& [var, exp] : it->first.factors()) {
      s += "*" + var_name(var);
      if (exp > 1) s += "^" + std::to_string(exp);
    }
  }
  return s;
}

}  // namespace detail

// Self-contained Macaulay2 script: the Gaussian rationals as QQ with an
// adjoined square root of -1, the ideal of the equations, and a
// decomposition of its zero set. Output is byte-stable for a fixed system.
inline std::string export_m2(const PolySystem& sys) {
  std::ostringstream out;
  out << "-- Floquet isospectrality system in " << sys.variables.size() << " variables\n";
  out << "A = QQ[im];\n";
  out << "K = toField(A/ideal(im^2+1));\n";
  if (!sys.variables.empty()) {
    out << "R = K[";
    for (std::size_t j = 0; j < sys.variables.size(); ++j)
      out << (j ? ", " : "") << var_name(sys.variables[j]);
    out << "];\n";
  }
  if (sys.equations.empty()) return out.str();
  out << "I = ideal(\n";
  for (std::size_t j = 0; j < sys.equations.size(); ++j)
    out << "  " << detail::m2_poly(sys.equations[j]) << (j + 1 < sys.equations.size() ? "," : "") << "\n";
  out << ");\n";
  out << "print dim I;\n";
  out << "print degree I;\n";
  out << "comps = decompose I;\n";
  out << "scan(comps, C -> print C);\n";
  return out.str();
}

struct CandidateReport {
  Potential1D candidate;
  std::vector<GaussInt> residuals;  // indexed by equation
  bool isospectral = false;
};

// Residuals of the full system at an exact candidate. Membership is decided
// exactly; no tolerances involved.
inline CandidateReport verify_candidate(const Potential1D& v) {
  PolySystem sys = gen_system(v.period());
  const auto& vals = v.exact_values();
  std::map<VarId, GaussInt> assign;
  for (std::size_t j = 0; j < vals.size(); ++j)
    assign[var_v(static_cast<std::uint32_t>(j) + 1)] = vals[j];
  CandidateReport report{v, {}, true};
  for (const MultiPoly& eq : sys.equations) {
    report.residuals.push_back(eq.eval_exact(assign));
    if (!report.residuals.back().is_zero()) report.isospectral = false;
  }
  return report;
}

inline constexpr std::uint64_t kMaxScanAssignments = 10'000'000;
inline constexpr std::size_t kMaxScanSlots = 6;

// Exhaustive scan of palette values over the given slots (1-based positions
// within the period, zeros elsewhere). Returns the exact solutions in
// assignment order: slots are odometer digits, last slot fastest, palette in
// the given order. The linear trace equation is evaluated first to discard
// most assignments cheaply.
inline std::vector<CandidateReport> scan_candidates(int q, const std::vector<int>& slots,
                                                    const std::vector<GaussInt>& palette,
                                                    unsigned threads = 1) {
  if (slots.size() > kMaxScanSlots) fail(errc::search_space_too_large, "at most 6 slots");
  if (palette.empty()) fail(errc::bad_argument, "empty palette");
  for (int s : slots)
    if (s < 1 || s > q) fail(errc::bad_argument, "slot positions lie in 1..q");
  for (std::size_t a = 0; a < slots.size(); ++a)
    for (std::size_t b = a + 1; b < slots.size(); ++b)
      if (slots[a] == slots[b]) fail(errc::bad_argument, "slot positions must be distinct");

  std::uint64_t space = 1;
  for (std::size_t j = 0; j < slots.size(); ++j) {
    space *= palette.size();
    if (space > kMaxScanAssignments)
      fail(errc::search_space_too_large, "assignment space exceeds 10^7");
  }

  PolySystem sys = gen_system(q);
  // Evaluation order: the degree-1 trace equation first, then the rest.
  std::vector<std::size_t> eval_order;
  for (std::size_t e = 0; e < sys.equations.size(); ++e)
    if (sys.equations[e].total_degree() == 1) eval_order.push_back(e);
  for (std::size_t e = 0; e < sys.equations.size(); ++e)
    if (sys.equations[e].total_degree() != 1) eval_order.push_back(e);

  auto scan_range = [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<CandidateReport> found;
    std::vector<GaussInt> values(static_cast<std::size_t>(q), GaussInt(0));
    for (std::uint64_t code = begin; code < end; ++code) {
      std::uint64_t rest = code;
      for (std::size_t j = slots.size(); j-- > 0;) {
        values[static_cast<std::size_t>(slots[j]) - 1] = palette[rest % palette.size()];
        rest /= palette.size();
      }
      std::map<VarId, GaussInt> assign;
      for (std::size_t j = 0; j < values.size(); ++j)
        assign[var_v(static_cast<std::uint32_t>(j) + 1)] = values[j];
      bool solves = true;
      for (std::size_t e : eval_order)
        if (!sys.equations[e].eval_exact(assign).is_zero()) {
          solves = false;
          break;
        }
      if (!solves) continue;
      CandidateReport r{Potential1D::exact(values), {}, true};
      for (const MultiPoly& eq : sys.equations) r.residuals.push_back(eq.eval_exact(assign));
      found.push_back(std::move(r));
    }
    return found;
  };

  if (threads <= 1 || space < 1024) return scan_range(0, space);

  const std::uint64_t chunk = (space + threads - 1) / threads;
  std::vector<std::future<std::vector<CandidateReport>>> futures;
  for (std::uint64_t begin = 0; begin < space; begin += chunk)
    futures.push_back(std::async(std::launch::async, scan_range, begin,
                                 std::min(space, begin + chunk)));
  std::vector<CandidateReport> all;
  for (auto& f : futures) {
    auto part = f.get();
    all.insert(all.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return all;
}

}  // namespace floq
