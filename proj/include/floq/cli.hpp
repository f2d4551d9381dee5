#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "floq/json_io.hpp"
#include "floq/search.hpp"

namespace floq {
namespace cli {

inline std::string fmt_double(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::string fmt_cplx(const Cplx& z) {
  std::string s = fmt_double(z.real());
  s += (z.imag() < 0 ? "-" : "+") + fmt_double(std::abs(z.imag())) + "i";
  return s;
}

inline std::vector<GaussInt> parse_palette(const std::string& text) {
  std::vector<GaussInt> palette;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) palette.push_back(parse_gauss(item));
  if (palette.empty()) fail(errc::bad_argument, "empty palette");
  return palette;
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool json = false;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0 = hardware concurrency
  int exit_code = 0;

  unsigned worker_threads() const {
    if (threads > 0) return threads;
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? hc : 1;
  }

  void emit(const Json& j) { out << j.dump(2) << "\n"; }
};

namespace detail {

inline void cmd_verify(Context& ctx, int m) {
  Theorem33Report rep = verify_theorem_3_3(m);
  const std::string pv = charpoly_to_poly(rep.p_v).to_string();
  const std::string p0 = charpoly_to_poly(rep.p_0).to_string();
  if (ctx.json) {
    ctx.emit({{"command", "verify"},
              {"m", m},
              {"equal", rep.equal},
              {"P_v", pv},
              {"P_0", p0}});
  } else {
    ctx.out << "theorem-3.3 m=" << m << "\n";
    ctx.out << "P_v = " << pv << "\n";
    ctx.out << "P_0 = " << p0 << "\n";
    ctx.out << "equal: " << (rep.equal ? "true" : "false") << "\n";
  }
  ctx.exit_code = rep.equal ? 0 : 1;
}

inline Potential1D single_axis(const SeparablePotential& v) {
  if (v.dim() != 1) fail(errc::bad_argument, "this command takes a one-dimensional potential");
  return v.axes[0];
}

inline void cmd_charpoly(Context& ctx, const Potential1D& pot, std::optional<double> k) {
  const int q = pot.period();
  const bool exact = pot.is_exact() && !k.has_value();
  if (exact) {
    CharPoly p = charpoly_exact(floquet_matrix_exact(pot));
    std::vector<std::string> coeffs;
    for (const MultiPoly& c : p.coeffs) coeffs.push_back(c.to_string());
    if (ctx.json) {
      ctx.emit({{"command", "charpoly"},
                {"q", q},
                {"mode", "exact"},
                {"k", 0.0},
                {"P", charpoly_to_poly(p).to_string()},
                {"coeffs", coeffs}});
    } else {
      ctx.out << "charpoly q=" << q << " mode=exact k=0\n";
      ctx.out << "P = " << charpoly_to_poly(p).to_string() << "\n";
      for (std::size_t i = 0; i < coeffs.size(); ++i)
        ctx.out << "coeff[" << i << "] = " << coeffs[i] << "\n";
    }
    return;
  }
  const double kk = k.value_or(0.0);
  CharPolyNum p = charpoly_numeric(floquet_matrix_numeric(pot, kk));
  std::vector<std::string> coeffs;
  for (const Cplx& c : p.coeffs) coeffs.push_back(fmt_cplx(c));
  if (ctx.json) {
    ctx.emit({{"command", "charpoly"},
              {"q", q},
              {"mode", "numeric"},
              {"k", kk},
              {"coeffs", coeffs}});
  } else {
    ctx.out << "charpoly q=" << q << " mode=numeric k=" << fmt_double(kk) << "\n";
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      ctx.out << "coeff[" << i << "] = " << coeffs[i] << "\n";
  }
}

inline void cmd_covers(Context& ctx, std::optional<int> jacobi_m, std::optional<int> floquet_q,
                       bool refined, std::optional<int> exact_two_cycles) {
  WeightedDigraph g;
  std::string graph_desc;
  if (jacobi_m.has_value() == floquet_q.has_value())
    fail(errc::bad_argument, "choose exactly one of --jacobi or --floquet");
  if (jacobi_m) {
    if (refined) fail(errc::bad_argument, "--refined applies to --floquet only");
    const int m = *jacobi_m;
    if (m < 0) fail(errc::bad_argument, "vertex count must be nonnegative");
    std::vector<MultiPoly> diag;
    for (int i = 1; i <= m; ++i) diag.push_back(MultiPoly::variable(var_v(static_cast<std::uint32_t>(i))));
    std::vector<std::pair<MultiPoly, MultiPoly>> off(
        m > 0 ? static_cast<std::size_t>(m - 1) : 0,
        {MultiPoly::constant(GaussInt(1)), MultiPoly::constant(GaussInt(1))});
    g = jacobi_digraph(static_cast<std::size_t>(m), diag, off);
    graph_desc = "jacobi m=" + std::to_string(m);
  } else {
    const int q = *floquet_q;
    Matrix<MultiPoly> mat = symbolic_floquet_matrix(q);
    for (std::size_t i = 0; i < mat.rows(); ++i) mat(i, i) -= MultiPoly::lambda();
    g = digraph_of_matrix(mat);
    graph_desc = "floquet q=" + std::to_string(q);
    if (refined) {
      std::map<int, std::pair<MultiPoly, MultiPoly>> splits;
      for (int i = 1; i <= q; ++i)
        splits[i] = {MultiPoly::variable(var_v(static_cast<std::uint32_t>(i))),
                     -MultiPoly::lambda()};
      g = refine_self_loops(g, splits);
      graph_desc += " refined";
    }
  }
  CoverFilter filter;
  filter.exact_two_cycles = exact_two_cycles;
  std::vector<CycleCover> covers = enumerate_covers(g, filter);
  if (ctx.json) {
    Json list = Json::array();
    for (const CycleCover& c : covers) list.push_back(c.to_string());
    ctx.emit({{"command", "covers"},
              {"graph", graph_desc},
              {"count", covers.size()},
              {"covers", list}});
  } else {
    ctx.out << "covers " << graph_desc << "\n";
    for (const CycleCover& c : covers) ctx.out << c.to_string() << "\n";
    ctx.out << "count = " << covers.size() << "\n";
  }
}

inline void cmd_s_table(Context& ctx, int max_m, int max_p) {
  if (max_m < 0 || max_p < 0) fail(errc::bad_argument, "table bounds must be nonnegative");
  bool ok = true;
  Json rows = Json::array();
  std::ostringstream text;
  std::ostringstream diffs;
  for (int m = 0; m <= max_m; ++m) {
    text << "S(m=" << m << "):";
    Json row = Json::array();
    for (int p = 0; p <= max_p; ++p) {
      const std::uint64_t en = s_count(m, p);
      const std::uint64_t cl = s_closed(m, p);
      if (en != cl) {
        ok = false;
        diffs << "MISMATCH at m=" << m << " p=" << p << ": enum=" << en << " closed=" << cl
              << "\n";
      }
      if (2 * p <= m) text << " " << en;
      row.push_back(en);
    }
    text << "\n";
    rows.push_back(row);
  }
  if (ctx.json) {
    ctx.emit({{"command", "s-table"},
              {"max_m", max_m},
              {"max_p", max_p},
              {"table", rows},
              {"ok", ok}});
  } else {
    ctx.out << text.str() << diffs.str();
    ctx.out << (ok ? "ok: enumeration matches closed form" : "FAIL: table mismatch") << "\n";
  }
  ctx.exit_code = ok ? 0 : 1;
}

inline void cmd_identity(Context& ctx, int m, std::optional<int> ell, bool all_ell) {
  if (ell.has_value() == all_ell)
    fail(errc::bad_argument, "choose exactly one of --ell or --all-ell");
  std::vector<int> ells;
  if (all_ell)
    for (int l = 1; l <= m - 1; ++l) ells.push_back(l);
  else
    ells.push_back(*ell);
  bool ok = true;
  Json results = Json::array();
  std::ostringstream text;
  for (int l : ells) {
    const bool good = identity_check(m, l);
    ok = ok && good;
    const std::uint64_t lhs = s_closed(2 * m - 2, l - 1);
    text << "m=" << m << " ell=" << l << ": S(" << 2 * m - 2 << "," << l - 1 << ")=" << lhs
         << " " << (good ? "ok" : "MISMATCH") << "\n";
    results.push_back({{"ell", l}, {"lhs", lhs}, {"ok", good}});
  }
  if (ctx.json) {
    ctx.emit({{"command", "identity"}, {"m", m}, {"results", results}, {"ok", ok}});
  } else {
    ctx.out << text.str();
    ctx.out << (ok ? "ok" : "FAIL") << "\n";
  }
  ctx.exit_code = ok ? 0 : 1;
}

inline void cmd_f_check(Context& ctx, int m, std::optional<int> single_k) {
  if (m < 2) fail(errc::m_too_small, "f-check needs m >= 2");
  std::vector<int> ks;
  if (single_k)
    ks.push_back(*single_k);
  else
    for (int k = 2; k <= 2 * m - 1; ++k) ks.push_back(k);
  const std::vector<MultiPoly> f = f_coeff_symbolic(m);
  bool ok = true;
  Json results = Json::array();
  std::ostringstream text;
  for (int k : ks) {
    const MultiPoly closed = f_closed_form(m, k);  // validates k
    const MultiPoly& symbolic = f.at(static_cast<std::size_t>(2 * m - k));
    const bool match = closed == symbolic;
    ok = ok && match;
    text << "k=" << k << " (" << (k % 2 == 0 ? "even" : "odd") << "): "
         << (match ? "ok" : "MISMATCH") << "\n";
    if (!match) {
      text << "  closed   = " << closed.to_string() << "\n";
      text << "  symbolic = " << symbolic.to_string() << "\n";
    }
    results.push_back({{"k", k},
                       {"match", match},
                       {"closed", closed.to_string()},
                       {"symbolic", symbolic.to_string()}});
  }
  if (ctx.json) {
    ctx.emit({{"command", "f-check"}, {"m", m}, {"results", results}, {"ok", ok}});
  } else {
    ctx.out << "f-check m=" << m << "\n" << text.str();
    ctx.out << (ok ? "ok: closed form matches symbolic coefficients"
                   : "FAIL: closed form disagrees")
            << "\n";
  }
  ctx.exit_code = ok ? 0 : 1;
}

inline void cmd_export_m2(Context& ctx, int period, const std::string& out_path) {
  const std::string script = export_m2(gen_system(period));
  if (out_path.empty() || out_path == "-") {
    ctx.out << script;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) fail(errc::bad_argument, "cannot write " + out_path);
  f << script;
  if (ctx.json)
    ctx.emit({{"command", "export-m2"}, {"period", period}, {"out", out_path}});
  else
    ctx.out << "wrote system for period " << period << " to " << out_path << "\n";
}

inline void cmd_scan(Context& ctx, int q, std::vector<int> slots, const std::string& palette_text) {
  if (slots.empty()) {
    if (q > static_cast<int>(kMaxScanSlots))
      fail(errc::bad_argument, "--slots is required for periods above 6");
    for (int s = 1; s <= q; ++s) slots.push_back(s);
  }
  const std::vector<GaussInt> palette = parse_palette(palette_text);
  std::uint64_t space = 1;
  for (std::size_t j = 0; j < slots.size(); ++j) space *= palette.size();
  const auto reports = scan_candidates(q, slots, palette, ctx.worker_threads());
  if (ctx.json) {
    Json sols = Json::array();
    for (const CandidateReport& r : reports) {
      Json values = Json::array();
      for (const GaussInt& g : r.candidate.exact_values()) values.push_back(g.to_string());
      sols.push_back({{"values", values}, {"isospectral", r.isospectral}});
    }
    Json pal = Json::array();
    for (const GaussInt& g : palette) pal.push_back(g.to_string());
    ctx.emit({{"command", "scan"},
              {"q", q},
              {"slots", slots},
              {"palette", pal},
              {"assignments", space},
              {"solutions", sols}});
  } else {
    ctx.out << "scan q=" << q << " assignments=" << space << "\n";
    for (const CandidateReport& r : reports) {
      ctx.out << "solution: (";
      const auto& vals = r.candidate.exact_values();
      for (std::size_t j = 0; j < vals.size(); ++j)
        ctx.out << (j ? ", " : "") << vals[j].to_string();
      ctx.out << ")\n";
    }
    ctx.out << "found " << reports.size() << " solutions\n";
  }
}

inline void cmd_isospectral(Context& ctx, const SeparablePotential& v,
                            const SeparablePotential& w, int grid,
                            const std::vector<double>& k_point, double tol) {
  if (grid < 1) fail(errc::bad_argument, "grid needs at least one point per axis");
  const int d = v.dim();
  std::vector<std::vector<double>> axis_points;
  if (!k_point.empty()) {
    if (static_cast<int>(k_point.size()) != d)
      fail(errc::bad_argument, "--k needs one component per axis");
    for (double x : k_point) axis_points.push_back({x});
  } else {
    std::vector<double> pts;
    for (int j = 0; j < grid; ++j)
      pts.push_back(grid == 1 ? 0.0 : static_cast<double>(j) / (grid - 1));
    axis_points.assign(static_cast<std::size_t>(d), pts);
  }

  std::vector<std::size_t> sizes;
  for (const auto& pts : axis_points) sizes.push_back(pts.size());
  bool all_ok = true;
  Json points = Json::array();
  std::ostringstream text;
  floq::detail::for_each_lattice(sizes, [&](const std::vector<std::size_t>& idx) {
    std::vector<double> kk;
    for (std::size_t j = 0; j < idx.size(); ++j) kk.push_back(axis_points[j][idx[j]]);
    const Quasimomentum qk(kk);
    const bool iso = isospectral_numeric(v, w, qk, tol);
    all_ok = all_ok && iso;
    text << "k=(";
    for (std::size_t j = 0; j < kk.size(); ++j) text << (j ? "," : "") << fmt_double(kk[j]);
    text << "): " << (iso ? "true" : "false") << "\n";
    points.push_back({{"k", kk}, {"isospectral", iso}});
  });
  std::size_t q_total = 1;
  for (const Potential1D& axis : v.axes) q_total *= static_cast<std::size_t>(axis.period());
  if (ctx.json) {
    ctx.emit({{"command", "isospectral"},
              {"d", d},
              {"Q", q_total},
              {"tol", tol},
              {"points", points},
              {"isospectral", all_ok}});
  } else {
    ctx.out << "isospectral d=" << d << " Q=" << q_total << " tol=" << fmt_double(tol) << "\n";
    ctx.out << text.str();
    ctx.out << (all_ok ? "isospectral at every sampled k" : "NOT isospectral") << "\n";
  }
  ctx.exit_code = all_ok ? 0 : 1;
}

}  // namespace detail

// Entry point shared by the binary and the tests. argv excludes the program
// name. Exit codes: 0 verified/true, 1 falsified claim, 2 usage error.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  Context ctx{out, err};

  CLI::App app{"exact Floquet isospectrality toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", ctx.json, "machine-readable JSON output");
  app.add_option("--seed", ctx.seed, "seed for randomized sweeps (reserved)");
  app.add_option("--threads", ctx.threads, "worker threads (0 = all cores)");

  // verify
  auto* verify = app.add_subcommand("verify", "check P_v = P_0 for the explicit potential");
  verify->fallthrough();
  int verify_m = 0;
  verify->add_option("--m", verify_m, "half-period m (period 2m)")->required();

  // charpoly
  auto* charpoly = app.add_subcommand("charpoly", "characteristic polynomial of a Floquet matrix");
  charpoly->fallthrough();
  std::optional<int> cp_m;
  std::optional<int> cp_zero;
  std::string cp_potential;
  std::optional<double> cp_k;
  charpoly->add_option("--m", cp_m, "use the explicit potential with half-period m");
  charpoly->add_option("--zero", cp_zero, "use the zero potential with this period");
  charpoly->add_option("--potential", cp_potential, "one-axis potential file (JSON)");
  charpoly->add_option("--k", cp_k, "quasimomentum (switches to numeric mode)");

  // covers
  auto* covers = app.add_subcommand("covers", "enumerate disjoint cycle covers");
  covers->fallthrough();
  std::optional<int> cov_jacobi, cov_floquet, cov_two;
  bool cov_refined = false;
  covers->add_option("--jacobi", cov_jacobi, "Jacobi digraph J_m with symbolic loops");
  covers->add_option("--floquet", cov_floquet, "digraph of D_v - lambda*I for this period");
  covers->add_flag("--refined", cov_refined, "split loops into v and -lambda halves");
  covers->add_option("--exact-2cycles", cov_two, "keep covers with exactly this many 2-cycles");

  // s-table
  auto* stable = app.add_subcommand("s-table", "S(m,p) by enumeration vs closed form");
  stable->fallthrough();
  int st_max_m = 14, st_max_p = 7;
  stable->add_option("--max-m", st_max_m, "largest m (default 14)");
  stable->add_option("--max-p", st_max_p, "largest p (default 7)");

  // identity
  auto* identity = app.add_subcommand("identity", "check the 2-cycle counting identity");
  identity->fallthrough();
  int id_m = 0;
  std::optional<int> id_ell;
  bool id_all = false;
  identity->add_option("--m", id_m, "half-period m")->required();
  identity->add_option("--ell", id_ell, "single ell");
  identity->add_flag("--all-ell", id_all, "all ell in 1..m-1");

  // f-check
  auto* fcheck = app.add_subcommand("f-check", "closed-form F coefficients vs symbolic");
  fcheck->fallthrough();
  int fc_m = 0;
  std::optional<int> fc_k;
  fcheck->add_option("--m", fc_m, "half-period m")->required();
  fcheck->add_option("--k", fc_k, "single k (default: all validated k)");

  // export-m2
  auto* exportm2 = app.add_subcommand("export-m2", "emit a Macaulay2 script for the system");
  exportm2->fallthrough();
  int em_period = 0;
  std::string em_out;
  exportm2->add_option("--period", em_period, "potential period q")->required();
  exportm2->add_option("--out", em_out, "output file (default stdout)");

  // scan
  auto* scan = app.add_subcommand("scan", "exhaustive exact scan for isospectral candidates");
  scan->fallthrough();
  int sc_period = 0;
  std::vector<int> sc_slots;
  std::string sc_palette;
  scan->add_option("--period", sc_period, "potential period q")->required();
  scan->add_option("--slots", sc_slots, "1-based slot positions")->delimiter(',');
  scan->add_option("--palette", sc_palette, "comma-separated Gaussian integers")->required();

  // isospectral
  auto* iso = app.add_subcommand("isospectral", "numeric isospectrality over a k-grid");
  iso->fallthrough();
  std::string iso_potential, iso_vs;
  bool iso_vs_zero = false;
  int iso_grid = 5;
  std::vector<double> iso_k;
  double iso_tol = 1e-9;
  iso->add_option("--potential", iso_potential, "potential file (JSON)")->required();
  iso->add_option("--vs", iso_vs, "compare against this potential file");
  iso->add_flag("--vs-zero", iso_vs_zero, "compare against the zero potential (default)");
  iso->add_option("--grid", iso_grid, "points per axis on the uniform k-grid (default 5)");
  iso->add_option("--k", iso_k, "single quasimomentum point")->delimiter(',');
  iso->add_option("--tol", iso_tol, "relative tolerance (default 1e-9)");

  try {
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (verify->parsed()) {
      detail::cmd_verify(ctx, verify_m);
    } else if (charpoly->parsed()) {
      int sources = int(cp_m.has_value()) + int(cp_zero.has_value()) + int(!cp_potential.empty());
      if (sources != 1)
        fail(errc::bad_argument, "choose exactly one of --m, --zero, --potential");
      Potential1D pot = cp_m        ? paper_potential(*cp_m)
                        : cp_zero   ? Potential1D::zero(*cp_zero)
                                    : detail::single_axis(load_potential(cp_potential));
      detail::cmd_charpoly(ctx, pot, cp_k);
    } else if (covers->parsed()) {
      detail::cmd_covers(ctx, cov_jacobi, cov_floquet, cov_refined, cov_two);
    } else if (stable->parsed()) {
      detail::cmd_s_table(ctx, st_max_m, st_max_p);
    } else if (identity->parsed()) {
      detail::cmd_identity(ctx, id_m, id_ell, id_all);
    } else if (fcheck->parsed()) {
      detail::cmd_f_check(ctx, fc_m, fc_k);
    } else if (exportm2->parsed()) {
      detail::cmd_export_m2(ctx, em_period, em_out);
    } else if (scan->parsed()) {
      detail::cmd_scan(ctx, sc_period, sc_slots, sc_palette);
    } else if (iso->parsed()) {
      SeparablePotential v = load_potential(iso_potential);
      SeparablePotential w =
          iso_vs.empty() ? SeparablePotential::zero_like(v) : load_potential(iso_vs);
      detail::cmd_isospectral(ctx, v, w, iso_grid, iso_k, iso_tol);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return ctx.exit_code;
}

}  // namespace cli
}  // namespace floq
