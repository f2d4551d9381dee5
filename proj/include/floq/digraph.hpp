#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "floq/matrix.hpp"
#include "floq/multipoly.hpp"

namespace floq {

// Edges carry a tag so that a vertex can hold two parallel self-loops after
// refinement (the v-loop and the -lambda-loop). Untagged edges use tag 0.
struct Edge {
  int src = 0;  // 1-based vertex ids
  int dst = 0;
  MultiPoly weight;
  int tag = 0;
};

struct EdgeKey {
  int src = 0;
  int dst = 0;
  int tag = 0;
  auto operator<=>(const EdgeKey&) const = default;
};

inline EdgeKey key_of(const Edge& e) { return {e.src, e.dst, e.tag}; }

class WeightedDigraph {
 public:
  WeightedDigraph() = default;
  explicit WeightedDigraph(int n) : n_(n) {}

  int vertex_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Zero-weight edges are dropped: an edge exists iff the matrix entry is
  // nonzero.
  void add_edge(int src, int dst, MultiPoly weight, int tag = 0) {
    if (src < 1 || src > n_ || dst < 1 || dst > n_)
      fail(errc::bad_argument, "edge endpoint out of range");
    if (weight.is_zero()) return;
    edges_.push_back({src, dst, std::move(weight), tag});
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

inline WeightedDigraph digraph_of_matrix(const Matrix<MultiPoly>& m) {
  if (!m.square()) fail(errc::non_square, "digraph requires a square matrix");
  WeightedDigraph g(static_cast<int>(m.rows()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      g.add_edge(static_cast<int>(i) + 1, static_cast<int>(j) + 1, m(i, j));
  return g;
}

// Splits the self-loop at each listed vertex into two tagged loops with the
// given weights. The split must reproduce the original loop weight; a
// zero-weight half is simply not added.
inline WeightedDigraph refine_self_loops(
    const WeightedDigraph& g,
    const std::map<int, std::pair<MultiPoly, MultiPoly>>& splits) {
  WeightedDigraph out(g.vertex_count());
  std::set<int> pending;
  for (const auto& [v, w] : splits) pending.insert(v);
  for (const Edge& e : g.edges()) {
    auto it = splits.find(e.src);
    if (e.src == e.dst && e.tag == 0 && it != splits.end()) {
      const auto& [w1, w2] = it->second;
      if (w1 + w2 != e.weight)
        fail(errc::split_mismatch,
             "split halves do not sum to the loop weight at vertex " + std::to_string(e.src));
      out.add_edge(e.src, e.dst, w1, 1);
      out.add_edge(e.src, e.dst, w2, 2);
      pending.erase(e.src);
    } else {
      out.add_edge(e.src, e.dst, e.weight, e.tag);
    }
  }
  if (!pending.empty())
    fail(errc::split_mismatch,
         "vertex " + std::to_string(*pending.begin()) + " has no self-loop to split");
  return out;
}

// A disjoint cycle cover: vertex-disjoint directed cycles covering every
// vertex. sign = (-1)^(n - #cycles), the sign of the induced permutation;
// weight = product of the edge weights.
struct CycleCover {
  std::vector<std::vector<int>> cycles;  // each listed from its smallest vertex
  std::vector<EdgeKey> edge_keys;        // all edges used, in traversal order
  int sign = 1;
  MultiPoly weight;

  int two_cycle_count() const {
    int c = 0;
    for (const auto& cy : cycles) c += cy.size() == 2;
    return c;
  }

  // "(1)(2 3) sign=-1 weight=..."
  std::string to_string() const {
    std::string s;
    for (const auto& cy : cycles) {
      s += "(";
      for (std::size_t j = 0; j < cy.size(); ++j)
        s += (j ? " " : "") + std::to_string(cy[j]);
      s += ")";
    }
    if (cycles.empty()) s = "()";
    s += std::string(" sign=") + (sign > 0 ? "+1" : "-1");
    s += " weight=" + weight.to_string();
    return s;
  }
};

struct CoverFilter {
  std::set<EdgeKey> required;
  std::set<EdgeKey> forbidden;
  std::optional<int> exact_two_cycles;
};

namespace detail {

// Depth-first enumeration: repeatedly pick the smallest uncovered vertex and
// walk every cycle through it, extending paths in (target, tag) order. Since
// that vertex is the minimum of everything still uncovered, the closing edge
// sorts first and the emission order is lexicographic in the successor
// function of the induced permutation.
class CoverEnumerator {
 public:
  CoverEnumerator(const WeightedDigraph& g, const CoverFilter& filter,
                  const std::function<void(const CycleCover&)>& emit)
      : filter_(filter), emit_(emit), n_(g.vertex_count()) {
    adj_.resize(n_ + 1);
    for (const Edge& e : g.edges()) {
      if (filter_.forbidden.contains(key_of(e))) continue;
      adj_[e.src].push_back(&e);
    }
    for (auto& out : adj_)
      std::sort(out.begin(), out.end(), [](const Edge* a, const Edge* b) {
        return std::pair(a->dst, a->tag) < std::pair(b->dst, b->tag);
      });
    covered_.assign(n_ + 1, false);
    on_path_.assign(n_ + 1, false);
  }

  void run() { cover_next(); }

 private:
  void cover_next() {
    int s = 0;
    for (int v = 1; v <= n_; ++v)
      if (!covered_[v]) {
        s = v;
        break;
      }
    if (s == 0) {
      finish();
      return;
    }
    path_.push_back(s);
    on_path_[s] = true;
    extend(s, s);
    on_path_[s] = false;
    path_.pop_back();
  }

  void extend(int start, int u) {
    for (const Edge* e : adj_[u]) {
      if (e->dst == start) {
        commit(e);
      } else if (!covered_[e->dst] && !on_path_[e->dst]) {
        path_.push_back(e->dst);
        on_path_[e->dst] = true;
        path_edges_.push_back(e);
        extend(start, e->dst);
        path_edges_.pop_back();
        on_path_[e->dst] = false;
        path_.pop_back();
      }
    }
  }

  // At this point path_ holds exactly the cycle being closed (it is cleared
  // for every new cycle), beginning at its smallest vertex.
  void commit(const Edge* closing) {
    cycles_.push_back(path_);
    auto& edges = cycle_edges_.emplace_back(path_edges_);
    edges.push_back(closing);
    for (int v : path_) covered_[v] = true;
    std::vector<int> saved_path;
    saved_path.swap(path_);
    std::vector<const Edge*> saved_edges;
    saved_edges.swap(path_edges_);
    cover_next();
    path_.swap(saved_path);
    path_edges_.swap(saved_edges);
    for (int v : path_) covered_[v] = false;
    cycle_edges_.pop_back();
    cycles_.pop_back();
  }

  void finish() {
    CycleCover cover;
    cover.cycles = cycles_;
    int cycle_count = static_cast<int>(cycles_.size());
    cover.sign = ((n_ - cycle_count) % 2 == 0) ? 1 : -1;
    MultiPoly w = MultiPoly::constant(GaussInt(1));
    for (const auto& edges : cycle_edges_)
      for (const Edge* e : edges) {
        cover.edge_keys.push_back(key_of(*e));
        w *= e->weight;
      }
    cover.weight = std::move(w);
    if (filter_.exact_two_cycles && cover.two_cycle_count() != *filter_.exact_two_cycles)
      return;
    if (!filter_.required.empty()) {
      for (const EdgeKey& k : filter_.required)
        if (std::find(cover.edge_keys.begin(), cover.edge_keys.end(), k) ==
            cover.edge_keys.end())
          return;
    }
    emit_(cover);
  }

  const CoverFilter& filter_;
  const std::function<void(const CycleCover&)>& emit_;
  int n_;
  std::vector<std::vector<const Edge*>> adj_;
  std::vector<bool> covered_, on_path_;
  std::vector<int> path_;
  std::vector<const Edge*> path_edges_;
  std::vector<std::vector<int>> cycles_;
  std::vector<std::vector<const Edge*>> cycle_edges_;
};

}  // namespace detail

inline void for_each_cover(const WeightedDigraph& g, const CoverFilter& filter,
                           const std::function<void(const CycleCover&)>& fn) {
  detail::CoverEnumerator(g, filter, fn).run();
}

inline std::vector<CycleCover> enumerate_covers(const WeightedDigraph& g,
                                                const CoverFilter& filter = {}) {
  std::vector<CycleCover> out;
  for_each_cover(g, filter, [&out](const CycleCover& c) { out.push_back(c); });
  return out;
}

// det(M) = sum over disjoint cycle covers of sgn(eta) * w(eta).
inline MultiPoly det_by_covers(const WeightedDigraph& g) {
  MultiPoly det;
  for_each_cover(g, {}, [&det](const CycleCover& c) {
    if (c.sign > 0)
      det += c.weight;
    else
      det -= c.weight;
  });
  return det;
}

inline constexpr std::size_t kMaxCofactorDim = 12;

namespace detail {

inline MultiPoly det_cofactor_rec(const Matrix<MultiPoly>& m,
                                  std::vector<std::size_t>& rows,
                                  std::vector<std::size_t>& cols) {
  const std::size_t n = rows.size();
  if (n == 0) return MultiPoly::constant(GaussInt(1));
  if (n == 1) return m(rows[0], cols[0]);
  MultiPoly det;
  std::size_t row = rows[0];
  std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t j = 0; j < n; ++j) {
    const MultiPoly& entry = m(row, cols[j]);
    if (entry.is_zero()) continue;
    std::vector<std::size_t> sub_cols;
    sub_cols.reserve(n - 1);
    for (std::size_t t = 0; t < n; ++t)
      if (t != j) sub_cols.push_back(cols[t]);
    MultiPoly minor = det_cofactor_rec(m, sub_rows, sub_cols);
    MultiPoly contrib = entry * minor;
    if (j % 2 == 0)
      det += contrib;
    else
      det -= contrib;
  }
  return det;
}

}  // namespace detail

// First-row cofactor expansion. This is the independent oracle for
// det_by_covers, not a production path, hence the dimension guard.
inline MultiPoly det_cofactor(const Matrix<MultiPoly>& m) {
  if (!m.square()) fail(errc::non_square, "determinant requires a square matrix");
  if (m.rows() > kMaxCofactorDim)
    fail(errc::dimension_too_large, "det_cofactor is guarded at dimension 12");
  std::vector<std::size_t> rows(m.rows()), cols(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) rows[i] = cols[i] = i;
  return detail::det_cofactor_rec(m, rows, cols);
}

// Path digraph with a loop at every vertex and a 2-cycle between neighbours.
// Covers of this graph consist only of 1- and 2-cycles.
inline WeightedDigraph jacobi_digraph(
    std::size_t m, const std::vector<MultiPoly>& diag,
    const std::vector<std::pair<MultiPoly, MultiPoly>>& off) {
  if (diag.size() != m || (m == 0 ? !off.empty() : off.size() != m - 1))
    fail(errc::length_mismatch, "jacobi_digraph needs m diagonal and m-1 off-diagonal weights");
  WeightedDigraph g(static_cast<int>(m));
  for (std::size_t i = 0; i < m; ++i) g.add_edge(int(i) + 1, int(i) + 1, diag[i]);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    g.add_edge(int(i) + 1, int(i) + 2, off[i].first);
    g.add_edge(int(i) + 2, int(i) + 1, off[i].second);
  }
  return g;
}

// S(m,p) by enumeration: disjoint cycle covers of J_m with exactly p 2-cycles.
inline std::uint64_t s_count(int m, int p) {
  if (m < 0 || p < 0) return 0;
  std::vector<MultiPoly> diag(m, MultiPoly::constant(GaussInt(1)));
  std::vector<std::pair<MultiPoly, MultiPoly>> off(
      m > 0 ? m - 1 : 0,
      {MultiPoly::constant(GaussInt(1)), MultiPoly::constant(GaussInt(1))});
  WeightedDigraph g = jacobi_digraph(static_cast<std::size_t>(m), diag, off);
  CoverFilter filter;
  filter.exact_two_cycles = p;
  std::uint64_t count = 0;
  for_each_cover(g, filter, [&count](const CycleCover&) { ++count; });
  return count;
}

namespace detail {

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (std::uint64_t j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

}  // namespace detail

// S(m,p) in closed form, binomial(m-p, p). Boundary conventions: S(0,0) = 1
// (the empty cover) and S(m,p) = 0 for 2p > m or p < 0.
inline std::uint64_t s_closed(int m, int p) {
  if (m < 0 || p < 0 || 2 * p > m) return 0;
  return detail::binomial(static_cast<std::uint64_t>(m - p), static_cast<std::uint64_t>(p));
}

}  // namespace floq
