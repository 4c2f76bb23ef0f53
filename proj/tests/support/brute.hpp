#pragma once

// Slow, independent reference implementations used to check the library.
// Nothing here calls the library's graph algorithms.

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "tin/graph.hpp"
#include "tin/scm.hpp"

namespace brute {

using Matrix = std::vector<std::vector<char>>;

inline Matrix adjacency(const tin::Dag& g) {
  Matrix a(g.size(), std::vector<char>(g.size(), 0));
  for (const auto& e : g.edges()) a[e.from][e.to] = 1;
  return a;
}

// reach[i][j]: a directed path (possibly empty) from i to j.
inline Matrix closure(const tin::Dag& g) {
  const int n = g.size();
  Matrix r = adjacency(g);
  for (int i = 0; i < n; ++i) r[i][i] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = 1;
  return r;
}

inline tin::VertexSet ancestors(const tin::Dag& g, const tin::VertexSet& z) {
  const Matrix r = closure(g);
  std::vector<int> out;
  for (int i = 0; i < g.size(); ++i)
    for (int v : z)
      if (r[i][v]) {
        out.push_back(i);
        break;
      }
  return tin::VertexSet(out);
}

// Depth-first enumeration of simple directed paths that stay outside s.
inline bool path_avoiding(const tin::Dag& g, int from, const tin::VertexSet& targets,
                          const tin::VertexSet& s) {
  if (s.contains(from)) return false;
  if (targets.contains(from)) return true;
  for (int c : g.children(from))
    if (path_avoiding(g, c, targets, s)) return true;
  return false;
}

inline bool is_cut(const tin::Dag& g, const tin::VertexSet& w, const tin::VertexSet& y,
                   const tin::VertexSet& s) {
  for (int v : w)
    if (path_avoiding(g, v, y, s)) return false;
  return true;
}

inline tin::VertexSet anc_out(const tin::Dag& g, const tin::VertexSet& y, const tin::VertexSet& s) {
  std::vector<int> out;
  for (int v = 0; v < g.size(); ++v)
    if (path_avoiding(g, v, y, s)) out.push_back(v);
  return tin::VertexSet(out);
}

// Every minimum vertex cut from w to y, by subset enumeration.
inline std::vector<tin::VertexSet> min_cuts(const tin::Dag& g, const tin::VertexSet& w,
                                            const tin::VertexSet& y) {
  const int n = g.size();
  std::vector<tin::VertexSet> found;
  for (int size = 0; size <= n && found.empty(); ++size)
    for (std::uint64_t m = 0; m < (1ull << n); ++m) {
      if (std::popcount(m) != size) continue;
      tin::VertexSet s = tin::VertexSet::from_mask(m);
      if (is_cut(g, w, y, s)) found.push_back(s);
    }
  return found;
}

// Minimum cuts S such that no member of any minimum cut reaches y avoiding S.
inline std::vector<tin::VertexSet> critical_cuts(const tin::Dag& g, const tin::VertexSet& z,
                                                 const tin::VertexSet& y) {
  const auto all = min_cuts(g, brute::ancestors(g, z), y);
  tin::VertexSet uni;
  for (const auto& s : all) uni = uni | s;
  std::vector<tin::VertexSet> out;
  for (const auto& s : all)
    if (!anc_out(g, y, s).intersects(uni)) out.push_back(s);
  return out;
}

// d-separation through the moral graph of the ancestral set.
inline bool d_separated(const tin::Dag& g, const tin::VertexSet& a, const tin::VertexSet& b,
                        const tin::VertexSet& s) {
  const int n = g.size();
  const tin::VertexSet keep = brute::ancestors(g, a | b | s);
  Matrix und(n, std::vector<char>(n, 0));
  for (const auto& e : g.edges())
    if (keep.contains(e.from) && keep.contains(e.to)) und[e.from][e.to] = und[e.to][e.from] = 1;
  for (int v : keep) {
    const auto& ps = g.parents(v);
    for (int p : ps)
      for (int q : ps)
        if (p != q) und[p][q] = 1;
  }
  std::vector<char> seen(n, 0);
  std::vector<int> stack;
  for (int v : a)
    if (!s.contains(v)) {
      seen[v] = 1;
      stack.push_back(v);
    }
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (b.contains(v)) return false;
    for (int u = 0; u < n; ++u)
      if (und[v][u] && !seen[u] && !s.contains(u) && keep.contains(u)) {
        seen[u] = 1;
        stack.push_back(u);
      }
  }
  return true;
}

inline Eigen::MatrixXd mixing(const tin::LinearScm& scm) {
  const int n = scm.size();
  return (Eigen::MatrixXd::Identity(n, n) - scm.weights()).inverse();
}

// Non-leaf: |Anc|; leaf: |Anc| - 1, with Anc including the vertex itself.
inline std::vector<int> one_and_others_ords(const tin::Dag& g) {
  std::vector<int> out;
  for (int v = 0; v < g.size(); ++v) {
    const int a = brute::ancestors(g, {v}).size();
    out.push_back(g.children(v).empty() ? a - 1 : a);
  }
  return out;
}

inline int compare(int gi, int gj) { return gi < gj ? 1 : (gi == gj ? 0 : -1); }

inline double kendall(const std::vector<int>& group_a, const std::vector<int>& group_b) {
  const int n = static_cast<int>(group_a.size());
  int bad = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (compare(group_a[i], group_a[j]) != compare(group_b[i], group_b[j])) ++bad;
  return n < 2 ? 0.0 : 2.0 * bad / (static_cast<double>(n) * (n - 1));
}

// Every DAG whose edges respect the natural order; 2^(n(n-1)/2) of them.
inline std::vector<tin::Dag> all_dags(int n) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  std::vector<tin::Dag> out;
  for (std::uint64_t m = 0; m < (1ull << slots.size()); ++m) {
    std::vector<tin::Edge> edges;
    for (std::size_t k = 0; k < slots.size(); ++k)
      if (m & (1ull << k)) edges.push_back({slots[k].first, slots[k].second});
    out.emplace_back(n, std::move(edges));
  }
  return out;
}

// Random DAG with a random vertex labelling.
inline tin::Dag random_dag(int n, double p, std::mt19937_64& rng) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::bernoulli_distribution coin(p);
  std::vector<tin::Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) edges.push_back({perm[i], perm[j]});
  return tin::Dag(n, std::move(edges));
}

inline tin::VertexSet random_subset(int n, int max_size, std::mt19937_64& rng, bool allow_empty = false) {
  std::uniform_int_distribution<int> size_dist(allow_empty ? 0 : 1, std::min(max_size, n));
  std::vector<int> ids(n);
  for (int i = 0; i < n; ++i) ids[i] = i;
  std::shuffle(ids.begin(), ids.end(), rng);
  ids.resize(size_dist(rng));
  return tin::VertexSet(ids);
}

// All non-empty subsets of 0..n-1 with at most max_size members.
inline std::vector<tin::VertexSet> subsets(int n, int max_size) {
  std::vector<tin::VertexSet> out;
  for (std::uint64_t m = 1; m < (1ull << n); ++m)
    if (std::popcount(m) <= max_size) out.push_back(tin::VertexSet::from_mask(m));
  return out;
}

}  // namespace brute
