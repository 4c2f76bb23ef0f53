#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace tin {

// Sorted, duplicate-free set of vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<int> ids);
  explicit VertexSet(std::vector<int> ids);

  static VertexSet range(int n);
  static VertexSet from_mask(std::uint64_t mask);

  bool contains(int v) const;
  bool empty() const { return members_.empty(); }
  int size() const { return static_cast<int>(members_.size()); }
  const std::vector<int>& ids() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  int operator[](int i) const { return members_[static_cast<std::size_t>(i)]; }

  void insert(int v);
  bool is_subset_of(const VertexSet& other) const;
  bool intersects(const VertexSet& other) const;
  std::uint64_t mask() const;

  friend VertexSet operator|(const VertexSet& a, const VertexSet& b);
  friend VertexSet operator&(const VertexSet& a, const VertexSet& b);
  friend VertexSet operator-(const VertexSet& a, const VertexSet& b);
  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<int> members_;
};

std::string to_string(const VertexSet& s);

struct Edge {
  int from = 0;
  int to = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Immutable directed acyclic graph on vertices 0..n-1.
class Dag {
 public:
  Dag() = default;
  Dag(int n, std::vector<Edge> edges);

  int size() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& parents(int v) const { return parents_[check(v)]; }
  const std::vector<int>& children(int v) const { return children_[check(v)]; }
  const std::vector<int>& topological_order() const { return topo_; }
  bool has_edge(int from, int to) const;
  bool is_leaf(int v) const { return children(v).empty(); }
  bool is_root(int v) const { return parents(v).empty(); }

 private:
  std::size_t check(int v) const;

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> parents_;
  std::vector<std::vector<int>> children_;
  std::vector<int> topo_;
};

// Ordered partition of vertices; earlier groups precede later ones.
struct GroupOrdering {
  std::vector<VertexSet> groups;

  int universe_size() const;
  // Position of each vertex's group; requires groups to partition 0..n-1.
  std::vector<int> group_index(int n) const;
  void validate(int n) const;
  friend bool operator==(const GroupOrdering&, const GroupOrdering&) = default;
};

// Partially directed graph: directed edges plus undirected adjacencies.
struct Pdag {
  int n = 0;
  std::vector<Edge> directed;
  std::vector<Edge> undirected;

  void validate() const;
};

struct VertexCut {
  int size = 0;
  VertexSet cut;
};

VertexSet ancestors(const Dag& g, const VertexSet& z);
VertexSet descendants(const Dag& g, const VertexSet& z);

// Vertices with a directed path into y whose vertices all avoid s.
VertexSet ancestors_outside(const Dag& g, const VertexSet& y, const VertexSet& s);

bool is_vertex_cut(const Dag& g, const VertexSet& w, const VertexSet& y, const VertexSet& s);

// Minimum vertex cut from w to y; the reported cut is the one closest to y.
VertexCut min_vertex_cut(const Dag& g, const VertexSet& w, const VertexSet& y);

VertexSet critical_vertex_cut(const Dag& g, const VertexSet& z, const VertexSet& y);

// Members of y reachable from Anc(z) by a path avoiding critical \ sub.
VertexSet local_cut_scope(const Dag& g, const VertexSet& z, const VertexSet& y,
                          const VertexSet& sub);

// Degenerate members of y read off the critical cut.
VertexSet degenerate_indices_graphical(const Dag& g, const VertexSet& z, const VertexSet& y);

bool d_separated(const Dag& g, const VertexSet& z, const VertexSet& y, const VertexSet& s);

GroupOrdering graph_group_decomposition(const Dag& g);
GroupOrdering ordering_from_pdag(const Pdag& p);

// Groups vertices by an integer key, ascending.
GroupOrdering group_by_key(const std::vector<int>& key);

}  // namespace tin
