#include "tin/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace tin {

VertexSet::VertexSet(std::initializer_list<int> ids) : VertexSet(std::vector<int>(ids)) {}

VertexSet::VertexSet(std::vector<int> ids) : members_(std::move(ids)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.front() < 0)
    throw std::invalid_argument("negative vertex id");
}

VertexSet VertexSet::range(int n) {
  VertexSet s;
  s.members_.resize(std::max(n, 0));
  for (int i = 0; i < n; ++i) s.members_[i] = i;
  return s;
}

VertexSet VertexSet::from_mask(std::uint64_t mask) {
  VertexSet s;
  for (int i = 0; mask != 0; ++i, mask >>= 1)
    if (mask & 1u) s.members_.push_back(i);
  return s;
}

bool VertexSet::contains(int v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

void VertexSet::insert(int v) {
  if (v < 0) throw std::invalid_argument("negative vertex id");
  auto it = std::lower_bound(members_.begin(), members_.end(), v);
  if (it == members_.end() || *it != v) members_.insert(it, v);
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                       members_.end());
}

bool VertexSet::intersects(const VertexSet& other) const {
  auto a = members_.begin();
  auto b = other.members_.begin();
  while (a != members_.end() && b != other.members_.end()) {
    if (*a == *b) return true;
    if (*a < *b) ++a; else ++b;
  }
  return false;
}

std::uint64_t VertexSet::mask() const {
  std::uint64_t m = 0;
  for (int v : members_) {
    if (v >= 64) throw std::out_of_range("vertex id too large for mask");
    m |= std::uint64_t{1} << v;
  }
  return m;
}

VertexSet operator|(const VertexSet& a, const VertexSet& b) {
  VertexSet r;
  std::set_union(a.members_.begin(), a.members_.end(), b.members_.begin(), b.members_.end(),
                 std::back_inserter(r.members_));
  return r;
}

VertexSet operator&(const VertexSet& a, const VertexSet& b) {
  VertexSet r;
  std::set_intersection(a.members_.begin(), a.members_.end(), b.members_.begin(),
                        b.members_.end(), std::back_inserter(r.members_));
  return r;
}

VertexSet operator-(const VertexSet& a, const VertexSet& b) {
  VertexSet r;
  std::set_difference(a.members_.begin(), a.members_.end(), b.members_.begin(), b.members_.end(),
                      std::back_inserter(r.members_));
  return r;
}

std::string to_string(const VertexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.ids().size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.ids()[i]);
  }
  return out + "}";
}

Dag::Dag(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  parents_.assign(n, {});
  children_.assign(n, {});
  for (const Edge& e : edges_) {
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.from == e.to) throw std::invalid_argument("self-loop on vertex " + std::to_string(e.from));
    auto& ch = children_[e.from];
    if (std::find(ch.begin(), ch.end(), e.to) != ch.end())
      throw std::invalid_argument("duplicate edge " + std::to_string(e.from) + "->" +
                                  std::to_string(e.to));
    ch.push_back(e.to);
    parents_[e.to].push_back(e.from);
  }
  for (auto& p : parents_) std::sort(p.begin(), p.end());
  for (auto& c : children_) std::sort(c.begin(), c.end());

  // Kahn's algorithm, smallest ready vertex first so the order is canonical.
  std::vector<int> indeg(n);
  for (int v = 0; v < n; ++v) indeg[v] = static_cast<int>(parents_[v].size());
  std::vector<int> ready;
  for (int v = n - 1; v >= 0; --v)
    if (indeg[v] == 0) ready.push_back(v);
  while (!ready.empty()) {
    std::sort(ready.begin(), ready.end(), std::greater<>());
    int v = ready.back();
    ready.pop_back();
    topo_.push_back(v);
    for (int c : children_[v])
      if (--indeg[c] == 0) ready.push_back(c);
  }
  if (static_cast<int>(topo_.size()) != n) throw std::invalid_argument("graph contains a cycle");
}

std::size_t Dag::check(int v) const {
  if (v < 0 || v >= n_) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
  return v;
}

bool Dag::has_edge(int from, int to) const {
  const auto& ch = children(from);
  return std::binary_search(ch.begin(), ch.end(), to);
}

int GroupOrdering::universe_size() const {
  int n = 0;
  for (const auto& g : groups) n += g.size();
  return n;
}

std::vector<int> GroupOrdering::group_index(int n) const {
  std::vector<int> idx(n, -1);
  for (std::size_t k = 0; k < groups.size(); ++k) {
    for (int v : groups[k]) {
      if (v >= n) throw std::invalid_argument("ordering mentions vertex outside universe");
      if (idx[v] != -1)
        throw std::invalid_argument("vertex " + std::to_string(v) + " appears in two groups");
      idx[v] = static_cast<int>(k);
    }
  }
  for (int v = 0; v < n; ++v)
    if (idx[v] == -1)
      throw std::invalid_argument("vertex " + std::to_string(v) + " missing from ordering");
  return idx;
}

void GroupOrdering::validate(int n) const {
  for (const auto& g : groups)
    if (g.empty()) throw std::invalid_argument("empty group in ordering");
  (void)group_index(n);
}

void Pdag::validate() const {
  std::vector<std::vector<int>> adj(n);
  auto check_edge = [&](const Edge& e) {
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
      throw std::invalid_argument("pdag edge endpoint out of range");
    if (e.from == e.to) throw std::invalid_argument("pdag self-loop");
    auto& a = adj[std::min(e.from, e.to)];
    int other = std::max(e.from, e.to);
    if (std::find(a.begin(), a.end(), other) != a.end())
      throw std::invalid_argument("pdag has two edges between the same pair");
    a.push_back(other);
  };
  for (const auto& e : directed) check_edge(e);
  for (const auto& e : undirected) check_edge(e);
  Dag(n, directed);  // throws on a directed cycle
}

namespace {

VertexSet bfs(int n, const VertexSet& start, const VertexSet& blocked,
              const std::vector<int>& (Dag::*next)(int) const, const Dag& g) {
  std::vector<char> seen(n, 0);
  std::deque<int> queue;
  for (int v : start) {
    if (blocked.contains(v) || seen[v]) continue;
    seen[v] = 1;
    queue.push_back(v);
  }
  std::vector<int> out;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    out.push_back(v);
    for (int u : (g.*next)(v)) {
      if (seen[u] || blocked.contains(u)) continue;
      seen[u] = 1;
      queue.push_back(u);
    }
  }
  return VertexSet(std::move(out));
}

void check_members(const Dag& g, const VertexSet& s) {
  if (!s.empty() && s.ids().back() >= g.size())
    throw std::out_of_range("vertex " + std::to_string(s.ids().back()) + " not in graph");
}

}  // namespace

VertexSet ancestors(const Dag& g, const VertexSet& z) {
  check_members(g, z);
  return bfs(g.size(), z, {}, &Dag::parents, g);
}

VertexSet descendants(const Dag& g, const VertexSet& z) {
  check_members(g, z);
  return bfs(g.size(), z, {}, &Dag::children, g);
}

VertexSet ancestors_outside(const Dag& g, const VertexSet& y, const VertexSet& s) {
  check_members(g, y);
  check_members(g, s);
  return bfs(g.size(), y, s, &Dag::parents, g);
}

bool is_vertex_cut(const Dag& g, const VertexSet& w, const VertexSet& y, const VertexSet& s) {
  check_members(g, w);
  return !ancestors_outside(g, y, s).intersects(w);
}

VertexSet critical_vertex_cut(const Dag& g, const VertexSet& z, const VertexSet& y) {
  return min_vertex_cut(g, ancestors(g, z), y).cut;
}

VertexSet local_cut_scope(const Dag& g, const VertexSet& z, const VertexSet& y,
                          const VertexSet& sub) {
  VertexSet critical = critical_vertex_cut(g, z, y);
  if (!sub.is_subset_of(critical))
    throw std::invalid_argument("subset " + to_string(sub) + " is not inside the critical cut " +
                                to_string(critical));
  VertexSet reach = bfs(g.size(), ancestors(g, z), critical - sub, &Dag::children, g);
  return reach & y;
}

VertexSet degenerate_indices_graphical(const Dag& g, const VertexSet& z, const VertexSet& y) {
  VertexSet critical = critical_vertex_cut(g, z, y);
  VertexSet anc = ancestors(g, z);
  const int k = critical.size();
  if (k > 20) throw std::invalid_argument("critical cut too large to enumerate");
  VertexSet out;
  for (std::uint32_t m = 1; m < (1u << k); ++m) {
    std::vector<int> sub;
    for (int i = 0; i < k; ++i)
      if (m & (1u << i)) sub.push_back(critical[i]);
    VertexSet s(std::move(sub));
    VertexSet scope = bfs(g.size(), anc, critical - s, &Dag::children, g) & y;
    if (scope.size() == s.size()) out = out | scope;
  }
  return out;
}

bool d_separated(const Dag& g, const VertexSet& z, const VertexSet& y, const VertexSet& s) {
  check_members(g, z);
  check_members(g, y);
  check_members(g, s);
  if (z.intersects(y) || z.intersects(s) || y.intersects(s))
    throw std::invalid_argument("d-separation sets must be pairwise disjoint");
  const int n = g.size();
  VertexSet anc_s = ancestors(g, s);
  // Reachability over (vertex, arrived-from-child) states.
  std::vector<char> seen((2 * n), 0);
  std::deque<std::pair<int, bool>> queue;
  for (int v : z) queue.emplace_back(v, true);
  while (!queue.empty()) {
    auto [v, up] = queue.front();
    queue.pop_front();
    auto& mark = seen[(2 * v + (up ? 1 : 0))];
    if (mark) continue;
    mark = 1;
    const bool observed = s.contains(v);
    if (!observed && y.contains(v)) return false;
    if (up && !observed) {
      for (int p : g.parents(v)) queue.emplace_back(p, true);
      for (int c : g.children(v)) queue.emplace_back(c, false);
    } else if (!up) {
      if (!observed)
        for (int c : g.children(v)) queue.emplace_back(c, false);
      if (anc_s.contains(v))
        for (int p : g.parents(v)) queue.emplace_back(p, true);
    }
  }
  return true;
}

GroupOrdering graph_group_decomposition(const Dag& g) {
  const int n = g.size();
  std::vector<char> removed(n, 0);
  int left = n;
  GroupOrdering out;
  auto live_parents = [&](int v) {
    std::vector<int> ps;
    for (int p : g.parents(v))
      if (!removed[p]) ps.push_back(p);
    return ps;
  };
  while (left > 0) {
    std::vector<int> group;
    std::vector<char> is_root(n, 0);
    for (int v = 0; v < n; ++v)
      if (!removed[v] && live_parents(v).empty()) {
        is_root[v] = 1;
        group.push_back(v);
      }
    for (int v = 0; v < n; ++v) {
      if (removed[v] || is_root[v] || !g.is_leaf(v))
        continue;
      auto ps = live_parents(v);
      if (ps.size() == 1 && is_root[ps[0]]) group.push_back(v);
    }
    for (int v : group) removed[v] = 1;
    left -= static_cast<int>(group.size());
    out.groups.emplace_back(std::move(group));
  }
  return out;
}

GroupOrdering ordering_from_pdag(const Pdag& p) {
  p.validate();
  const int n = p.n;
  std::vector<std::vector<int>> out_dir(n), in_dir(n),
      undir(n);
  for (const auto& e : p.directed) {
    out_dir[e.from].push_back(e.to);
    in_dir[e.to].push_back(e.from);
  }
  for (const auto& e : p.undirected) {
    undir[e.from].push_back(e.to);
    undir[e.to].push_back(e.from);
  }
  std::vector<char> removed(n, 0);
  auto reach_from = [&](int s) {
    std::vector<char> seen(n, 0);
    std::deque<int> q{s};
    seen[s] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      auto visit = [&](int u) {
        if (!removed[u] && !seen[u]) {
          seen[u] = 1;
          q.push_back(u);
        }
      };
      for (int u : out_dir[v]) visit(u);
      for (int u : undir[v]) visit(u);
    }
    return seen;
  };
  GroupOrdering out;
  int left = n;
  while (left > 0) {
    std::vector<std::vector<char>> reach(n);
    for (int v = 0; v < n; ++v)
      if (!removed[v]) reach[v] = reach_from(v);
    // A root has no live mixed-path ancestor outside its own strongly connected class.
    std::vector<char> is_root(n, 0);
    std::vector<int> group;
    for (int v = 0; v < n; ++v) {
      if (removed[v]) continue;
      bool root = true;
      for (int u = 0; u < n && root; ++u)
        if (u != v && !removed[u] && reach[u][v] &&
            !reach[v][u])
          root = false;
      if (root) {
        is_root[v] = 1;
        group.push_back(v);
      }
    }
    for (int v = 0; v < n; ++v) {
      if (removed[v] || is_root[v]) continue;
      auto live = [&](const std::vector<int>& vs) {
        std::vector<int> r;
        for (int u : vs)
          if (!removed[u]) r.push_back(u);
        return r;
      };
      if (!live(out_dir[v]).empty() || !live(undir[v]).empty()) continue;
      auto ps = live(in_dir[v]);
      if (ps.size() == 1 && is_root[ps[0]]) group.push_back(v);
    }
    for (int v : group) removed[v] = 1;
    left -= static_cast<int>(group.size());
    out.groups.emplace_back(std::move(group));
  }
  return out;
}

GroupOrdering group_by_key(const std::vector<int>& key) {
  std::map<int, std::vector<int>> buckets;
  for (std::size_t v = 0; v < key.size(); ++v) buckets[key[v]].push_back(static_cast<int>(v));
  GroupOrdering out;
  for (auto& [k, vs] : buckets) out.groups.emplace_back(std::move(vs));
  return out;
}

}  // namespace tin
