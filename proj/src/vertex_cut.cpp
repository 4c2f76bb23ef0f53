#include <deque>
#include <limits>
#include <stdexcept>

#include "tin/graph.hpp"

namespace tin {
namespace {

// Unit-capacity vertex splitting: v_in = 2v, v_out = 2v + 1.
class SplitNetwork {
 public:
  explicit SplitNetwork(int n) : n_(n), head_(2 * n + 2, -1) {}

  int source() const { return 2 * n_; }
  int sink() const { return 2 * n_ + 1; }

  void add_arc(int from, int to, int cap) {
    arcs_.push_back({to, cap, head_[from]});
    head_[from] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({from, 0, head_[to]});
    head_[to] = static_cast<int>(arcs_.size()) - 1;
  }

  int max_flow() {
    int flow = 0;
    const int nodes = static_cast<int>(head_.size());
    std::vector<int> via(nodes);
    while (true) {
      std::fill(via.begin(), via.end(), -1);
      std::deque<int> q{source()};
      via[source()] = -2;
      while (!q.empty() && via[sink()] == -1) {
        int u = q.front();
        q.pop_front();
        for (int a = head_[u]; a != -1; a = arcs_[a].next) {
          int v = arcs_[a].to;
          if (arcs_[a].cap > 0 && via[v] == -1) {
            via[v] = a;
            q.push_back(v);
          }
        }
      }
      if (via[sink()] == -1) return flow;
      for (int v = sink(); v != source();) {
        int a = via[v];
        arcs_[a].cap -= 1;
        arcs_[a ^ 1].cap += 1;
        v = arcs_[a ^ 1].to;
      }
      ++flow;
    }
  }

  // Nodes that can still push flow to the sink in the residual graph.
  std::vector<char> reaches_sink() const {
    std::vector<char> mark(head_.size(), 0);
    std::deque<int> q{sink()};
    mark[sink()] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      // Arc a ^ 1 goes u -> v for each arc a leaving v.
      for (int a = head_[v]; a != -1; a = arcs_[a].next) {
        int u = arcs_[a].to;
        if (!mark[u] && arcs_[a ^ 1].cap > 0) {
          mark[u] = 1;
          q.push_back(u);
        }
      }
    }
    return mark;
  }

 private:
  struct Arc {
    int to;
    int cap;
    int next;
  };
  int n_;
  std::vector<int> head_;
  std::vector<Arc> arcs_;
};

constexpr int kInf = std::numeric_limits<int>::max() / 4;

}  // namespace

VertexCut min_vertex_cut(const Dag& g, const VertexSet& w, const VertexSet& y) {
  const int n = g.size();
  for (const VertexSet* s : {&w, &y})
    if (!s->empty() && s->ids().back() >= n) throw std::out_of_range("vertex not in graph");
  if (w.empty() || y.empty()) return {};

  SplitNetwork net(n);
  for (int v = 0; v < n; ++v) net.add_arc(2 * v, 2 * v + 1, 1);
  for (const Edge& e : g.edges()) net.add_arc(2 * e.from + 1, 2 * e.to, kInf);
  for (int v : w) net.add_arc(net.source(), 2 * v, kInf);
  for (int v : y) net.add_arc(2 * v + 1, net.sink(), kInf);

  VertexCut out;
  out.size = net.max_flow();
  auto to_sink = net.reaches_sink();
  std::vector<int> cut;
  for (int v = 0; v < n; ++v)
    if (to_sink[2 * v + 1] && !to_sink[2 * v]) cut.push_back(v);
  out.cut = VertexSet(std::move(cut));
  if (out.cut.size() != out.size) throw std::logic_error("vertex cut does not match flow value");
  return out;
}

}  // namespace tin
