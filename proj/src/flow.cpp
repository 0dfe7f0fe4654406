#include "ocsw/flow.hpp"

#include <queue>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ocsw {

namespace {

// Dinic's max-flow. Adjacency lists keep insertion order so runs are
// reproducible.
class Dinic {
 public:
  explicit Dinic(int n) : graph_(n), level_(n), iter_(n) {}

  // Returns the index of the forward edge within graph_[from].
  int add_edge(int from, int to, long long cap) {
    graph_[from].push_back({to, cap, static_cast<int>(graph_[to].size())});
    graph_[to].push_back({from, 0, static_cast<int>(graph_[from].size()) - 1});
    return static_cast<int>(graph_[from].size()) - 1;
  }

  long long flow_through(int from, int edge_index) const {
    const Edge& e = graph_[from][edge_index];
    return graph_[e.to][e.rev].cap;  // residual on the reverse edge
  }

  long long max_flow(int s, int t) {
    long long total = 0;
    while (bfs(s, t)) {
      std::fill(iter_.begin(), iter_.end(), 0);
      while (long long f = dfs(s, t, kInf)) total += f;
    }
    return total;
  }

  static constexpr long long kInf = 1LL << 60;

 private:
  struct Edge {
    int to;
    long long cap;
    int rev;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const Edge& e : graph_[v]) {
        if (e.cap > 0 && level_[e.to] < 0) {
          level_[e.to] = level_[v] + 1;
          q.push(e.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  long long dfs(int v, int t, long long limit) {
    if (v == t) return limit;
    for (int& i = iter_[v]; i < static_cast<int>(graph_[v].size()); ++i) {
      Edge& e = graph_[v][i];
      if (e.cap <= 0 || level_[v] >= level_[e.to]) continue;
      long long d = dfs(e.to, t, std::min(limit, e.cap));
      if (d > 0) {
        e.cap -= d;
        graph_[e.to][e.rev].cap += d;
        return d;
      }
    }
    return 0;
  }

  std::vector<std::vector<Edge>> graph_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

}  // namespace

std::optional<FlowSolution> solve_bounded_flow(const BoundedFlowProblem& p) {
  const int n = p.node_count;
  if (n <= 0 || p.source < 0 || p.source >= n || p.sink < 0 || p.sink >= n ||
      p.source == p.sink)
    throw std::invalid_argument("malformed flow problem: bad node designation");
  for (const auto& a : p.arcs)
    if (a.from < 0 || a.from >= n || a.to < 0 || a.to >= n)
      throw std::invalid_argument("malformed flow problem: arc endpoint out of range");

  // Bound violations are data, not faults.
  for (const auto& a : p.arcs)
    if (a.lower < 0 || a.lower > a.upper) return std::nullopt;

  // Excess-node transformation: send each lower bound as mandatory flow,
  // close the circulation with sink->source, and check that a super
  // source/sink pair can absorb all imbalances.
  const int super_source = n;
  const int super_sink = n + 1;
  Dinic dinic(n + 2);

  std::vector<long long> excess(n, 0);
  std::vector<std::pair<int, int>> arc_edge(p.arcs.size());
  for (std::size_t i = 0; i < p.arcs.size(); ++i) {
    const auto& a = p.arcs[i];
    arc_edge[i] = {a.from, dinic.add_edge(a.from, a.to, a.upper - a.lower)};
    excess[a.to] += a.lower;
    excess[a.from] -= a.lower;
  }
  dinic.add_edge(p.sink, p.source, Dinic::kInf);

  long long required = 0;
  for (int v = 0; v < n; ++v) {
    if (excess[v] > 0) {
      dinic.add_edge(super_source, v, excess[v]);
      required += excess[v];
    } else if (excess[v] < 0) {
      dinic.add_edge(v, super_sink, -excess[v]);
    }
  }

  if (dinic.max_flow(super_source, super_sink) != required)
    return std::nullopt;

  FlowSolution sol;
  sol.arc_flow.resize(p.arcs.size());
  for (std::size_t i = 0; i < p.arcs.size(); ++i)
    sol.arc_flow[i] =
        p.arcs[i].lower + dinic.flow_through(arc_edge[i].first, arc_edge[i].second);

  for (std::size_t i = 0; i < p.arcs.size(); ++i) {
    if (p.arcs[i].from == p.source) sol.value += sol.arc_flow[i];
    if (p.arcs[i].to == p.source) sol.value -= sol.arc_flow[i];
  }
  return sol;
}

std::string to_dot(const BoundedFlowProblem& p) {
  std::ostringstream out;
  out << "digraph flow {\n  rankdir=LR;\n";
  auto name = [&p](int v) -> std::string {
    if (v < static_cast<int>(p.node_names.size()) && !p.node_names[v].empty())
      return p.node_names[v];
    return "n" + std::to_string(v);
  };
  out << "  \"" << name(p.source) << "\" [shape=doublecircle];\n";
  out << "  \"" << name(p.sink) << "\" [shape=doublecircle];\n";
  for (const auto& a : p.arcs)
    out << "  \"" << name(a.from) << "\" -> \"" << name(a.to) << "\" [label=\""
        << a.lower << ".." << a.upper << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace ocsw
