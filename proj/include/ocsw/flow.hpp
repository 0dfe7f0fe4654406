#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ocsw {

/// Integral max-flow instance with per-arc lower bounds. Infeasible is a
/// value, not a fault: solve returns nullopt when the bounds cannot be met.
struct BoundedFlowProblem {
  struct Arc {
    int from = 0;
    int to = 0;
    long long lower = 0;
    long long upper = 0;
  };

  int node_count = 0;
  int source = -1;
  int sink = -1;
  std::vector<Arc> arcs;
  std::vector<std::string> node_names;  // optional, used by to_dot
};

struct FlowSolution {
  std::vector<long long> arc_flow;  // parallel to problem.arcs
  long long value = 0;              // net flow out of the source
};

/// Finds an integral source->sink flow meeting every arc's bounds, via the
/// standard excess-node transformation plus Dinic's max-flow. Traversal
/// order is fixed by arc insertion order, so results are deterministic.
std::optional<FlowSolution> solve_bounded_flow(const BoundedFlowProblem& p);

/// GraphViz rendering of a flow network, for debugging.
std::string to_dot(const BoundedFlowProblem& p);

}  // namespace ocsw
