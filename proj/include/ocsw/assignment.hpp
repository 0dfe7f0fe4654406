#pragma once

#include <string>
#include <vector>

#include "ocsw/core.hpp"
#include "ocsw/demand.hpp"
#include "ocsw/matrix.hpp"

namespace ocsw {

/// Per-plane leaf-pair link assignment: links(a,b,h) is the number of
/// required links from leaf a to leaf b carried by spine plane h.
struct SpineAssignment {
  IntTensor3 links;  // (eta, eta, H)

  SpineAssignment() = default;
  SpineAssignment(int leaves, int planes) : links(leaves, leaves, planes, 0) {}

  int leaves() const { return links.dim0(); }
  int planes() const { return links.dim2(); }

  /// Links leaving leaf a on plane h.
  int load_out(int a, int h) const {
    int s = 0;
    for (int b = 0; b < leaves(); ++b) s += links(a, b, h);
    return s;
  }
  /// Links entering leaf b on plane h.
  int load_in(int b, int h) const {
    int s = 0;
    for (int a = 0; a < leaves(); ++a) s += links(a, b, h);
    return s;
  }
};

/// Inter-pod circuit counts per spine plane: circuits(i,j,h) links the h-th
/// spine of pod i with the h-th spine of pod j. This is the OCS
/// configuration; a plane never mixes spine indices by construction.
struct LogicalTopology {
  IntTensor3 circuits;  // (P, P, H)

  LogicalTopology() = default;
  LogicalTopology(int pods, int planes) : circuits(pods, pods, planes, 0) {}

  int pods() const { return circuits.dim0(); }
  int planes() const { return circuits.dim2(); }
};

/// Folds an assignment into pod-level circuit counts (per-plane block sums).
LogicalTopology topology_from_assignment(const SpineAssignment& asg,
                                         const ClusterConfig& cfg);

/// True iff the per-plane links sum back to the demand for every leaf pair.
bool satisfies_demand(const SpineAssignment& asg, const LeafDemandMatrix& L);

/// True iff every per-plane pod block has equal forward and backward sums,
/// i.e. the implied circuits are bidirectional.
bool check_l2_compatibility(const SpineAssignment& asg,
                            const ClusterConfig& cfg);
bool check_l2_compatibility(const LogicalTopology& topo);

/// Structural checks on a topology tensor: zero diagonal, bidirectional
/// circuits, and spine port capacity per (pod, plane).
ValidationResult validate_topology(const LogicalTopology& topo,
                                   const ClusterConfig& cfg);

struct PolarizationCell {
  int leaf = 0;
  int plane = 0;
  int load = 0;  // max of in/out load at that (leaf, plane)
};

/// Routing-polarization summary of an assignment: how far the worst
/// leaf-to-spine load exceeds the tau parallel links available.
struct PolarizationReport {
  int max_leaf_spine_load = 0;
  int overload = 0;  // max(0, max_leaf_spine_load - tau)
  bool contention_free = true;
  std::vector<PolarizationCell> offending_cells;       // load > tau
  std::vector<std::vector<int>> per_plane_histogram;   // [h][load] = leaves
  std::string table() const;
};

}  // namespace ocsw
