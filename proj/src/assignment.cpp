#include "ocsw/assignment.hpp"

#include <algorithm>
#include <sstream>

namespace ocsw {

LogicalTopology topology_from_assignment(const SpineAssignment& asg,
                                         const ClusterConfig& cfg) {
  const int planes = asg.planes();
  LogicalTopology topo(cfg.pods, planes);
  const int n = asg.leaves();
  for (int a = 0; a < n; ++a) {
    const int i = pod_of_leaf(a, cfg);
    for (int b = 0; b < n; ++b) {
      const int j = pod_of_leaf(b, cfg);
      if (i == j) continue;
      for (int h = 0; h < planes; ++h)
        topo.circuits(i, j, h) += asg.links(a, b, h);
    }
  }
  return topo;
}

bool satisfies_demand(const SpineAssignment& asg, const LeafDemandMatrix& L) {
  if (asg.leaves() != L.size()) return false;
  const int n = asg.leaves();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int sum = 0;
      for (int h = 0; h < asg.planes(); ++h) sum += asg.links(a, b, h);
      if (sum != L(a, b)) return false;
    }
  }
  return true;
}

bool check_l2_compatibility(const SpineAssignment& asg,
                            const ClusterConfig& cfg) {
  return check_l2_compatibility(topology_from_assignment(asg, cfg));
}

bool check_l2_compatibility(const LogicalTopology& topo) {
  for (int i = 0; i < topo.pods(); ++i)
    for (int j = i + 1; j < topo.pods(); ++j)
      for (int h = 0; h < topo.planes(); ++h)
        if (topo.circuits(i, j, h) != topo.circuits(j, i, h)) return false;
  return true;
}

ValidationResult validate_topology(const LogicalTopology& topo,
                                   const ClusterConfig& cfg) {
  ValidationResult r;
  if (topo.pods() != cfg.pods) {
    r.violations.push_back({"circuits", "pod dimension mismatch"});
    return r;
  }
  for (int i = 0; i < topo.pods(); ++i) {
    for (int h = 0; h < topo.planes(); ++h) {
      if (topo.circuits(i, i, h) != 0)
        r.violations.push_back(
            {"circuits", "nonzero self-circuit at pod " + std::to_string(i) +
                             " plane " + std::to_string(h)});
      long long ports = 0;
      for (int j = 0; j < topo.pods(); ++j)
        if (j != i) ports += topo.circuits(i, j, h);
      if (ports > cfg.spine_ocs_ports)
        r.violations.push_back(
            {"circuits", "spine (" + std::to_string(i) + "," +
                             std::to_string(h) + ") uses " +
                             std::to_string(ports) + " ports > K_spine " +
                             std::to_string(cfg.spine_ocs_ports)});
    }
  }
  if (!check_l2_compatibility(topo))
    r.violations.push_back({"circuits", "circuits are not bidirectional"});
  return r;
}

std::string PolarizationReport::table() const {
  std::ostringstream out;
  out << "max leaf-spine load : " << max_leaf_spine_load << "\n"
      << "overload            : " << overload << "\n"
      << "contention free     : " << (contention_free ? "yes" : "no") << "\n";
  if (!offending_cells.empty()) {
    out << "offending cells (leaf, plane, load):\n";
    for (const auto& c : offending_cells)
      out << "  leaf " << c.leaf << "  plane " << c.plane << "  load "
          << c.load << "\n";
  }
  for (std::size_t h = 0; h < per_plane_histogram.size(); ++h) {
    out << "plane " << h << " load histogram:";
    for (std::size_t load = 0; load < per_plane_histogram[h].size(); ++load)
      out << " " << load << ":" << per_plane_histogram[h][load];
    out << "\n";
  }
  return out.str();
}

}  // namespace ocsw
