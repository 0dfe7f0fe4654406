#include "ocsw/demand.hpp"

#include <string>

namespace ocsw {

ValidationResult validate_demand(const LeafDemandMatrix& demand,
                                 const ClusterConfig& cfg) {
  ValidationResult r;
  const int n = demand.size();
  if (demand.entries.cols() != n) {
    r.violations.push_back({"entries", "matrix is not square"});
    return r;
  }
  if (n != cfg.total_leaves()) {
    r.violations.push_back(
        {"size", "demand size " + std::to_string(n) +
                     " does not match config leaf count " +
                     std::to_string(cfg.total_leaves())});
    return r;
  }

  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const int v = demand(a, b);
      if (v < 0) {
        r.violations.push_back({"entries", "negative entry at (" +
                                               std::to_string(a) + "," +
                                               std::to_string(b) + ")"});
      }
      if (b > a && v != demand(b, a)) {
        r.violations.push_back({"entries", "asymmetric at (" +
                                               std::to_string(a) + "," +
                                               std::to_string(b) + ")"});
      }
      if (v != 0 && pod_of_leaf(a, cfg) == pod_of_leaf(b, cfg)) {
        r.violations.push_back(
            {"entries", "nonzero intra-pod entry at (" + std::to_string(a) +
                            "," + std::to_string(b) + ")"});
      }
    }
  }

  const long long cap = cfg.leaf_uplink_ports;
  for (int a = 0; a < n; ++a) {
    const long long row = demand.entries.row_sum(a);
    if (row > cap) {
      r.violations.push_back(
          {"entries", "row sum " + std::to_string(row) + " of leaf " +
                          std::to_string(a) + " exceeds K_leaf " +
                          std::to_string(cap)});
    }
    // Column overflow can only differ from row overflow for asymmetric
    // input, which is already reported above; still check to name the leaf.
    const long long col = demand.entries.col_sum(a);
    if (col > cap && col != row) {
      r.violations.push_back(
          {"entries", "column sum " + std::to_string(col) + " of leaf " +
                          std::to_string(a) + " exceeds K_leaf " +
                          std::to_string(cap)});
    }
  }
  return r;
}

}  // namespace ocsw
