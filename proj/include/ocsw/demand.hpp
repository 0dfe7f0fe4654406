#pragma once

#include "ocsw/core.hpp"
#include "ocsw/matrix.hpp"

namespace ocsw {

/// Leaf-level network requirement: L(a,b) is the number of disjoint
/// cross-pod paths required between leaves a and b. Symmetric, zero on the
/// diagonal and on intra-pod blocks, with row sums bounded by K_leaf.
struct LeafDemandMatrix {
  IntMatrix entries;

  LeafDemandMatrix() = default;
  explicit LeafDemandMatrix(int size) : entries(size, size, 0) {}
  explicit LeafDemandMatrix(IntMatrix m) : entries(std::move(m)) {}

  int size() const { return entries.rows(); }
  int& operator()(int a, int b) { return entries(a, b); }
  int operator()(int a, int b) const { return entries(a, b); }

  /// Adds one bidirectional link requirement between a pair of leaves.
  void add_unit(int a, int b, int count = 1) {
    entries(a, b) += count;
    entries(b, a) += count;
  }
};

ValidationResult validate_demand(const LeafDemandMatrix& demand,
                                 const ClusterConfig& cfg);

}  // namespace ocsw
