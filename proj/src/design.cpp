#include "ocsw/design.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "ocsw/decomp.hpp"

namespace ocsw {

namespace {

void require_valid_inputs(const LeafDemandMatrix& demand,
                          const ClusterConfig& cfg) {
  if (auto r = validate_config(cfg); !r.ok())
    throw std::invalid_argument("invalid config: " + r.to_string());
  if (auto r = validate_demand(demand, cfg); !r.ok())
    throw std::invalid_argument("invalid demand: " + r.to_string());
}

}  // namespace

DesignResult design_leaf_centric(const LeafDemandMatrix& demand,
                                 const ClusterConfig& cfg) {
  require_valid_inputs(demand, cfg);
  const int n = demand.size();
  const int planes = cfg.spine_planes();

  // Step 1: orient the demand so each leaf sends and receives about half of
  // its links. Step 2: split the orientation fairly across planes. Step 3:
  // re-symmetrize per plane and fold to pod-level circuits.
  const IntMatrix oriented = orient_symmetric(demand.entries);
  const std::vector<IntMatrix> shares = decompose_integer(oriented, planes);

  DesignResult out;
  out.assignment = SpineAssignment(n, planes);
  for (int h = 0; h < planes; ++h)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        out.assignment.links(a, b, h) = shares[h](a, b) + shares[h](b, a);
  out.topology = topology_from_assignment(out.assignment, cfg);
  return out;
}

SpineAssignment design_greedy_tau1(const LeafDemandMatrix& demand,
                                   const ClusterConfig& cfg) {
  require_valid_inputs(demand, cfg);
  if (cfg.tau != 1)
    throw std::invalid_argument("design_greedy_tau1: requires tau = 1");
  const int n = demand.size();
  const int planes = cfg.spine_planes();
  for (int a = 0; a < n; ++a) {
    const long long row = demand.entries.row_sum(a);
    if (2 * row > planes)
      throw std::invalid_argument(
          "design_greedy_tau1: row sum " + std::to_string(row) + " of leaf " +
          std::to_string(a) + " exceeds H/2 = " + std::to_string(planes) +
          "/2");
  }

  SpineAssignment asg(n, planes);
  std::vector<char> occupied(static_cast<std::size_t>(n) * planes, 0);
  auto busy = [&](int leaf, int h) -> char& {
    return occupied[static_cast<std::size_t>(leaf) * planes + h];
  };

  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int unit = 0; unit < demand(a, b); ++unit) {
        int chosen = -1;
        for (int h = 0; h < planes; ++h) {
          if (!busy(a, h) && !busy(b, h)) {
            chosen = h;
            break;
          }
        }
        // Under the halved row-sum hypothesis both endpoints still have
        // more than H/2 free planes, so a common one must exist.
        if (chosen < 0)
          throw std::logic_error(
              "design_greedy_tau1: no common free plane for leaves " +
              std::to_string(a) + "," + std::to_string(b) +
              " (hypothesis violated internally)");
        asg.links(a, b, chosen) = 1;
        asg.links(b, a, chosen) = 1;
        busy(a, chosen) = 1;
        busy(b, chosen) = 1;
      }
    }
  }
  return asg;
}

DesignResult design_pod_centric(const LeafDemandMatrix& demand,
                                const ClusterConfig& cfg) {
  require_valid_inputs(demand, cfg);
  const int n = demand.size();
  const int pods = cfg.pods;
  const int planes = cfg.spine_planes();

  // Pod-level demand, upper triangle only so each undirected pod pair is
  // split once and the resulting circuits are bidirectional.
  IntMatrix pod_demand(pods, pods, 0);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (demand(a, b) == 0) continue;
      const int i = pod_of_leaf(a, cfg);
      const int j = pod_of_leaf(b, cfg);
      pod_demand(std::min(i, j), std::max(i, j)) += demand(a, b);
    }

  const std::vector<IntMatrix> shares = decompose_integer(pod_demand, planes);

  DesignResult out;
  out.topology = LogicalTopology(pods, planes);
  for (int h = 0; h < planes; ++h)
    for (int i = 0; i < pods; ++i)
      for (int j = i + 1; j < pods; ++j) {
        out.topology.circuits(i, j, h) = shares[h](i, j);
        out.topology.circuits(j, i, h) = shares[h](i, j);
      }

  // Leaf pairs get planes first-fit against remaining circuit capacity;
  // leaf-to-spine loads are never consulted. This is what makes the
  // baseline polarize.
  IntTensor3 remaining = out.topology.circuits;
  out.assignment = SpineAssignment(n, planes);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const int units = demand(a, b);
      if (units == 0) continue;
      const int i = pod_of_leaf(a, cfg);
      const int j = pod_of_leaf(b, cfg);
      for (int unit = 0; unit < units; ++unit) {
        int chosen = -1;
        for (int h = 0; h < planes; ++h) {
          if (remaining(i, j, h) > 0) {
            chosen = h;
            break;
          }
        }
        if (chosen < 0)
          throw std::logic_error(
              "design_pod_centric: circuit capacity exhausted (defect: "
              "plane split must cover pod demand)");
        out.assignment.links(a, b, chosen) += 1;
        out.assignment.links(b, a, chosen) += 1;
        remaining(i, j, chosen) -= 1;
        remaining(j, i, chosen) -= 1;
      }
    }
  }
  return out;
}

PolarizationReport analyze_polarization(const SpineAssignment& asg,
                                        const ClusterConfig& cfg) {
  if (asg.leaves() != cfg.total_leaves() || asg.planes() != cfg.spine_planes())
    throw std::invalid_argument(
        "analyze_polarization: assignment dimensions do not match config");

  PolarizationReport report;
  const int n = asg.leaves();
  const int planes = asg.planes();
  report.per_plane_histogram.assign(planes, {});

  for (int h = 0; h < planes; ++h) {
    for (int a = 0; a < n; ++a) {
      const int load = std::max(asg.load_out(a, h), asg.load_in(a, h));
      report.max_leaf_spine_load = std::max(report.max_leaf_spine_load, load);
      auto& hist = report.per_plane_histogram[h];
      if (static_cast<int>(hist.size()) <= load) hist.resize(load + 1, 0);
      hist[load] += 1;
      if (load > cfg.tau) report.offending_cells.push_back({a, h, load});
    }
  }
  report.overload = std::max(0, report.max_leaf_spine_load - cfg.tau);
  report.contention_free = report.overload == 0;

  // Leaf loads within tau imply spine ports within K_spine; a violation
  // here means the fold or the designer is broken, not the input.
  if (report.contention_free) {
    const auto topo = topology_from_assignment(asg, cfg);
    if (auto r = validate_topology(topo, cfg); !r.ok())
      throw std::logic_error(
          "analyze_polarization: contention-free assignment violates "
          "topology invariants: " +
          r.to_string());
  }
  return report;
}

std::optional<SpineAssignment> brute_force_design(
    const LeafDemandMatrix& demand, const ClusterConfig& cfg,
    const BruteForceLimits& limits) {
  require_valid_inputs(demand, cfg);
  const int n = demand.size();
  if (n > limits.max_leaves)
    throw std::invalid_argument("brute_force_design: " + std::to_string(n) +
                                " leaves exceed cap " +
                                std::to_string(limits.max_leaves));

  // One searched unit per required link; assignments are bidirectional.
  std::vector<std::pair<int, int>> units;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int k = 0; k < demand(a, b); ++k) units.push_back({a, b});
  if (static_cast<int>(units.size()) > limits.max_units)
    throw std::invalid_argument(
        "brute_force_design: " + std::to_string(units.size()) +
        " demand units exceed cap " + std::to_string(limits.max_units));

  const int planes = cfg.spine_planes();
  std::vector<int> load(static_cast<std::size_t>(n) * planes, 0);
  std::vector<int> chosen(units.size(), -1);
  auto load_at = [&](int leaf, int h) -> int& {
    return load[static_cast<std::size_t>(leaf) * planes + h];
  };

  // Depth-first over plane choices, lowest plane first; repeated units of
  // the same pair are forced non-decreasing to skip permutations.
  std::size_t depth = 0;
  while (true) {
    if (depth == units.size()) break;  // complete assignment found
    const auto [a, b] = units[depth];
    int start = chosen[depth] + 1;
    if (chosen[depth] >= 0) {  // backtracking through this unit
      load_at(a, chosen[depth]) -= 1;
      load_at(b, chosen[depth]) -= 1;
      chosen[depth] = -1;
    }
    if (start == 0 && depth > 0 && units[depth - 1] == units[depth])
      start = chosen[depth - 1];
    int pick = -1;
    for (int h = start; h < planes; ++h) {
      if (load_at(a, h) < cfg.tau && load_at(b, h) < cfg.tau) {
        pick = h;
        break;
      }
    }
    if (pick >= 0) {
      chosen[depth] = pick;
      load_at(a, pick) += 1;
      load_at(b, pick) += 1;
      ++depth;
    } else {
      if (depth == 0) return std::nullopt;  // exhausted: infeasible
      --depth;
    }
  }

  SpineAssignment asg(n, planes);
  for (std::size_t u = 0; u < units.size(); ++u) {
    asg.links(units[u].first, units[u].second, chosen[u]) += 1;
    asg.links(units[u].second, units[u].first, chosen[u]) += 1;
  }
  return asg;
}

}  // namespace ocsw
