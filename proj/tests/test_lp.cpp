#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "ocsw/design.hpp"
#include "ocsw/lp.hpp"

using namespace ocsw;

namespace {

ClusterConfig tau2_config() {
  ClusterConfig cfg;
  cfg.pods = 3;
  cfg.leaf_uplink_ports = 4;
  cfg.spine_ocs_ports = 4;
  cfg.ocs_ports = 8;
  cfg.tau = 2;
  return cfg;
}

LeafDemandMatrix triangle_demand() {
  LeafDemandMatrix demand(6);
  demand.add_unit(0, 2);
  demand.add_unit(2, 4);
  demand.add_unit(0, 4);
  return demand;
}

}  // namespace

TEST_CASE("zero-demand model has the LP skeleton and pinned circuits") {
  const ClusterConfig cfg = tau2_config();
  const std::string model =
      export_model(LeafDemandMatrix(6), cfg, LpObjective::kFeasibility);
  CHECK(model.find("Minimize") != std::string::npos);
  CHECK(model.find("Subject To") != std::string::npos);
  CHECK(model.find("Generals") != std::string::npos);
  CHECK(model.find("End") != std::string::npos);
  // no demand rows, but every circuit variable is pinned to zero
  CHECK(model.find("demand_") == std::string::npos);
  CHECK(model.find("link_0_1_0: C_0_1_0 = 0") != std::string::npos);
}

TEST_CASE("triangle model rows match the constraint set") {
  const ClusterConfig cfg = tau2_config();
  const std::string model =
      export_model(triangle_demand(), cfg, LpObjective::kFeasibility);
  CHECK(model.find("demand_0_2: L_0_2_0 + L_0_2_1 = 1") != std::string::npos);
  CHECK(model.find("demand_2_0:") != std::string::npos);  // both directions
  CHECK(model.find("load_out_0_0: L_0_2_0 + L_0_4_0 <= 2") !=
        std::string::npos);
  CHECK(model.find("load_in_4_1:") != std::string::npos);
  CHECK(model.find("link_0_1_0: L_0_2_0 - C_0_1_0 = 0") != std::string::npos);
  CHECK(model.find("bidir_0_1_0: C_0_1_0 - C_1_0_0 = 0") != std::string::npos);
  CHECK(model.find(" Z") == std::string::npos);
}

TEST_CASE("min-max-load variant bounds loads with the auxiliary variable") {
  const ClusterConfig cfg = tau2_config();
  const std::string model =
      export_model(triangle_demand(), cfg, LpObjective::kMinMaxLoad);
  CHECK(model.find("obj: Z") != std::string::npos);
  CHECK(model.find("load_out_0_0: L_0_2_0 + L_0_4_0 - Z <= 0") !=
        std::string::npos);
  CHECK(model.find("<= 2") == std::string::npos);
}

TEST_CASE("exports are byte-stable") {
  const ClusterConfig cfg = tau2_config();
  const auto a = export_model(triangle_demand(), cfg, LpObjective::kFeasibility);
  const auto b = export_model(triangle_demand(), cfg, LpObjective::kFeasibility);
  CHECK(a == b);
}

TEST_CASE("export rejects invalid demand") {
  const ClusterConfig cfg = tau2_config();
  LeafDemandMatrix bad(6);
  bad(0, 2) = 1;
  CHECK_THROWS_AS(export_model(bad, cfg, LpObjective::kFeasibility),
                  std::invalid_argument);
}

TEST_CASE("importing an empty solution yields the zero assignment") {
  const ClusterConfig cfg = tau2_config();
  const SpineAssignment asg = import_solution("", cfg);
  CHECK(asg.links == IntTensor3(6, 6, 2, 0));
}

TEST_CASE("import rejects malformed input") {
  const ClusterConfig cfg = tau2_config();
  CHECK_THROWS_AS(import_solution("X_1_2_0 1\n", cfg), std::runtime_error);
  CHECK_THROWS_AS(import_solution("L_0_2 1\n", cfg), std::runtime_error);
  CHECK_THROWS_AS(import_solution("L_0_2_0\n", cfg), std::runtime_error);
  CHECK_THROWS_AS(import_solution("L_0_2_0 0.5\n", cfg), std::runtime_error);
  CHECK_THROWS_AS(import_solution("L_0_2_0 -1\n", cfg), std::runtime_error);
  CHECK_THROWS_AS(import_solution("L_0_9_0 1\n", cfg), std::runtime_error);
  CHECK_THROWS_AS(import_solution("L_0_2_7 1\n", cfg), std::runtime_error);
}

TEST_CASE("import tolerates near-integral values and comments") {
  const ClusterConfig cfg = tau2_config();
  const SpineAssignment asg =
      import_solution("# solver output\nL_0_2_0 0.9999997\n\nZ 0\n", cfg);
  CHECK(asg.links(0, 2, 0) == 1);
}

TEST_CASE("solution round-trip through the brute-force oracle") {
  // Stand-in for an external MIP solver: solve the exported triangle model
  // with the exhaustive oracle, print its solution in `name value` form,
  // and import it back.
  const ClusterConfig cfg = tau2_config();
  const LeafDemandMatrix demand = triangle_demand();
  const auto solved = brute_force_design(demand, cfg);
  REQUIRE(solved.has_value());

  std::ostringstream sol;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      for (int h = 0; h < 2; ++h)
        if (solved->links(a, b, h) > 0)
          sol << "L_" << a << "_" << b << "_" << h << " "
              << solved->links(a, b, h) << "\n";
  const auto topo = topology_from_assignment(*solved, cfg);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int h = 0; h < 2; ++h)
        if (topo.circuits(i, j, h) > 0)
          sol << "C_" << i << "_" << j << "_" << h << " "
              << topo.circuits(i, j, h) << "\n";

  const SpineAssignment imported = import_solution(sol.str(), cfg);
  CHECK(satisfies_demand(imported, demand));
  CHECK(check_l2_compatibility(imported, cfg));
  CHECK(analyze_polarization(imported, cfg).contention_free);
}

TEST_CASE("import cross-checks circuit values against the links") {
  const ClusterConfig cfg = tau2_config();
  CHECK_THROWS_AS(
      import_solution("L_0_2_0 1\nL_2_0_0 1\nC_0_1_0 5\n", cfg),
      std::runtime_error);
}
