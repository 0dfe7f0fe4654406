#include "ocsw/lp.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ocsw {

namespace {

std::string lvar(int a, int b, int h) {
  return "L_" + std::to_string(a) + "_" + std::to_string(b) + "_" +
         std::to_string(h);
}
std::string cvar(int i, int j, int h) {
  return "C_" + std::to_string(i) + "_" + std::to_string(j) + "_" +
         std::to_string(h);
}

}  // namespace

std::string export_model(const LeafDemandMatrix& demand,
                         const ClusterConfig& cfg, LpObjective objective) {
  if (auto r = validate_config(cfg); !r.ok())
    throw std::invalid_argument("invalid config: " + r.to_string());
  if (auto r = validate_demand(demand, cfg); !r.ok())
    throw std::invalid_argument("invalid demand: " + r.to_string());

  const int n = demand.size();
  const int planes = cfg.spine_planes();
  const bool minmax = objective == LpObjective::kMinMaxLoad;

  // Directed demand pairs, lexicographic; these are the only L variables.
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && demand(a, b) > 0) pairs.push_back({a, b});

  std::ostringstream out;
  out << "\\ leaf-centric logical topology model ("
      << (minmax ? "min-max-load" : "feasibility") << ")\n";
  out << "\\ pods=" << cfg.pods << " leaves=" << n << " planes=" << planes
      << " tau=" << cfg.tau << "\n";
  out << "Minimize\n obj:" << (minmax ? " Z" : "") << "\n";
  out << "Subject To\n";

  // Demand completeness: links over all planes equal the requirement.
  for (const auto& [a, b] : pairs) {
    out << " demand_" << a << "_" << b << ":";
    for (int h = 0; h < planes; ++h)
      out << (h ? " + " : " ") << lvar(a, b, h);
    out << " = " << demand(a, b) << "\n";
  }

  // Leaf-to-spine load rows, both directions. Feasibility caps at tau;
  // min-max-load bounds by the auxiliary variable instead.
  const std::string bound =
      minmax ? std::string(" - Z <= 0") : " <= " + std::to_string(cfg.tau);
  for (int a = 0; a < n; ++a) {
    for (int h = 0; h < planes; ++h) {
      std::vector<std::string> terms;
      for (const auto& [pa, pb] : pairs)
        if (pa == a) terms.push_back(lvar(pa, pb, h));
      if (terms.empty()) continue;
      out << " load_out_" << a << "_" << h << ":";
      for (std::size_t i = 0; i < terms.size(); ++i)
        out << (i ? " + " : " ") << terms[i];
      out << bound << "\n";
    }
  }
  for (int b = 0; b < n; ++b) {
    for (int h = 0; h < planes; ++h) {
      std::vector<std::string> terms;
      for (const auto& [pa, pb] : pairs)
        if (pb == b) terms.push_back(lvar(pa, pb, h));
      if (terms.empty()) continue;
      out << " load_in_" << b << "_" << h << ":";
      for (std::size_t i = 0; i < terms.size(); ++i)
        out << (i ? " + " : " ") << terms[i];
      out << bound << "\n";
    }
  }

  // Circuit linking (block sums define the logical topology) and the
  // bidirectionality requirement on the circuits.
  for (int i = 0; i < cfg.pods; ++i) {
    for (int j = 0; j < cfg.pods; ++j) {
      if (i == j) continue;
      for (int h = 0; h < planes; ++h) {
        out << " link_" << i << "_" << j << "_" << h << ":";
        bool any = false;
        for (const auto& [a, b] : pairs) {
          if (pod_of_leaf(a, cfg) != i || pod_of_leaf(b, cfg) != j) continue;
          out << (any ? " + " : " ") << lvar(a, b, h);
          any = true;
        }
        if (any)
          out << " - " << cvar(i, j, h) << " = 0\n";
        else
          out << " " << cvar(i, j, h) << " = 0\n";  // empty block pins C to 0
      }
    }
  }
  for (int i = 0; i < cfg.pods; ++i)
    for (int j = i + 1; j < cfg.pods; ++j)
      for (int h = 0; h < planes; ++h)
        out << " bidir_" << i << "_" << j << "_" << h << ": " << cvar(i, j, h)
            << " - " << cvar(j, i, h) << " = 0\n";

  out << "Generals\n";
  for (const auto& [a, b] : pairs)
    for (int h = 0; h < planes; ++h) out << " " << lvar(a, b, h) << "\n";
  for (int i = 0; i < cfg.pods; ++i)
    for (int j = 0; j < cfg.pods; ++j)
      if (i != j)
        for (int h = 0; h < planes; ++h) out << " " << cvar(i, j, h) << "\n";
  if (minmax) out << " Z\n";
  out << "End\n";
  return out.str();
}

SpineAssignment import_solution(const std::string& text,
                                const ClusterConfig& cfg) {
  if (auto r = validate_config(cfg); !r.ok())
    throw std::invalid_argument("invalid config: " + r.to_string());
  const int n = cfg.total_leaves();
  const int planes = cfg.spine_planes();
  SpineAssignment asg(n, planes);
  IntTensor3 circuits(cfg.pods, cfg.pods, planes, 0);
  bool saw_circuit = false;

  auto parse_indices = [](const std::string& name, int skip) {
    std::vector<int> idx;
    std::size_t pos = skip;
    while (pos < name.size()) {
      if (name[pos] != '_')
        throw std::runtime_error("malformed variable name: " + name);
      ++pos;
      std::size_t end = pos;
      while (end < name.size() && name[end] != '_') ++end;
      idx.push_back(std::stoi(name.substr(pos, end - pos)));
      pos = end;
    }
    if (idx.size() != 3)
      throw std::runtime_error("malformed variable name: " + name);
    return idx;
  };

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream row(line);
    std::string name;
    if (!(row >> name)) continue;
    if (name[0] == '#') continue;
    double value = 0;
    if (!(row >> value))
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": missing value for " + name);

    const long long rounded = std::llround(value);
    if (std::fabs(value - static_cast<double>(rounded)) > 1e-6)
      throw std::runtime_error("line " + std::to_string(line_no) + ": " +
                               name + " is not integral: " +
                               std::to_string(value));
    if (rounded < 0)
      throw std::runtime_error("line " + std::to_string(line_no) + ": " +
                               name + " is negative");

    if (name.rfind("L", 0) == 0 && name.size() > 1 && name[1] == '_') {
      const auto idx = parse_indices(name, 1);
      if (idx[0] < 0 || idx[0] >= n || idx[1] < 0 || idx[1] >= n ||
          idx[0] == idx[1] || idx[2] < 0 || idx[2] >= planes)
        throw std::runtime_error("line " + std::to_string(line_no) + ": " +
                                 name + " indices out of range");
      asg.links(idx[0], idx[1], idx[2]) = static_cast<int>(rounded);
    } else if (name.rfind("C", 0) == 0 && name.size() > 1 && name[1] == '_') {
      const auto idx = parse_indices(name, 1);
      if (idx[0] < 0 || idx[0] >= cfg.pods || idx[1] < 0 ||
          idx[1] >= cfg.pods || idx[0] == idx[1] || idx[2] < 0 ||
          idx[2] >= planes)
        throw std::runtime_error("line " + std::to_string(line_no) + ": " +
                                 name + " indices out of range");
      circuits(idx[0], idx[1], idx[2]) = static_cast<int>(rounded);
      saw_circuit = true;
    } else if (name == "Z") {
      // objective helper, nothing to import
    } else {
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": unknown variable " + name);
    }
  }

  if (saw_circuit) {
    const auto folded = topology_from_assignment(asg, cfg);
    if (!(folded.circuits == circuits))
      throw std::runtime_error(
          "solution circuits do not match the link assignment (Eq-3 check)");
  }
  return asg;
}

}  // namespace ocsw
