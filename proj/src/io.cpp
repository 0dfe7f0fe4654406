#include "ocsw/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ocsw {

using ordered_json = nlohmann::ordered_json;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ClusterConfig load_config_json(const std::string& path) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  ClusterConfig cfg;
  try {
    cfg.pods = doc.at("pods").get<int>();
    cfg.leaf_uplink_ports = doc.at("leaf_uplink_ports").get<int>();
    cfg.spine_ocs_ports = doc.at("spine_ocs_ports").get<int>();
    cfg.ocs_ports = doc.at("ocs_ports").get<int>();
    cfg.tau = doc.at("tau").get<int>();
    cfg.gpus_per_server = doc.value("gpus_per_server", 8);
    cfg.link_bandwidth_gbps = doc.value("link_bandwidth_gbps", 200.0);
    cfg.intra_server_bandwidth_gbps =
        doc.value("intra_server_bandwidth_gbps", 400.0);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return cfg;
}

std::string config_to_json(const ClusterConfig& cfg) {
  ordered_json doc;
  doc["pods"] = cfg.pods;
  doc["leaf_uplink_ports"] = cfg.leaf_uplink_ports;
  doc["spine_ocs_ports"] = cfg.spine_ocs_ports;
  doc["ocs_ports"] = cfg.ocs_ports;
  doc["tau"] = cfg.tau;
  doc["gpus_per_server"] = cfg.gpus_per_server;
  doc["link_bandwidth_gbps"] = cfg.link_bandwidth_gbps;
  doc["intra_server_bandwidth_gbps"] = cfg.intra_server_bandwidth_gbps;
  return doc.dump(2) + "\n";
}

namespace {

LeafDemandMatrix demand_from_json_text(const std::string& text,
                                       const std::string& origin) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(origin + ": " + e.what());
  }
  const int n = doc.at("size").get<int>();
  if (n < 0) throw std::runtime_error(origin + ": negative size");
  const auto& rows = doc.at("entries");
  if (static_cast<int>(rows.size()) != n)
    throw std::runtime_error(origin + ": entries row count != size");
  LeafDemandMatrix demand(n);
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(rows[a].size()) != n)
      throw std::runtime_error(origin + ": row " + std::to_string(a) +
                               " has wrong length");
    for (int b = 0; b < n; ++b) demand(a, b) = rows[a][b].get<int>();
  }
  return demand;
}

LeafDemandMatrix demand_from_csv_text(const std::string& text,
                                      const std::string& origin) {
  std::vector<std::vector<int>> rows;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<int> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        row.push_back(std::stoi(cell));
      } catch (const std::exception&) {
        throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                                 ": not an integer: '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  const int n = static_cast<int>(rows.size());
  LeafDemandMatrix demand(n);
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(rows[a].size()) != n)
      throw std::runtime_error(origin + ": row " + std::to_string(a + 1) +
                               " has " + std::to_string(rows[a].size()) +
                               " columns, expected " + std::to_string(n));
    for (int b = 0; b < n; ++b) demand(a, b) = rows[a][b];
  }
  return demand;
}

}  // namespace

LeafDemandMatrix load_demand(const std::string& path) {
  const std::string text = read_file(path);
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
    return demand_from_json_text(text, path);
  return demand_from_csv_text(text, path);
}

std::string demand_to_json(const LeafDemandMatrix& demand) {
  ordered_json doc;
  const int n = demand.size();
  doc["size"] = n;
  auto rows = ordered_json::array();
  for (int a = 0; a < n; ++a) {
    auto row = ordered_json::array();
    for (int b = 0; b < n; ++b) row.push_back(demand(a, b));
    rows.push_back(std::move(row));
  }
  doc["entries"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string demand_to_csv(const LeafDemandMatrix& demand) {
  std::ostringstream out;
  const int n = demand.size();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) out << (b ? "," : "") << demand(a, b);
    out << "\n";
  }
  return out.str();
}

std::string assignment_to_json(const SpineAssignment& asg) {
  ordered_json doc;
  doc["leaves"] = asg.leaves();
  doc["planes"] = asg.planes();
  auto outer = ordered_json::array();
  for (int a = 0; a < asg.leaves(); ++a) {
    auto mid = ordered_json::array();
    for (int b = 0; b < asg.leaves(); ++b) {
      auto inner = ordered_json::array();
      for (int h = 0; h < asg.planes(); ++h)
        inner.push_back(asg.links(a, b, h));
      mid.push_back(std::move(inner));
    }
    outer.push_back(std::move(mid));
  }
  doc["links"] = std::move(outer);
  return doc.dump() + "\n";
}

SpineAssignment load_assignment_json(const std::string& path) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  try {
    const int n = doc.at("leaves").get<int>();
    const int planes = doc.at("planes").get<int>();
    if (n < 0 || planes < 1)
      throw std::runtime_error(path + ": bad dimensions");
    SpineAssignment asg(n, planes);
    const auto& outer = doc.at("links");
    if (static_cast<int>(outer.size()) != n)
      throw std::runtime_error(path + ": links outer size mismatch");
    for (int a = 0; a < n; ++a) {
      if (static_cast<int>(outer[a].size()) != n)
        throw std::runtime_error(path + ": links row size mismatch");
      for (int b = 0; b < n; ++b) {
        if (static_cast<int>(outer[a][b].size()) != planes)
          throw std::runtime_error(path + ": links plane size mismatch");
        for (int h = 0; h < planes; ++h)
          asg.links(a, b, h) = outer[a][b][h].get<int>();
      }
    }
    return asg;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::string topology_to_json(const LogicalTopology& topo) {
  ordered_json doc;
  doc["pods"] = topo.pods();
  doc["planes"] = topo.planes();
  auto outer = ordered_json::array();
  for (int i = 0; i < topo.pods(); ++i) {
    auto mid = ordered_json::array();
    for (int j = 0; j < topo.pods(); ++j) {
      auto inner = ordered_json::array();
      for (int h = 0; h < topo.planes(); ++h)
        inner.push_back(topo.circuits(i, j, h));
      mid.push_back(std::move(inner));
    }
    outer.push_back(std::move(mid));
  }
  doc["circuits"] = std::move(outer);
  return doc.dump() + "\n";
}

LogicalTopology load_topology_json(const std::string& path) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  try {
    const int pods = doc.at("pods").get<int>();
    const int planes = doc.at("planes").get<int>();
    LogicalTopology topo(pods, planes);
    const auto& outer = doc.at("circuits");
    if (static_cast<int>(outer.size()) != pods)
      throw std::runtime_error(path + ": circuits size mismatch");
    for (int i = 0; i < pods; ++i)
      for (int j = 0; j < pods; ++j)
        for (int h = 0; h < planes; ++h)
          topo.circuits(i, j, h) = outer[i][j][h].get<int>();
    return topo;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::string polarization_to_json(const PolarizationReport& report, int tau) {
  ordered_json doc;
  doc["tau"] = tau;
  doc["max_leaf_spine_load"] = report.max_leaf_spine_load;
  doc["overload"] = report.overload;
  doc["contention_free"] = report.contention_free;
  auto cells = ordered_json::array();
  for (const auto& c : report.offending_cells) {
    ordered_json cell;
    cell["leaf"] = c.leaf;
    cell["plane"] = c.plane;
    cell["load"] = c.load;
    cells.push_back(std::move(cell));
  }
  doc["offending_cells"] = std::move(cells);
  doc["per_plane_histogram"] = report.per_plane_histogram;
  return doc.dump(2) + "\n";
}

std::string sim_report_to_json(const SimReport& report) {
  ordered_json doc;
  doc["designer"] = designer_name(report.designer);
  doc["seed"] = report.seed;
  doc["hashing"] =
      report.hashing == HashStrategy::kRehashing ? "rehashing" : "ecmp";
  doc["avg_jrt"] = report.avg_jrt;
  doc["avg_jct"] = report.avg_jct;
  doc["reconfig_count"] = report.reconfig_count;
  doc["epoch_check_failures"] = report.epoch_check_failures;
  doc["clipped_units"] = report.clipped_units;
  doc["has_baseline"] = report.has_baseline;
  if (report.has_baseline) doc["avg_slowdown"] = report.avg_slowdown;
  auto jobs = ordered_json::array();
  for (const auto& j : report.jobs) {
    ordered_json row;
    row["id"] = j.id;
    row["arrival_s"] = j.arrival_s;
    row["rejected"] = j.rejected;
    if (!j.rejected) {
      row["start_s"] = j.start_s;
      row["finish_s"] = j.finish_s;
      row["jrt"] = j.jrt;
      row["jct"] = j.jct;
      if (report.has_baseline && j.slowdown >= -0.5)
        row["slowdown"] = j.slowdown;
    }
    jobs.push_back(std::move(row));
  }
  doc["jobs"] = std::move(jobs);
  if (report.has_baseline) {
    auto cdf = ordered_json::array();
    for (const auto& [s, frac] : report.slowdown_cdf)
      cdf.push_back(ordered_json::array({s, frac}));
    doc["slowdown_cdf"] = std::move(cdf);
  }
  doc["warnings"] = report.warnings;
  return doc.dump(2) + "\n";
}

std::string sim_report_jobs_csv(const SimReport& report) {
  std::ostringstream out;
  out << "id,arrival_s,start_s,finish_s,jrt,jct,slowdown,rejected\n";
  for (const auto& j : report.jobs) {
    out << j.id << ',' << j.arrival_s << ',';
    if (j.rejected) {
      out << ",,,,," << 1 << "\n";
      continue;
    }
    out << j.start_s << ',' << j.finish_s << ',' << j.jrt << ',' << j.jct
        << ',';
    if (report.has_baseline && j.slowdown >= -0.5) out << j.slowdown;
    out << ',' << 0 << "\n";
  }
  return out.str();
}

std::string sim_report_cdf_csv(const SimReport& report) {
  std::ostringstream out;
  out << "slowdown,fraction\n";
  for (const auto& [s, frac] : report.slowdown_cdf)
    out << s << ',' << frac << "\n";
  return out.str();
}

}  // namespace ocsw
