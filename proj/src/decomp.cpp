#include "ocsw/decomp.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace ocsw {

namespace {

long long floor_div(long long x, long long d) { return x / d; }
long long ceil_div(long long x, long long d) { return (x + d - 1) / d; }

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

IntMatrix orient_symmetric(const IntMatrix& L) {
  require(L.rows() == L.cols(), "orient_symmetric: matrix not square");
  require(L.is_non_negative(), "orient_symmetric: negative entry");
  require(L.is_symmetric(), "orient_symmetric: matrix not symmetric");
  for (int a = 0; a < L.rows(); ++a)
    require(L(a, a) == 0, "orient_symmetric: nonzero diagonal");

  const int n = L.rows();
  const int virtual_vertex = n;  // ties odd-degree vertices together

  // Multigraph with L(a,b) parallel edges per pair. Edge ids are assigned
  // in lexicographic pair order, adjacency lists in insertion order; the
  // Euler walk below always picks the lowest-numbered unused edge, so the
  // whole construction is deterministic.
  struct HalfEdge {
    int to;
    int edge_id;
  };
  std::vector<std::vector<HalfEdge>> adjacency(n + 1);
  int edge_count = 0;
  auto add_edge = [&](int u, int v) {
    adjacency[u].push_back({v, edge_count});
    adjacency[v].push_back({u, edge_count});
    ++edge_count;
  };
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int k = 0; k < L(a, b); ++k) add_edge(a, b);
  for (int a = 0; a < n; ++a)
    if (L.row_sum(a) % 2 != 0) add_edge(a, virtual_vertex);

  std::vector<char> used(edge_count, 0);
  std::vector<std::size_t> next_half(n + 1, 0);
  IntMatrix oriented(n, n, 0);

  // Hierholzer per connected component. Every vertex has even degree, so
  // each walk is a closed circuit; orienting edges along the circuit makes
  // in-degree equal out-degree at every vertex it covers.
  std::vector<int> stack;
  std::vector<int> circuit;
  for (int start = 0; start <= n; ++start) {
    if (next_half[start] >= adjacency[start].size()) continue;
    stack.assign(1, start);
    circuit.clear();
    while (!stack.empty()) {
      const int v = stack.back();
      auto& cursor = next_half[v];
      while (cursor < adjacency[v].size() && used[adjacency[v][cursor].edge_id])
        ++cursor;
      if (cursor == adjacency[v].size()) {
        circuit.push_back(v);
        stack.pop_back();
      } else {
        used[adjacency[v][cursor].edge_id] = 1;
        stack.push_back(adjacency[v][cursor].to);
      }
    }
    for (std::size_t i = 0; i + 1 < circuit.size(); ++i) {
      const int u = circuit[i];
      const int v = circuit[i + 1];
      if (u != virtual_vertex && v != virtual_vertex) ++oriented(u, v);
    }
  }
  return oriented;
}

bool check_orientation_bounds(const IntMatrix& L, const IntMatrix& A) {
  if (A.rows() != L.rows() || A.cols() != L.cols()) return false;
  if (!A.is_non_negative()) return false;
  const int n = L.rows();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (A(a, b) + A(b, a) != L(a, b)) return false;
  for (int a = 0; a < n; ++a) {
    const long long half = L.row_sum(a);
    const long long row = A.row_sum(a);
    if (row < floor_div(half, 2) || row > ceil_div(half, 2)) return false;
  }
  for (int b = 0; b < n; ++b) {
    const long long half = L.col_sum(b);
    const long long col = A.col_sum(b);
    if (col < floor_div(half, 2) || col > ceil_div(half, 2)) return false;
  }
  return true;
}

ExtractionNetwork build_extraction_network(const IntMatrix& A, int parts) {
  require(parts >= 1, "build_extraction_network: parts must be >= 1");
  const int rows = A.rows();
  const int cols = A.cols();

  ExtractionNetwork net;
  auto& p = net.problem;
  p.node_count = rows + cols + 2;
  p.source = 0;
  p.sink = rows + cols + 1;
  p.node_names.resize(p.node_count);
  p.node_names[p.source] = "S";
  p.node_names[p.sink] = "T";
  for (int a = 0; a < rows; ++a) p.node_names[1 + a] = "r" + std::to_string(a);
  for (int b = 0; b < cols; ++b)
    p.node_names[1 + rows + b] = "c" + std::to_string(b);

  // source -> row node: this plane's share of the row sum
  for (int a = 0; a < rows; ++a) {
    const long long sum = A.row_sum(a);
    p.arcs.push_back(
        {p.source, 1 + a, floor_div(sum, parts), ceil_div(sum, parts)});
    net.entry_of_arc.push_back({-1, -1});
  }
  // row -> column: this plane's share of one entry. Zero entries get no arc
  // (their bounds pin them to zero anyway), which keeps the network sparse.
  for (int a = 0; a < rows; ++a) {
    for (int b = 0; b < cols; ++b) {
      if (A(a, b) == 0) continue;
      p.arcs.push_back({1 + a, 1 + rows + b, floor_div(A(a, b), parts),
                        ceil_div(A(a, b), parts)});
      net.entry_of_arc.push_back({a, b});
    }
  }
  // column -> sink: this plane's share of the column sum
  for (int b = 0; b < cols; ++b) {
    const long long sum = A.col_sum(b);
    p.arcs.push_back({1 + rows + b, p.sink, floor_div(sum, parts),
                      ceil_div(sum, parts)});
    net.entry_of_arc.push_back({-1, -1});
  }
  return net;
}

std::vector<IntMatrix> decompose_integer(const IntMatrix& A, int planes) {
  require(planes >= 1, "decompose_integer: plane count must be >= 1");
  require(A.is_non_negative(), "decompose_integer: negative entry");

  std::vector<IntMatrix> result;
  result.reserve(planes);
  IntMatrix residual = A;

  // Peel one fair share per plane. A share within floor/ceil of
  // residual/parts always exists (the fractional point residual/parts
  // satisfies the circulation, and the network is integral), and the
  // leftover bounds nest inside the original A/planes bounds, so every
  // plane ends up within the advertised inequalities.
  for (int parts = planes; parts >= 2; --parts) {
    ExtractionNetwork net = build_extraction_network(residual, parts);
    auto sol = solve_bounded_flow(net.problem);
    if (!sol)
      throw std::logic_error(
          "decompose_integer: extraction infeasible (solver defect)");
    IntMatrix plane(A.rows(), A.cols(), 0);
    for (std::size_t i = 0; i < net.problem.arcs.size(); ++i) {
      const auto [a, b] = net.entry_of_arc[i];
      if (a >= 0) plane(a, b) = static_cast<int>(sol->arc_flow[i]);
    }
    for (int a = 0; a < A.rows(); ++a)
      for (int b = 0; b < A.cols(); ++b) residual(a, b) -= plane(a, b);
    result.push_back(std::move(plane));
  }
  result.push_back(std::move(residual));
  return result;
}

bool check_plane_bounds(const IntMatrix& A,
                        const std::vector<IntMatrix>& planes) {
  if (planes.empty()) return false;
  const long long parts = static_cast<long long>(planes.size());
  const int rows = A.rows();
  const int cols = A.cols();

  for (const IntMatrix& plane : planes) {
    if (plane.rows() != rows || plane.cols() != cols) return false;
    if (!plane.is_non_negative()) return false;
  }

  for (int a = 0; a < rows; ++a)
    for (int b = 0; b < cols; ++b) {
      long long sum = 0;
      for (const IntMatrix& plane : planes) sum += plane(a, b);
      if (sum != A(a, b)) return false;
      const long long lo = floor_div(A(a, b), parts);
      const long long hi = ceil_div(A(a, b), parts);
      for (const IntMatrix& plane : planes)
        if (plane(a, b) < lo || plane(a, b) > hi) return false;
    }

  for (int a = 0; a < rows; ++a) {
    const long long lo = floor_div(A.row_sum(a), parts);
    const long long hi = ceil_div(A.row_sum(a), parts);
    for (const IntMatrix& plane : planes) {
      const long long sum = plane.row_sum(a);
      if (sum < lo || sum > hi) return false;
    }
  }
  for (int b = 0; b < cols; ++b) {
    const long long lo = floor_div(A.col_sum(b), parts);
    const long long hi = ceil_div(A.col_sum(b), parts);
    for (const IntMatrix& plane : planes) {
      const long long sum = plane.col_sum(b);
      if (sum < lo || sum > hi) return false;
    }
  }
  return true;
}

}  // namespace ocsw
