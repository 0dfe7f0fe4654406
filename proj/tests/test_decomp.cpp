#include <doctest.h>

#include <random>
#include <stdexcept>

#include "ocsw/decomp.hpp"

using namespace ocsw;

namespace {

IntMatrix random_symmetric(std::mt19937_64& rng, int n, int max_entry) {
  IntMatrix m(n, n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const int v = static_cast<int>(rng() % (max_entry + 1));
      m(a, b) = v;
      m(b, a) = v;
    }
  return m;
}

IntMatrix random_matrix(std::mt19937_64& rng, int rows, int cols,
                        int max_entry) {
  IntMatrix m(rows, cols, 0);
  for (int a = 0; a < rows; ++a)
    for (int b = 0; b < cols; ++b)
      m(a, b) = static_cast<int>(rng() % (max_entry + 1));
  return m;
}

}  // namespace

TEST_CASE("orientation of a forced 2x2 instance") {
  IntMatrix L(2, 2, 0);
  L(0, 1) = 2;
  L(1, 0) = 2;
  const IntMatrix A = orient_symmetric(L);
  // Row sums must be exactly 1, so one edge goes each way.
  CHECK(A(0, 1) == 1);
  CHECK(A(1, 0) == 1);
  CHECK(A(0, 0) == 0);
  CHECK(A(1, 1) == 0);
  CHECK(check_orientation_bounds(L, A));
}

TEST_CASE("orientation of the zero matrix is zero") {
  IntMatrix L(4, 4, 0);
  const IntMatrix A = orient_symmetric(L);
  CHECK(A == IntMatrix(4, 4, 0));
  CHECK(check_orientation_bounds(L, A));
}

TEST_CASE("orientation of the triangle instance is a cycle") {
  IntMatrix L(6, 6, 0);
  auto link = [&L](int a, int b) {
    L(a, b) = 1;
    L(b, a) = 1;
  };
  link(0, 2);
  link(2, 4);
  link(0, 4);
  const IntMatrix A = orient_symmetric(L);
  CHECK(check_orientation_bounds(L, A));
  // Every touched vertex has degree 2, so its in and out degrees are 1.
  for (int a : {0, 2, 4}) {
    CHECK(A.row_sum(a) == 1);
    CHECK(A.col_sum(a) == 1);
  }
}

TEST_CASE("orientation rejects invalid input") {
  IntMatrix asym(2, 2, 0);
  asym(0, 1) = 1;
  CHECK_THROWS_AS(orient_symmetric(asym), std::invalid_argument);

  IntMatrix diag(2, 2, 0);
  diag(0, 0) = 2;
  CHECK_THROWS_AS(orient_symmetric(diag), std::invalid_argument);

  IntMatrix rect(2, 3, 0);
  CHECK_THROWS_AS(orient_symmetric(rect), std::invalid_argument);
}

TEST_CASE("orientation bounds hold on random symmetric matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 15);
    const IntMatrix L = random_symmetric(rng, n, 8);
    const IntMatrix A = orient_symmetric(L);
    REQUIRE(check_orientation_bounds(L, A));
  }
}

TEST_CASE("orientation oracle rejects a perturbed matrix") {
  std::mt19937_64 rng(11);
  const IntMatrix L = random_symmetric(rng, 6, 4);
  IntMatrix A = orient_symmetric(L);
  REQUIRE(check_orientation_bounds(L, A));
  A(0, 1) += 1;  // breaks A + A^T = L
  CHECK_FALSE(check_orientation_bounds(L, A));
}

TEST_CASE("orientation is deterministic") {
  std::mt19937_64 rng(13);
  const IntMatrix L = random_symmetric(rng, 12, 6);
  CHECK(orient_symmetric(L) == orient_symmetric(L));
}

TEST_CASE("plane split of a forced instance") {
  IntMatrix A(2, 2, 2);
  const auto planes = decompose_integer(A, 2);
  REQUIRE(planes.size() == 2);
  CHECK(planes[0] == IntMatrix(2, 2, 1));
  CHECK(planes[1] == IntMatrix(2, 2, 1));
  CHECK(check_plane_bounds(A, planes));
}

TEST_CASE("plane split with one plane is the identity") {
  std::mt19937_64 rng(17);
  const IntMatrix A = random_matrix(rng, 5, 7, 9);
  const auto planes = decompose_integer(A, 1);
  REQUIRE(planes.size() == 1);
  CHECK(planes[0] == A);
  CHECK(check_plane_bounds(A, planes));
}

TEST_CASE("plane split of the triangle orientation") {
  IntMatrix A(6, 6, 0);
  A(0, 2) = 1;
  A(2, 4) = 1;
  A(4, 0) = 1;
  const auto planes = decompose_integer(A, 2);
  CHECK(check_plane_bounds(A, planes));
}

TEST_CASE("plane bounds hold on random matrices for several H") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 16);
    const int cols = 1 + static_cast<int>(rng() % 16);
    const IntMatrix A = random_matrix(rng, rows, cols, 16);
    for (int planes_count : {2, 3, 5, 8}) {
      const auto planes = decompose_integer(A, planes_count);
      REQUIRE(check_plane_bounds(A, planes));
      long long total = 0;
      for (const auto& plane : planes) total += plane.total();
      CHECK(total == A.total());  // integer conservation, no drift
    }
  }
}

TEST_CASE("plane oracle rejects perturbed planes") {
  std::mt19937_64 rng(23);
  const IntMatrix A = random_matrix(rng, 6, 6, 10);
  auto planes = decompose_integer(A, 3);
  REQUIRE(check_plane_bounds(A, planes));
  planes[1](2, 3) += 1;  // breaks the sum
  CHECK_FALSE(check_plane_bounds(A, planes));

  auto planes2 = decompose_integer(A, 3);
  // Moving a unit between planes keeps the sum but can break per-plane
  // bounds; construct a guaranteed violation instead: negative entry.
  planes2[0](0, 0) -= 1;
  planes2[1](0, 0) += 1;
  if (planes2[0](0, 0) < 0) CHECK_FALSE(check_plane_bounds(A, planes2));
}

TEST_CASE("plane split is deterministic") {
  std::mt19937_64 rng(29);
  const IntMatrix A = random_matrix(rng, 10, 10, 12);
  const auto p1 = decompose_integer(A, 4);
  const auto p2 = decompose_integer(A, 4);
  REQUIRE(p1.size() == p2.size());
  for (std::size_t i = 0; i < p1.size(); ++i) CHECK(p1[i] == p2[i]);
}

TEST_CASE("decompose_integer rejects invalid input") {
  IntMatrix A(2, 2, 1);
  CHECK_THROWS_AS(decompose_integer(A, 0), std::invalid_argument);
  A(0, 0) = -1;
  CHECK_THROWS_AS(decompose_integer(A, 2), std::invalid_argument);
}
