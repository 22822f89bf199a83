#include <doctest.h>

#include <set>

#include "drums/mesh.hpp"
#include "oracles.hpp"

using namespace drums;

TEST_SUITE("mesh") {

TEST_CASE("base mesh") {
  auto tri = ReferenceTriangle::default_triangle();
  TriangleMesh mesh = refine_uniform(tri, 0);
  CHECK(mesh.num_vertices() == 3);
  CHECK(mesh.num_elements() == 1);
  for (EdgeLabel l : kEdgeLabels) {
    const auto& dofs = edge_dofs(mesh, l);
    REQUIRE(dofs.size() == 2);
    auto [a, b] = edge_endpoints(l);
    CHECK((mesh.vertices[static_cast<std::size_t>(dofs[0])] - tri.vertex(a)).norm() == 0.0);
    CHECK((mesh.vertices[static_cast<std::size_t>(dofs[1])] - tri.vertex(b)).norm() == 0.0);
  }
}

TEST_CASE("counts at fixed levels") {
  auto tri = ReferenceTriangle::default_triangle();
  TriangleMesh r2 = refine_uniform(tri, 2);
  CHECK(r2.num_vertices() == 15);
  CHECK(r2.num_elements() == 16);
  TriangleMesh r3 = refine_uniform(tri, 3);
  CHECK(r3.num_vertices() == 45);
  CHECK(r3.num_elements() == 64);
  for (EdgeLabel l : kEdgeLabels) CHECK(edge_dofs(r3, l).size() == 9);
}

TEST_CASE("counting formulas, areas and boundary structure for all levels") {
  auto tri = ReferenceTriangle::default_triangle();
  for (int r = 0; r <= 5; ++r) {
    TriangleMesh mesh = refine_uniform(tri, r);
    int m = 1 << r;
    CHECK(mesh.num_vertices() == (m + 1) * (m + 2) / 2);
    CHECK(mesh.num_elements() == m * m);
    CHECK(mesh.nodes_per_edge() == m + 1);

    double total = 0.0;
    for (const auto& el : mesh.elements) {
      const auto& a = mesh.vertices[static_cast<std::size_t>(el[0])];
      const auto& b = mesh.vertices[static_cast<std::size_t>(el[1])];
      const auto& c = mesh.vertices[static_cast<std::size_t>(el[2])];
      double signed_area = 0.5 * ((b - a).x() * (c - a).y() - (b - a).y() * (c - a).x());
      CHECK(signed_area > 0.0);
      total += signed_area;
    }
    CHECK(total == doctest::Approx(tri.area()).epsilon(1e-13));

    // boundary vertices lie in exactly one trace list except the 3 corners
    // (exactly two); interior vertices in none
    std::vector<int> membership(static_cast<std::size_t>(mesh.num_vertices()), 0);
    for (EdgeLabel l : kEdgeLabels) {
      for (int d : edge_dofs(mesh, l)) ++membership[static_cast<std::size_t>(d)];
    }
    int corners = 0;
    int side_nodes = 0;
    int interior = 0;
    for (int count : membership) {
      CHECK(count <= 2);
      if (count == 2) ++corners;
      if (count == 1) ++side_nodes;
      if (count == 0) ++interior;
    }
    CHECK(corners == 3);
    CHECK(side_nodes == 3 * (m - 1));
    CHECK(interior == (m - 1) * (m - 2) / 2);

    // trace lists pairwise share exactly one vertex
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        std::set<int> a(edge_dofs(mesh, kEdgeLabels[static_cast<std::size_t>(i)]).begin(),
                        edge_dofs(mesh, kEdgeLabels[static_cast<std::size_t>(i)]).end());
        int shared = 0;
        for (int d : edge_dofs(mesh, kEdgeLabels[static_cast<std::size_t>(j)])) {
          shared += a.count(d);
        }
        CHECK(shared == 1);
      }
    }
  }
}

TEST_CASE("edge traces follow the dyadic parametrization") {
  auto tri = ReferenceTriangle::default_triangle();

  TriangleMesh r1 = refine_uniform(tri, 1);
  for (EdgeLabel l : kEdgeLabels) {
    const auto& dofs = edge_dofs(r1, l);
    REQUIRE(dofs.size() == 3);
    auto [a, b] = edge_endpoints(l);
    Eigen::Vector2d mid = 0.5 * (tri.vertex(a) + tri.vertex(b));
    CHECK((r1.vertices[static_cast<std::size_t>(dofs[1])] - mid).norm() < 1e-15);
  }

  TriangleMesh r2 = refine_uniform(tri, 2);
  for (EdgeLabel l : kEdgeLabels) {
    const auto& dofs = edge_dofs(r2, l);
    REQUIRE(dofs.size() == 5);
    auto [a, b] = edge_endpoints(l);
    for (int i = 0; i < 5; ++i) {
      double t = i / 4.0;
      Eigen::Vector2d expect = (1.0 - t) * tri.vertex(a) + t * tri.vertex(b);
      CHECK((r2.vertices[static_cast<std::size_t>(dofs[static_cast<std::size_t>(i)])] - expect)
                .norm() < 1e-15);
    }
  }
}

TEST_CASE("refinement guards") {
  auto tri = ReferenceTriangle::default_triangle();
  CHECK_THROWS_AS(refine_uniform(tri, -1), std::invalid_argument);
  CHECK_THROWS_AS(refine_uniform(tri, kMaxRefinementLevel + 1), std::length_error);
  CHECK_NOTHROW(refine_uniform(tri, 0));
}

}  // TEST_SUITE
