#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

#include "drums/geometry.hpp"

namespace drums {

/// P1 triangulation of the reference triangle at refinement level r: every
/// side is split into 2^r segments, elements are the 4^r congruent children
/// of the red-refinement hierarchy. Vertices sit at dyadic barycentric
/// coordinates mapped through the triangle.
struct TriangleMesh {
  int level = 0;
  std::vector<Eigen::Vector2d> vertices;
  std::vector<std::array<int, 3>> elements;  // counterclockwise
  std::array<std::vector<int>, 3> edge_traces;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_elements() const { return static_cast<int>(elements.size()); }
  /// Nodes per side, 2^r + 1.
  int nodes_per_edge() const { return static_cast<int>(edge_traces[0].size()); }
};

inline constexpr int kMaxRefinementLevel = 7;

/// Builds the level-r mesh. Throws std::invalid_argument for r < 0 and
/// std::length_error past the resource guard kMaxRefinementLevel.
TriangleMesh refine_uniform(const ReferenceTriangle& tri, int level);

/// Ordered vertex indices along a labeled side, parametrized from the
/// lower-numbered endpoint of that side.
const std::vector<int>& edge_dofs(const TriangleMesh& mesh, EdgeLabel label);

}  // namespace drums
