#include "drums/mesh.hpp"

#include <stdexcept>

namespace drums {

TriangleMesh refine_uniform(const ReferenceTriangle& tri, int level) {
  if (level < 0) throw std::invalid_argument("refinement level must be nonnegative");
  if (level > kMaxRefinementLevel) {
    throw std::length_error("refinement level exceeds the configured maximum");
  }
  const int m = 1 << level;

  TriangleMesh mesh;
  mesh.level = level;

  // Lattice point (i, j) = v1 + (i/m)(v2 - v1) + (j/m)(v3 - v1), i + j <= m.
  // Numbered j-major so that the j = 0 row (side G3) comes first.
  std::vector<std::vector<int>> idx(static_cast<std::size_t>(m + 1));
  const Eigen::Vector2d v0 = tri.vertex(0);
  const Eigen::Vector2d e1 = tri.vertex(1) - v0;
  const Eigen::Vector2d e2 = tri.vertex(2) - v0;
  int next = 0;
  for (int j = 0; j <= m; ++j) {
    idx[static_cast<std::size_t>(j)].resize(static_cast<std::size_t>(m - j + 1));
    for (int i = 0; i + j <= m; ++i) {
      idx[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = next++;
      double s = static_cast<double>(i) / m;  // exact: m is a power of two
      double t = static_cast<double>(j) / m;
      mesh.vertices.push_back(v0 + s * e1 + t * e2);
    }
  }

  for (int j = 0; j < m; ++j) {
    for (int i = 0; i + j < m; ++i) {
      int a = idx[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      int b = idx[static_cast<std::size_t>(j)][static_cast<std::size_t>(i + 1)];
      int c = idx[static_cast<std::size_t>(j + 1)][static_cast<std::size_t>(i)];
      mesh.elements.push_back({a, b, c});
      if (i + j < m - 1) {
        int d = idx[static_cast<std::size_t>(j + 1)][static_cast<std::size_t>(i + 1)];
        mesh.elements.push_back({b, d, c});
      }
    }
  }

  // G1 runs from v2 (lattice (m, 0)) to v3, G2 from v1 to v3, G3 from v1 to v2.
  auto& g1 = mesh.edge_traces[static_cast<std::size_t>(index(EdgeLabel::G1))];
  auto& g2 = mesh.edge_traces[static_cast<std::size_t>(index(EdgeLabel::G2))];
  auto& g3 = mesh.edge_traces[static_cast<std::size_t>(index(EdgeLabel::G3))];
  for (int t = 0; t <= m; ++t) {
    g1.push_back(idx[static_cast<std::size_t>(t)][static_cast<std::size_t>(m - t)]);
    g2.push_back(idx[static_cast<std::size_t>(t)][0]);
    g3.push_back(idx[0][static_cast<std::size_t>(t)]);
  }
  return mesh;
}

const std::vector<int>& edge_dofs(const TriangleMesh& mesh, EdgeLabel label) {
  return mesh.edge_traces[static_cast<std::size_t>(index(label))];
}

}  // namespace drums
