#include "drums/gluing.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "drums/spectra.hpp"

namespace drums {

namespace {

class UnionFind {
public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] =
          parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // Smaller root wins, so representatives are smallest members.
    if (a > b) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
  }

private:
  std::vector<int> parent_;
};

}  // namespace

GluedSpace build_glued_space(const DomainLayout& layout, const TriangleMesh& mesh,
                             BoundaryCondition bc) {
  GluedSpace space;
  space.layout = layout;
  space.bc = bc;
  space.mesh_level = mesh.level;
  space.n = mesh.num_vertices();
  space.num_slots = 7 * space.n;

  UnionFind uf(space.num_slots);
  for (EdgeLabel l : kEdgeLabels) {
    const auto& dofs = edge_dofs(mesh, l);
    for (const auto& [k, m] : layout.pairs(l)) {
      for (int d : dofs) uf.unite(space.slot(k, d), space.slot(m, d));
    }
  }

  // Canonical class numbering by smallest slot.
  space.class_of.assign(static_cast<std::size_t>(space.num_slots), -1);
  std::map<int, int> root_to_class;
  for (int s = 0; s < space.num_slots; ++s) {
    int root = uf.find(s);
    auto [it, inserted] = root_to_class.try_emplace(root, -1);
    if (inserted) {
      it->second = static_cast<int>(space.representative.size());
      space.representative.push_back(root);
    }
    space.class_of[static_cast<std::size_t>(s)] = it->second;
  }

  space.masked.assign(space.representative.size(), 0);
  if (bc == BoundaryCondition::Dirichlet) {
    for (EdgeLabel l : kEdgeLabels) {
      const auto& dofs = edge_dofs(mesh, l);
      for (int k : layout.boundary(l)) {
        for (int d : dofs) {
          space.masked[static_cast<std::size_t>(
              space.class_of[static_cast<std::size_t>(space.slot(k, d))])] = 1;
        }
      }
    }
  }

  space.free_index.assign(space.representative.size(), -1);
  for (std::size_t c = 0; c < space.representative.size(); ++c) {
    if (!space.masked[c]) {
      space.free_index[c] = static_cast<int>(space.free_classes.size());
      space.free_classes.push_back(static_cast<int>(c));
    }
  }
  space.free_dim = static_cast<int>(space.free_classes.size());
  return space;
}

std::vector<std::vector<int>> class_members(const GluedSpace& space) {
  std::vector<std::vector<int>> members(static_cast<std::size_t>(space.num_classes()));
  for (int s = 0; s < space.num_slots; ++s) {
    members[static_cast<std::size_t>(space.class_of[static_cast<std::size_t>(s)])].push_back(s);
  }
  return members;
}

GluedOperatorPair assemble_glued(const GluedSpace& space, const AssembledBlock& block,
                                 const FormSpec& form) {
  if (space.mesh_level != block.level) {
    throw std::invalid_argument("assemble_glued: mesh level mismatch between space and block");
  }
  if (space.bc != form.bc) {
    throw std::invalid_argument("assemble_glued: boundary condition mismatch");
  }

  GluedOperatorPair pair;
  pair.form = form;
  pair.free_dim = space.free_dim;
  pair.stiffness = Eigen::MatrixXcd::Zero(space.free_dim, space.free_dim);
  pair.mass = Eigen::MatrixXd::Zero(space.free_dim, space.free_dim);

  auto free_of_slot = [&space](int slot) {
    return space.free_index[static_cast<std::size_t>(
        space.class_of[static_cast<std::size_t>(slot)])];
  };

  for (int copy = 0; copy < 7; ++copy) {
    const int base = copy * space.n;
    for (int col = 0; col < block.stiffness.outerSize(); ++col) {
      for (SparseComplex::InnerIterator it(block.stiffness, col); it; ++it) {
        int a = free_of_slot(base + static_cast<int>(it.row()));
        int b = free_of_slot(base + col);
        if (a >= 0 && b >= 0) pair.stiffness(a, b) += it.value();
      }
    }
    for (int col = 0; col < block.mass.outerSize(); ++col) {
      for (SparseReal::InnerIterator it(block.mass, col); it; ++it) {
        int a = free_of_slot(base + static_cast<int>(it.row()));
        int b = free_of_slot(base + col);
        if (a >= 0 && b >= 0) pair.mass(a, b) += it.value();
      }
    }
  }

  if (form.bc == BoundaryCondition::Robin && form.beta != 0.0) {
    for (EdgeLabel l : kEdgeLabels) {
      const SparseReal& em = block.edge_mass[static_cast<std::size_t>(index(l))];
      for (int copy : space.layout.boundary(l)) {
        const int base = copy * space.n;
        for (int col = 0; col < em.outerSize(); ++col) {
          for (SparseReal::InnerIterator it(em, col); it; ++it) {
            int a = free_of_slot(base + static_cast<int>(it.row()));
            int b = free_of_slot(base + col);
            if (a >= 0 && b >= 0) pair.stiffness(a, b) += form.beta * it.value();
          }
        }
      }
    }
  }
  return pair;
}

namespace {

constexpr double kMergeTol = 1e-9;
constexpr double kAmbiguityBand = 1e-8;

// Geometric merge of near-coincident points. Returns point -> cluster id,
// clusters numbered by smallest member. Throws if distinct clusters come
// closer than the ambiguity band.
std::vector<int> merge_points(const std::vector<Eigen::Vector2d>& pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&pts](int a, int b) {
    return pts[static_cast<std::size_t>(a)].x() < pts[static_cast<std::size_t>(b)].x();
  });

  UnionFind uf(n);
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      int a = order[i];
      int b = order[j];
      if (pts[static_cast<std::size_t>(b)].x() - pts[static_cast<std::size_t>(a)].x() > kMergeTol)
        break;
      if ((pts[static_cast<std::size_t>(a)] - pts[static_cast<std::size_t>(b)]).norm() <= kMergeTol)
        uf.unite(a, b);
    }
  }

  std::vector<int> cluster(static_cast<std::size_t>(n), -1);
  std::map<int, int> root_to_cluster;
  for (int s = 0; s < n; ++s) {
    int root = uf.find(s);
    auto [it, inserted] = root_to_cluster.try_emplace(root, static_cast<int>(root_to_cluster.size()));
    (void)inserted;
    cluster[static_cast<std::size_t>(s)] = it->second;
  }

  // Distinct clusters inside the ambiguity band would make the merged
  // topology depend on the tolerance; refuse.
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      int a = order[i];
      int b = order[j];
      if (pts[static_cast<std::size_t>(b)].x() - pts[static_cast<std::size_t>(a)].x() >
          kAmbiguityBand)
        break;
      if (cluster[static_cast<std::size_t>(a)] == cluster[static_cast<std::size_t>(b)]) continue;
      if ((pts[static_cast<std::size_t>(a)] - pts[static_cast<std::size_t>(b)]).norm() <
          kAmbiguityBand) {
        throw std::runtime_error("embedded_crosscheck: vertex-merge ambiguity (distinct DOFs closer than 1e-8)");
      }
    }
  }
  return cluster;
}

}  // namespace

CrosscheckReport embedded_crosscheck(const DomainLayout& layout, const ReferenceTriangle& tri,
                                     int level, const FormSpec& form, int num_eigs) {
  auto placements = planar_placements(layout, tri);
  OverlapReport overlap = check_embedding(placements, tri);
  if (!overlap.empty()) {
    throw std::runtime_error("embedded_crosscheck: placements overlap (" +
                             std::to_string(overlap.overlapping_pairs.size()) + " pairs)");
  }

  TriangleMesh ref = refine_uniform(tri, level);
  const int n = ref.num_vertices();

  std::vector<Eigen::Vector2d> planar_pts;
  planar_pts.reserve(static_cast<std::size_t>(7 * n));
  for (int k = 0; k < 7; ++k) {
    for (const auto& v : ref.vertices) planar_pts.push_back(placements[static_cast<std::size_t>(k)](v));
  }
  std::vector<int> cluster = merge_points(planar_pts);
  int num_clusters = 1 + *std::max_element(cluster.begin(), cluster.end());

  std::vector<Eigen::Vector2d> verts(static_cast<std::size_t>(num_clusters));
  std::vector<char> seen(static_cast<std::size_t>(num_clusters), 0);
  for (std::size_t s = 0; s < planar_pts.size(); ++s) {
    int c = cluster[s];
    if (!seen[static_cast<std::size_t>(c)]) {
      verts[static_cast<std::size_t>(c)] = planar_pts[s];
      seen[static_cast<std::size_t>(c)] = 1;
    }
  }

  std::vector<std::array<int, 3>> elements;
  std::vector<Eigen::Matrix2cd> coeffs;
  elements.reserve(static_cast<std::size_t>(7 * ref.num_elements()));
  coeffs.reserve(elements.capacity());
  for (int k = 0; k < 7; ++k) {
    CoefficientField ck = transform_coefficient(form.coefficient, placements[static_cast<std::size_t>(k)]);
    for (std::size_t e = 0; e < ref.elements.size(); ++e) {
      const auto& el = ref.elements[e];
      std::array<int, 3> mapped = {cluster[static_cast<std::size_t>(k * n + el[0])],
                                   cluster[static_cast<std::size_t>(k * n + el[1])],
                                   cluster[static_cast<std::size_t>(k * n + el[2])]};
      if (placements[static_cast<std::size_t>(k)].orientation < 0) std::swap(mapped[1], mapped[2]);
      elements.push_back(mapped);
      coeffs.push_back(ck.at(e));
    }
  }

  SparseComplex k_planar = assemble_stiffness(verts, elements, CoefficientField::per_element(coeffs));
  SparseReal m_planar = assemble_mass(verts, elements);

  // Boundary edges appear in exactly one element.
  std::map<std::pair<int, int>, int> edge_count;
  for (const auto& el : elements) {
    for (int i = 0; i < 3; ++i) {
      int a = el[static_cast<std::size_t>(i)];
      int b = el[static_cast<std::size_t>((i + 1) % 3)];
      edge_count[{std::min(a, b), std::max(a, b)}] += 1;
    }
  }
  std::vector<std::pair<int, int>> boundary_edges;
  for (const auto& [edge, count] : edge_count) {
    if (count == 1) boundary_edges.push_back(edge);
  }

  Eigen::MatrixXcd k_dense;
  Eigen::MatrixXd m_dense;
  if (form.bc == BoundaryCondition::Dirichlet) {
    std::vector<char> on_boundary(static_cast<std::size_t>(num_clusters), 0);
    for (const auto& [a, b] : boundary_edges) {
      on_boundary[static_cast<std::size_t>(a)] = 1;
      on_boundary[static_cast<std::size_t>(b)] = 1;
    }
    std::vector<int> keep;
    for (int v = 0; v < num_clusters; ++v) {
      if (!on_boundary[static_cast<std::size_t>(v)]) keep.push_back(v);
    }
    Eigen::MatrixXcd kf(k_planar);
    Eigen::MatrixXd mf(m_planar);
    k_dense.resize(static_cast<Eigen::Index>(keep.size()), static_cast<Eigen::Index>(keep.size()));
    m_dense.resize(k_dense.rows(), k_dense.cols());
    for (std::size_t i = 0; i < keep.size(); ++i) {
      for (std::size_t j = 0; j < keep.size(); ++j) {
        k_dense(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = kf(keep[i], keep[j]);
        m_dense(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = mf(keep[i], keep[j]);
      }
    }
  } else {
    k_dense = Eigen::MatrixXcd(k_planar);
    m_dense = Eigen::MatrixXd(m_planar);
    if (form.bc == BoundaryCondition::Robin && form.beta != 0.0) {
      SparseReal bm = assemble_segment_mass(verts, num_clusters, boundary_edges);
      k_dense += form.beta * Eigen::MatrixXd(bm);
    }
  }

  GluedSpace space = build_glued_space(layout, ref, form.bc);
  AssembledBlock block = assemble_block(ref, form.coefficient);
  GluedOperatorPair glued = assemble_glued(space, block, form);

  CrosscheckReport report;
  report.glued_dim = glued.free_dim;
  report.planar_dim = static_cast<int>(k_dense.rows());

  const bool hermitian = form.coefficient.is_hermitian(0.0);
  int m = num_eigs > 0 ? std::min({num_eigs, report.glued_dim, report.planar_dim})
                       : std::min(report.glued_dim, report.planar_dim);
  Spectrum s_glued = hermitian ? sym_eigs(glued.stiffness, glued.mass, m)
                               : nonsym_eigs(glued.stiffness, glued.mass, m);
  Spectrum s_planar = hermitian ? sym_eigs(k_dense, m_dense, m)
                                : nonsym_eigs(k_dense, m_dense, m);

  report.compared = m;
  report.glued_values = s_glued.values;
  report.planar_values = s_planar.values;
  for (int i = 0; i < m; ++i) {
    report.max_abs_diff = std::max(
        report.max_abs_diff,
        std::abs(s_glued.values[static_cast<std::size_t>(i)] - s_planar.values[static_cast<std::size_t>(i)]));
  }
  return report;
}

}  // namespace drums
