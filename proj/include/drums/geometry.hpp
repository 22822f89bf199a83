#pragma once

#include <Eigen/Dense>

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace drums {

/// Side labels of the reference triangle. Label Gk is the side opposite
/// vertex k, so G1 = {v2, v3}, G2 = {v1, v3}, G3 = {v1, v2} (1-based vertices).
enum class EdgeLabel : int { G1 = 0, G2 = 1, G3 = 2 };

constexpr std::array<EdgeLabel, 3> kEdgeLabels = {EdgeLabel::G1, EdgeLabel::G2, EdgeLabel::G3};

inline int index(EdgeLabel l) { return static_cast<int>(l); }
std::string to_string(EdgeLabel l);

/// 0-based endpoint vertex indices of a labeled side, ordered so the first is
/// the lower-numbered vertex. Edge traces are parametrized from that endpoint.
std::pair<int, int> edge_endpoints(EdgeLabel l);

/// A scalene triangle with counterclockwise vertices. All seven copies of each
/// glued domain are congruent to it.
class ReferenceTriangle {
public:
  /// Throws std::invalid_argument if the vertices are collinear, clockwise, or
  /// the side lengths are not pairwise distinct.
  explicit ReferenceTriangle(const Eigen::Vector2d& v1, const Eigen::Vector2d& v2,
                             const Eigen::Vector2d& v3);

  /// Vertices (0,0), (1,0), (0.3, 0.8): scalene, reproducible default.
  static ReferenceTriangle default_triangle();

  const Eigen::Vector2d& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
  double area() const;
  double side_length(EdgeLabel l) const;
  double diameter() const;

private:
  std::array<Eigen::Vector2d, 3> vertices_;
};

/// Planar isometry x -> linear * x + shift with orthogonal linear part.
struct Isometry {
  Eigen::Matrix2d linear = Eigen::Matrix2d::Identity();
  Eigen::Vector2d shift = Eigen::Vector2d::Zero();
  int orientation = 1;  // sign of det(linear)

  static Isometry identity();
  static Isometry rotation(double radians);
  static Isometry translation(const Eigen::Vector2d& t);
  /// Reflection across the line through a and b.
  static Isometry reflection_across(const Eigen::Vector2d& a, const Eigen::Vector2d& b);

  Eigen::Vector2d operator()(const Eigen::Vector2d& x) const { return linear * x + shift; }
  /// this after other: (this ∘ other)(x) = this(other(x)).
  Isometry compose(const Isometry& other) const;
  Isometry inverse() const;

  /// Orthogonality defect of the linear part (max abs entry of Q^T Q - I).
  double orthogonality_defect() const;
};

enum class DomainId { Omega1, Omega2 };

std::string to_string(DomainId id);

/// Combinatorial identity of one of the seven-triangle glued domains: which
/// copies are glued along each side label, and which copies expose that side
/// on the outer boundary. Copy indices are 0-based (copies 1..7 of the tables
/// are stored as 0..6).
struct DomainLayout {
  DomainId domain_id;
  std::array<std::array<std::pair<int, int>, 2>, 3> glue_pairs;
  std::array<std::array<int, 3>, 3> boundary_slots;

  const std::array<std::pair<int, int>, 2>& pairs(EdgeLabel l) const {
    return glue_pairs[static_cast<std::size_t>(index(l))];
  }
  const std::array<int, 3>& boundary(EdgeLabel l) const {
    return boundary_slots[static_cast<std::size_t>(index(l))];
  }
  bool is_boundary(int copy, EdgeLabel l) const;
};

/// The hard-coded gluing tables of the two domains.
DomainLayout builtin_layout(DomainId id);

/// 2x2 complex coefficient of the elliptic form, one matrix per mesh element
/// or a single constant matrix.
struct CoefficientField {
  std::vector<Eigen::Matrix2cd> entries;

  static CoefficientField identity();
  static CoefficientField constant(const Eigen::Matrix2cd& c);
  static CoefficientField per_element(std::vector<Eigen::Matrix2cd> cs);

  bool is_constant() const { return entries.size() == 1; }
  /// Coefficient on a given element (constant fields ignore the index).
  const Eigen::Matrix2cd& at(std::size_t element) const {
    return is_constant() ? entries[0] : entries[element];
  }
  bool is_hermitian(double tol = 0.0) const;
};

/// Pushforward of the coefficient under an isometry: D_tau * C * D_tau^{-1}
/// entrywise. Element order is preserved (the induced mesh map of a placed
/// copy keeps element indices).
CoefficientField transform_coefficient(const CoefficientField& c, const Isometry& iso);

/// Places the seven copies in the plane by breadth-first reflection across
/// glued sides starting from copy 0 (identity). Returned isometries map the
/// reference triangle onto each copy.
std::array<Isometry, 7> planar_placements(const DomainLayout& layout, const ReferenceTriangle& tri);

/// Pairs of placed copies whose open triangles intersect. Shared edges and
/// corners do not count as overlap.
struct OverlapReport {
  std::vector<std::pair<int, int>> overlapping_pairs;
  bool empty() const { return overlapping_pairs.empty(); }
};

OverlapReport check_embedding(const std::array<Isometry, 7>& placements,
                              const ReferenceTriangle& tri);

}  // namespace drums
