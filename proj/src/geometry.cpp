#include "drums/geometry.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace drums {

std::string to_string(EdgeLabel l) {
  switch (l) {
    case EdgeLabel::G1: return "G1";
    case EdgeLabel::G2: return "G2";
    case EdgeLabel::G3: return "G3";
  }
  throw std::invalid_argument("unknown edge label");
}

std::pair<int, int> edge_endpoints(EdgeLabel l) {
  switch (l) {
    case EdgeLabel::G1: return {1, 2};
    case EdgeLabel::G2: return {0, 2};
    case EdgeLabel::G3: return {0, 1};
  }
  throw std::invalid_argument("unknown edge label");
}

ReferenceTriangle::ReferenceTriangle(const Eigen::Vector2d& v1, const Eigen::Vector2d& v2,
                                     const Eigen::Vector2d& v3)
    : vertices_{v1, v2, v3} {
  Eigen::Vector2d e1 = v2 - v1;
  Eigen::Vector2d e2 = v3 - v1;
  double doubled_area = e1.x() * e2.y() - e1.y() * e2.x();
  double scale = std::max({e1.norm(), e2.norm(), (v3 - v2).norm()});
  if (!(doubled_area > 1e-12 * scale * scale)) {
    throw std::invalid_argument("triangle vertices must be counterclockwise and non-collinear");
  }
  double a = (v3 - v2).norm();
  double b = (v3 - v1).norm();
  double c = (v2 - v1).norm();
  double tol = 1e-12 * scale;
  if (std::abs(a - b) <= tol || std::abs(b - c) <= tol || std::abs(a - c) <= tol) {
    throw std::invalid_argument("triangle must be scalene (pairwise distinct side lengths)");
  }
}

ReferenceTriangle ReferenceTriangle::default_triangle() {
  return ReferenceTriangle({0.0, 0.0}, {1.0, 0.0}, {0.3, 0.8});
}

double ReferenceTriangle::area() const {
  Eigen::Vector2d e1 = vertices_[1] - vertices_[0];
  Eigen::Vector2d e2 = vertices_[2] - vertices_[0];
  return 0.5 * (e1.x() * e2.y() - e1.y() * e2.x());
}

double ReferenceTriangle::side_length(EdgeLabel l) const {
  auto [p, q] = edge_endpoints(l);
  return (vertex(q) - vertex(p)).norm();
}

double ReferenceTriangle::diameter() const {
  return std::max({side_length(EdgeLabel::G1), side_length(EdgeLabel::G2),
                   side_length(EdgeLabel::G3)});
}

Isometry Isometry::identity() { return Isometry{}; }

Isometry Isometry::rotation(double radians) {
  Isometry out;
  double c = std::cos(radians);
  double s = std::sin(radians);
  out.linear << c, -s, s, c;
  out.orientation = 1;
  return out;
}

Isometry Isometry::translation(const Eigen::Vector2d& t) {
  Isometry out;
  out.shift = t;
  return out;
}

Isometry Isometry::reflection_across(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  Eigen::Vector2d d = b - a;
  double len = d.norm();
  if (!(len > 0)) throw std::invalid_argument("reflection axis endpoints coincide");
  d /= len;
  Isometry out;
  out.linear = 2.0 * d * d.transpose() - Eigen::Matrix2d::Identity();
  out.shift = a - out.linear * a;
  out.orientation = -1;
  return out;
}

Isometry Isometry::compose(const Isometry& other) const {
  Isometry out;
  out.linear = linear * other.linear;
  out.shift = linear * other.shift + shift;
  out.orientation = orientation * other.orientation;
  return out;
}

Isometry Isometry::inverse() const {
  Isometry out;
  out.linear = linear.transpose();  // orthogonal
  out.shift = -out.linear * shift;
  out.orientation = orientation;
  return out;
}

double Isometry::orthogonality_defect() const {
  return (linear.transpose() * linear - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff();
}

std::string to_string(DomainId id) {
  return id == DomainId::Omega1 ? "omega1" : "omega2";
}

bool DomainLayout::is_boundary(int copy, EdgeLabel l) const {
  for (int b : boundary(l)) {
    if (b == copy) return true;
  }
  return false;
}

DomainLayout builtin_layout(DomainId id) {
  // Tables are stated for copies 1..7; stored 0-based.
  DomainLayout out;
  out.domain_id = id;
  auto pair = [](int k, int l) { return std::pair<int, int>{k - 1, l - 1}; };
  if (id == DomainId::Omega1) {
    out.glue_pairs = {{{pair(1, 2), pair(4, 7)},    // G1
                       {pair(1, 3), pair(2, 5)},    // G2
                       {pair(1, 4), pair(3, 6)}}};  // G3
    out.boundary_slots = {{{2, 4, 5}, {3, 5, 6}, {1, 4, 6}}};
  } else {
    out.glue_pairs = {{{pair(1, 2), pair(3, 6)},
                       {pair(1, 3), pair(4, 7)},
                       {pair(1, 4), pair(2, 5)}}};
    out.boundary_slots = {{{3, 4, 6}, {1, 4, 5}, {2, 5, 6}}};
  }
  return out;
}

CoefficientField CoefficientField::identity() {
  return constant(Eigen::Matrix2cd::Identity());
}

CoefficientField CoefficientField::constant(const Eigen::Matrix2cd& c) {
  CoefficientField out;
  out.entries.push_back(c);
  return out;
}

CoefficientField CoefficientField::per_element(std::vector<Eigen::Matrix2cd> cs) {
  if (cs.empty()) throw std::invalid_argument("per-element coefficient needs at least one entry");
  CoefficientField out;
  out.entries = std::move(cs);
  return out;
}

bool CoefficientField::is_hermitian(double tol) const {
  for (const auto& c : entries) {
    if ((c - c.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

CoefficientField transform_coefficient(const CoefficientField& c, const Isometry& iso) {
  if (iso.orthogonality_defect() > 1e-12) {
    throw std::invalid_argument("transform_coefficient: isometry linear part not orthogonal");
  }
  Eigen::Matrix2d d = iso.linear;
  Eigen::Matrix2d dinv = d.transpose();
  CoefficientField out;
  out.entries.reserve(c.entries.size());
  for (const auto& m : c.entries) out.entries.push_back(d * m * dinv);
  return out;
}

std::array<Isometry, 7> planar_placements(const DomainLayout& layout,
                                          const ReferenceTriangle& tri) {
  std::array<Isometry, 7> placements;
  std::array<Isometry, 3> side_reflection;
  for (EdgeLabel l : kEdgeLabels) {
    auto [p, q] = edge_endpoints(l);
    side_reflection[static_cast<std::size_t>(index(l))] =
        Isometry::reflection_across(tri.vertex(p), tri.vertex(q));
  }

  std::array<bool, 7> placed = {};
  placements[0] = Isometry::identity();
  placed[0] = true;
  std::deque<int> queue = {0};
  while (!queue.empty()) {
    int k = queue.front();
    queue.pop_front();
    for (EdgeLabel l : kEdgeLabels) {
      for (const auto& [a, b] : layout.pairs(l)) {
        int other = a == k ? b : (b == k ? a : -1);
        if (other < 0 || placed[static_cast<std::size_t>(other)]) continue;
        placements[static_cast<std::size_t>(other)] =
            placements[static_cast<std::size_t>(k)].compose(
                side_reflection[static_cast<std::size_t>(index(l))]);
        placed[static_cast<std::size_t>(other)] = true;
        queue.push_back(other);
      }
    }
  }
  for (bool p : placed) {
    if (!p) throw std::logic_error("gluing graph is not connected");
  }
  return placements;
}

namespace {

// Interval of projections of a placed triangle onto an axis.
void project(const std::array<Eigen::Vector2d, 3>& pts, const Eigen::Vector2d& axis, double& lo,
             double& hi) {
  lo = hi = axis.dot(pts[0]);
  for (int i = 1; i < 3; ++i) {
    double v = axis.dot(pts[static_cast<std::size_t>(i)]);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
}

// Separating-axis test for open triangles: interiors are disjoint iff some
// edge normal separates them with overlap at most tol (touching allowed).
bool interiors_intersect(const std::array<Eigen::Vector2d, 3>& a,
                         const std::array<Eigen::Vector2d, 3>& b, double tol) {
  const std::array<const std::array<Eigen::Vector2d, 3>*, 2> tris = {&a, &b};
  for (const auto* t : tris) {
    for (int i = 0; i < 3; ++i) {
      Eigen::Vector2d e = (*t)[static_cast<std::size_t>((i + 1) % 3)] -
                          (*t)[static_cast<std::size_t>(i)];
      Eigen::Vector2d axis(-e.y(), e.x());
      double norm = axis.norm();
      if (!(norm > 0)) continue;
      axis /= norm;
      double alo, ahi, blo, bhi;
      project(a, axis, alo, ahi);
      project(b, axis, blo, bhi);
      if (std::min(ahi, bhi) - std::max(alo, blo) <= tol) return false;
    }
  }
  return true;
}

}  // namespace

OverlapReport check_embedding(const std::array<Isometry, 7>& placements,
                              const ReferenceTriangle& tri) {
  std::array<std::array<Eigen::Vector2d, 3>, 7> placed;
  for (int k = 0; k < 7; ++k) {
    for (int i = 0; i < 3; ++i) {
      placed[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] =
          placements[static_cast<std::size_t>(k)](tri.vertex(i));
    }
  }
  double tol = 1e-9 * tri.diameter();
  OverlapReport report;
  for (int k = 0; k < 7; ++k) {
    for (int l = k + 1; l < 7; ++l) {
      if (interiors_intersect(placed[static_cast<std::size_t>(k)],
                              placed[static_cast<std::size_t>(l)], tol)) {
        report.overlapping_pairs.emplace_back(k, l);
      }
    }
  }
  return report;
}

}  // namespace drums
