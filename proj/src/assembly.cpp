#include "drums/assembly.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace drums {

std::string to_string(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::Neumann: return "neumann";
    case BoundaryCondition::Dirichlet: return "dirichlet";
    case BoundaryCondition::Robin: return "robin";
  }
  throw std::invalid_argument("unknown boundary condition");
}

FormSpec FormSpec::neumann(CoefficientField c) {
  return FormSpec{BoundaryCondition::Neumann, 0.0, std::move(c)};
}

FormSpec FormSpec::dirichlet(CoefficientField c) {
  return FormSpec{BoundaryCondition::Dirichlet, 0.0, std::move(c)};
}

FormSpec FormSpec::robin(double beta, CoefficientField c) {
  return FormSpec{BoundaryCondition::Robin, beta, std::move(c)};
}

EllipticityReport check_ellipticity(const CoefficientField& c) {
  EllipticityReport report;
  report.elliptic = true;
  report.mu = std::numeric_limits<double>::infinity();
  for (std::size_t e = 0; e < c.entries.size(); ++e) {
    Eigen::Matrix2cd h = 0.5 * (c.entries[e] + c.entries[e].adjoint());
    double a = h(0, 0).real();
    double d = h(1, 1).real();
    double off = std::abs(h(0, 1));
    double lambda_min = 0.5 * (a + d) - std::hypot(0.5 * (a - d), off);
    if (lambda_min < report.mu) report.mu = lambda_min;
    if (!(lambda_min > 0) && report.offending_element < 0) {
      report.elliptic = false;
      report.offending_element = static_cast<int>(e);
    }
  }
  return report;
}

namespace {

double signed_area(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
  return 0.5 * ((b - a).x() * (c - a).y() - (b - a).y() * (c - a).x());
}

// Constant P1 gradients: grad phi_i = perp(p_{i+2} - p_{i+1}) / (2 area).
std::array<Eigen::Vector2d, 3> hat_gradients(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                                             const Eigen::Vector2d& c, double area) {
  auto perp = [](const Eigen::Vector2d& v) { return Eigen::Vector2d(-v.y(), v.x()); };
  double inv = 1.0 / (2.0 * area);
  return {perp(c - b) * inv, perp(a - c) * inv, perp(b - a) * inv};
}

}  // namespace

SparseComplex assemble_stiffness(const std::vector<Eigen::Vector2d>& vertices,
                                 const std::vector<std::array<int, 3>>& elements,
                                 const CoefficientField& c) {
  EllipticityReport ell = check_ellipticity(c);
  if (!ell.elliptic) {
    throw std::invalid_argument("assemble_stiffness: coefficient is not elliptic on element " +
                                std::to_string(ell.offending_element));
  }
  if (!c.is_constant() && c.entries.size() != elements.size()) {
    throw std::invalid_argument("assemble_stiffness: per-element coefficient count mismatch");
  }
  const bool hermitian = c.is_hermitian(0.0);
  std::vector<Eigen::Triplet<std::complex<double>>> triplets;
  triplets.reserve(9 * elements.size());
  for (std::size_t e = 0; e < elements.size(); ++e) {
    const auto& el = elements[e];
    const Eigen::Vector2d& a = vertices[static_cast<std::size_t>(el[0])];
    const Eigen::Vector2d& b = vertices[static_cast<std::size_t>(el[1])];
    const Eigen::Vector2d& cc = vertices[static_cast<std::size_t>(el[2])];
    double area = signed_area(a, b, cc);
    if (!(area > 0)) throw std::invalid_argument("assemble_stiffness: element with nonpositive area");
    auto grads = hat_gradients(a, b, cc, area);
    const Eigen::Matrix2cd coeff_t = c.at(e).transpose();
    Eigen::Matrix3cd local;
    for (int p = 0; p < 3; ++p) {
      for (int q = 0; q < 3; ++q) {
        Eigen::Vector2cd cg = coeff_t * grads[static_cast<std::size_t>(q)].cast<std::complex<double>>();
        local(p, q) = area * grads[static_cast<std::size_t>(p)].cast<std::complex<double>>().dot(cg);
      }
    }
    if (hermitian) local = 0.5 * (local + local.adjoint()).eval();
    for (int p = 0; p < 3; ++p) {
      for (int q = 0; q < 3; ++q) {
        triplets.emplace_back(el[static_cast<std::size_t>(p)], el[static_cast<std::size_t>(q)],
                              local(p, q));
      }
    }
  }
  SparseComplex out(static_cast<Eigen::Index>(vertices.size()),
                    static_cast<Eigen::Index>(vertices.size()));
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

SparseComplex assemble_stiffness(const TriangleMesh& mesh, const CoefficientField& c) {
  return assemble_stiffness(mesh.vertices, mesh.elements, c);
}

SparseReal assemble_mass(const std::vector<Eigen::Vector2d>& vertices,
                         const std::vector<std::array<int, 3>>& elements) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(9 * elements.size());
  for (const auto& el : elements) {
    const Eigen::Vector2d& a = vertices[static_cast<std::size_t>(el[0])];
    const Eigen::Vector2d& b = vertices[static_cast<std::size_t>(el[1])];
    const Eigen::Vector2d& c = vertices[static_cast<std::size_t>(el[2])];
    double area = signed_area(a, b, c);
    if (!(area > 0)) throw std::invalid_argument("assemble_mass: element with nonpositive area");
    double off = area / 12.0;
    double diag = area / 6.0;
    for (int p = 0; p < 3; ++p) {
      for (int q = 0; q < 3; ++q) {
        triplets.emplace_back(el[static_cast<std::size_t>(p)], el[static_cast<std::size_t>(q)],
                              p == q ? diag : off);
      }
    }
  }
  SparseReal out(static_cast<Eigen::Index>(vertices.size()),
                 static_cast<Eigen::Index>(vertices.size()));
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

SparseReal assemble_mass(const TriangleMesh& mesh) {
  return assemble_mass(mesh.vertices, mesh.elements);
}

SparseReal assemble_segment_mass(const std::vector<Eigen::Vector2d>& vertices, int n,
                                 const std::vector<std::pair<int, int>>& segments) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(4 * segments.size());
  for (const auto& [p, q] : segments) {
    double h = (vertices[static_cast<std::size_t>(q)] - vertices[static_cast<std::size_t>(p)]).norm();
    triplets.emplace_back(p, p, h / 3.0);
    triplets.emplace_back(q, q, h / 3.0);
    triplets.emplace_back(p, q, h / 6.0);
    triplets.emplace_back(q, p, h / 6.0);
  }
  SparseReal out(n, n);
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

SparseReal assemble_edge_mass(const TriangleMesh& mesh, EdgeLabel label) {
  const auto& dofs = edge_dofs(mesh, label);
  std::vector<std::pair<int, int>> segments;
  segments.reserve(dofs.size() - 1);
  for (std::size_t i = 0; i + 1 < dofs.size(); ++i) segments.emplace_back(dofs[i], dofs[i + 1]);
  return assemble_segment_mass(mesh.vertices, mesh.num_vertices(), segments);
}

AssembledBlock assemble_block(const TriangleMesh& mesh, const CoefficientField& c) {
  AssembledBlock block;
  block.level = mesh.level;
  block.n = mesh.num_vertices();
  block.stiffness = assemble_stiffness(mesh, c);
  block.mass = assemble_mass(mesh);
  for (EdgeLabel l : kEdgeLabels) {
    block.edge_mass[static_cast<std::size_t>(index(l))] = assemble_edge_mass(mesh, l);
  }
  return block;
}

}  // namespace drums
