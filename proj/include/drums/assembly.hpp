#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "drums/geometry.hpp"
#include "drums/mesh.hpp"

namespace drums {

using SparseComplex = Eigen::SparseMatrix<std::complex<double>>;
using SparseReal = Eigen::SparseMatrix<double>;

enum class BoundaryCondition { Neumann, Dirichlet, Robin };

std::string to_string(BoundaryCondition bc);

/// Which sesquilinear form to assemble. Neumann normalizes beta to zero and
/// Dirichlet ignores it.
struct FormSpec {
  BoundaryCondition bc = BoundaryCondition::Neumann;
  double beta = 0.0;
  CoefficientField coefficient = CoefficientField::identity();

  static FormSpec neumann(CoefficientField c = CoefficientField::identity());
  static FormSpec dirichlet(CoefficientField c = CoefficientField::identity());
  static FormSpec robin(double beta, CoefficientField c = CoefficientField::identity());
};

struct EllipticityReport {
  bool elliptic = false;
  double mu = 0.0;            // min over elements of the Hermitian-part eigenvalue
  int offending_element = -1; // first element with a nonpositive eigenvalue
};

/// Smallest eigenvalue of (C + C*)/2 over all elements; elliptic iff positive.
EllipticityReport check_ellipticity(const CoefficientField& c);

/// Stiffness entries (p,q) = sum over elements of c_ij (d_i phi_q)(d_j phi_p),
/// integrated exactly (P1 gradients are constant per element). Throws if the
/// coefficient is not elliptic. Hermitian coefficients yield an exactly
/// Hermitian matrix.
SparseComplex assemble_stiffness(const std::vector<Eigen::Vector2d>& vertices,
                                 const std::vector<std::array<int, 3>>& elements,
                                 const CoefficientField& c);
SparseComplex assemble_stiffness(const TriangleMesh& mesh, const CoefficientField& c);

/// L2 mass matrix, per-element local (area/12) [[2,1,1],[1,2,1],[1,1,2]].
SparseReal assemble_mass(const std::vector<Eigen::Vector2d>& vertices,
                         const std::vector<std::array<int, 3>>& elements);
SparseReal assemble_mass(const TriangleMesh& mesh);

/// 1D P1 mass along a list of segments, local (h/6) [[2,1],[1,2]].
SparseReal assemble_segment_mass(const std::vector<Eigen::Vector2d>& vertices, int n,
                                 const std::vector<std::pair<int, int>>& segments);

/// Boundary mass of one labeled side of the reference mesh; support is
/// confined to that side's trace DOFs.
SparseReal assemble_edge_mass(const TriangleMesh& mesh, EdgeLabel label);

/// Stiffness, mass and the three per-side boundary masses of one mesh level.
struct AssembledBlock {
  int level = 0;
  int n = 0;
  SparseComplex stiffness;
  SparseReal mass;
  std::array<SparseReal, 3> edge_mass;
};

AssembledBlock assemble_block(const TriangleMesh& mesh, const CoefficientField& c);

}  // namespace drums
