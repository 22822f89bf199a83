#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "drums/assembly.hpp"
#include "drums/geometry.hpp"
#include "drums/mesh.hpp"

namespace drums {

/// Discrete glued space inside (C^N)^7: the 7N copy-DOF slots partitioned into
/// identification classes (trace matching along glued sides), plus the
/// Dirichlet mask. Slot (copy k, vertex p) has index k*N + p. Classes are
/// numbered by their smallest slot; a class is masked iff any member slot lies
/// on a boundary side of its copy and the space is Dirichlet.
struct GluedSpace {
  DomainLayout layout;
  BoundaryCondition bc = BoundaryCondition::Neumann;
  int mesh_level = 0;
  int n = 0;           // mesh vertices per copy
  int num_slots = 0;   // 7n

  std::vector<int> class_of;        // slot -> class
  std::vector<int> representative;  // class -> smallest member slot
  std::vector<char> masked;         // class -> constrained to zero
  std::vector<int> free_index;      // class -> free coordinate, or -1 if masked
  std::vector<int> free_classes;    // free coordinate -> class
  int free_dim = 0;

  int num_classes() const { return static_cast<int>(representative.size()); }
  int slot(int copy, int vertex) const { return copy * n + vertex; }
};

GluedSpace build_glued_space(const DomainLayout& layout, const TriangleMesh& mesh,
                             BoundaryCondition bc);

/// Member slots of every class, in increasing slot order.
std::vector<std::vector<int>> class_members(const GluedSpace& space);

/// Glued pencil (K, M) on the free coordinates: K restricts I_7 (x) K_T plus,
/// for Robin, beta times the boundary-side masses of the layout's boundary
/// slots; M restricts I_7 (x) M_T.
struct GluedOperatorPair {
  Eigen::MatrixXcd stiffness;
  Eigen::MatrixXd mass;
  FormSpec form;
  int free_dim = 0;
};

GluedOperatorPair assemble_glued(const GluedSpace& space, const AssembledBlock& block,
                                 const FormSpec& form);

/// Spectrum agreement between the glued construction and a direct assembly on
/// the planar union of the placed triangles (coincident vertices merged
/// geometrically, coefficient pushed forward per copy).
struct CrosscheckReport {
  int glued_dim = 0;
  int planar_dim = 0;
  int compared = 0;
  double max_abs_diff = 0.0;
  std::vector<std::complex<double>> glued_values;
  std::vector<std::complex<double>> planar_values;
};

/// Throws std::runtime_error on overlapping placements or an ambiguous vertex
/// merge. num_eigs <= 0 compares the full spectra.
CrosscheckReport embedded_crosscheck(const DomainLayout& layout, const ReferenceTriangle& tri,
                                     int level, const FormSpec& form, int num_eigs);

}  // namespace drums
