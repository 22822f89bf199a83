#pragma once

#include <Eigen/Dense>

#include <string>

#include "drums/assembly.hpp"
#include "drums/gluing.hpp"
#include "drums/rational.hpp"

namespace drums {

using Matrix7d = Eigen::Matrix<double, 7, 7>;

/// A 7x7 transplantation matrix acting blockwise on (C^N)^7. Entries are kept
/// as exact rationals; matrices produced from floating-point data store the
/// exact dyadic value of each double.
struct TransplantMatrix {
  Matrix7q entries;
  std::string name;

  Matrix7d to_double() const;
  static TransplantMatrix from_double(const Matrix7d& m, std::string name);
  static TransplantMatrix from_exact(const Matrix7q& m, std::string name);
};

TransplantMatrix transposed(const TransplantMatrix& p);

enum class MatrixName { B, BD, Ones, Identity };

MatrixName parse_matrix_name(const std::string& text);

/// The integer matrices B (trace-matching transplantation), BD (its signed
/// Dirichlet counterpart), the all-ones matrix and the identity.
TransplantMatrix named_matrix(MatrixName name);

/// alpha (1 - b_kl) + gamma b_kl entrywise: the two-parameter family spanned
/// by the all-ones matrix and B.
TransplantMatrix bhat(double alpha, double gamma);
TransplantMatrix bhat_exact(const Rational& alpha, const Rational& gamma);

/// The member of the bhat family with orthogonal matrix: the real solution of
/// 4 a^2 + 3 g^2 = 1 and 2 a^2 + 4 a g + g^2 = 0 with a > 0 and positive row
/// sums (g = a (sqrt(2) - 2)).
struct UnitaryBhat {
  TransplantMatrix matrix;
  double alpha = 0.0;
  double gamma = 0.0;
};
UnitaryBhat unitary_bhat();

/// Worst violation, over the images of a free-class basis of src under
/// (P (x) I), of dst's identification and mask constraints, normalized per
/// image by its largest modulus. Exact: zero means (P (x) I) maps src into dst.
Rational subspace_residual_exact(const TransplantMatrix& p, const GluedSpace& src,
                                 const GluedSpace& dst);
double subspace_residual(const TransplantMatrix& p, const GluedSpace& src, const GluedSpace& dst);

/// The matrix of (P (x) I) in free coordinates: dst_prolongation * matrix =
/// (P (x) I) * src_prolongation. Requires subspace_residual <= residual_tol.
struct InducedMap {
  Eigen::MatrixXd matrix;
  double residual = 0.0;
  int src_dim = 0;
  int dst_dim = 0;
  /// Smallest singular value; computed only for square maps, else 0.
  double smallest_singular_value = 0.0;
};

InducedMap induced_map(const TransplantMatrix& p, const GluedSpace& src, const GluedSpace& dst,
                       double residual_tol = 1e-12);

/// Frobenius-normalized defects of the form intertwining at the glued matrix
/// level: rho_k = |Phi^T K2 - K1 Psi|_F / |K1|_F with Phi induced by P and Psi
/// by P^T, and likewise rho_m for the mass matrices.
struct IntertwineResidual {
  double rho_k = 0.0;
  double rho_m = 0.0;
};

IntertwineResidual intertwine_residual(const TransplantMatrix& p, const GluedSpace& src,
                                       const GluedSpace& dst, const AssembledBlock& block,
                                       const FormSpec& form);

/// P = U |P| with U orthogonal and |P| = (P^T P)^{1/2}, by symmetric
/// eigendecomposition. Throws for singular P.
struct PolarDecomposition {
  TransplantMatrix unitary;
  TransplantMatrix absolute;
  double orthogonality_defect = 0.0;
  double reconstruction_error = 0.0;
};

PolarDecomposition polar_unitary(const TransplantMatrix& p);

/// Exact order-theoretic facts about a matrix: positivity, positivity of the
/// inverse, row support size (a blockwise map is disjointness preserving iff
/// every row has at most one nonzero entry), normality and orthogonality.
struct OrderReport {
  bool entrywise_nonnegative = false;
  bool invertible = false;
  bool inverse_entrywise_nonnegative = false;
  int max_nonzeros_per_row = 0;
  bool is_normal = false;
  bool is_orthogonal = false;
};

OrderReport order_properties(const TransplantMatrix& p);

}  // namespace drums
