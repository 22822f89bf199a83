#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "drums/assembly.hpp"
#include "drums/geometry.hpp"
#include "drums/rational.hpp"

namespace drums {

/// Admissible 7-tuples of edge traces on one side label: for Neumann-type
/// spaces the tuples constant across each glue pair, for Dirichlet-type
/// additionally zero on the boundary slots. basis spans W, complement_basis
/// spans W^perp; together they span Q^7.
struct PatternSubspace {
  EdgeLabel label = EdgeLabel::G1;
  RatMatrix basis;             // 7 x dim
  RatMatrix complement_basis;  // 7 x (7 - dim)
};

/// bc must be Neumann or Dirichlet (Robin shares the Neumann form domain).
std::array<PatternSubspace, 3> trace_patterns(const DomainLayout& layout, BoundaryCondition bc);

/// Which admissible-matrix space to compute.
enum class AdmissibleBc { Neumann, Dirichlet, Robin, Joint };

std::string to_string(AdmissibleBc bc);
AdmissibleBc parse_admissible_bc(const std::string& text);

enum class ConstraintKind { Forward, Adjoint, RobinBoundary };

/// One homogeneous linear equation on the 49 unknowns p_kl, row-major:
/// coefficient of p_kl sits at index 7k + l. Provenance records the side
/// label and the generator pair that produced the equation.
struct Constraint {
  RatVector coefficients;  // size 49
  ConstraintKind kind = ConstraintKind::Forward;
  EdgeLabel label = EdgeLabel::G1;
  int generator_a = 0;
  int generator_b = 0;
};

struct ConstraintSystem {
  AdmissibleBc bc = AdmissibleBc::Neumann;
  std::vector<Constraint> equations;
};

/// Constraints for P mapping the src-layout space into the dst-layout space
/// (and P^T back): for Neumann/Dirichlet the pattern-subspace conditions per
/// side; Robin adds, per side, the vanishing of the boundary-indicator
/// mismatch bilinear form on the Neumann patterns; Joint is the union of the
/// Neumann and Dirichlet systems. beta scales the Robin boundary equations
/// and must be nonzero for Robin (the solution space does not depend on it).
ConstraintSystem build_constraints(AdmissibleBc bc, const DomainLayout& src,
                                   const DomainLayout& dst, const Rational& beta = Rational(1));
ConstraintSystem build_constraints(AdmissibleBc bc, const Rational& beta = Rational(1));

/// Discrete route to the Robin system: subspace conditions and the boundary
/// identity built from actual level-r P1 edge-mass matrices on a triangle
/// with rational side lengths (3,4,5), all over exact rationals.
ConstraintSystem build_constraints_robin_discrete(int level, const Rational& beta = Rational(1));

bool satisfies(const ConstraintSystem& sys, const Matrix7q& p);

/// Exact nullspace of a constraint system, with a deterministic reduced-
/// echelon basis (free unknowns in row-major order).
struct SolutionSpace {
  AdmissibleBc bc = AdmissibleBc::Neumann;
  std::vector<Matrix7q> basis;
  int dimension = 0;

  /// Column-stacked 49-vectors of the basis, for span comparisons.
  RatMatrix stacked() const;
};

SolutionSpace solve_space(const ConstraintSystem& sys);

bool contains(const SolutionSpace& space, const Matrix7q& p);

/// Does the space contain an invertible matrix? "no" is certified either by a
/// coordinate row vanishing on the whole space or by the determinant of the
/// general member vanishing identically (spaces of dimension <= 4); "yes"
/// returns a witness with nonzero exact determinant. If neither path decides,
/// the answer is explicitly inconclusive.
struct InvertibilityResult {
  enum class Answer { Yes, No, Inconclusive };
  Answer answer = Answer::Inconclusive;
  std::optional<Matrix7q> witness;
  Rational witness_determinant;
  int zero_row = -1;  // 0-based; set for zero-row certificates
  std::string certificate;
};

InvertibilityResult contains_invertible(const SolutionSpace& space);

}  // namespace drums
