#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "drums/gluing.hpp"

namespace drums {

/// Generalized eigenvalues of a glued pencil, canonically sorted: ascending
/// real part, with values whose real parts agree up to roundoff ordered by
/// imaginary part. residuals[i] = |K x - lambda M x| / ((|K|_F + |lambda| |M|_F) |x|).
struct Spectrum {
  std::vector<std::complex<double>> values;
  std::vector<double> residuals;
  int count = 0;

  double max_residual() const;
};

inline constexpr double kSolverResidualTol = 1e-10;

/// First m eigenvalues of K x = lambda M x for Hermitian K and SPD M, by
/// Cholesky reduction to a standard Hermitian problem and a dense solve.
Spectrum sym_eigs(const Eigen::MatrixXcd& K, const Eigen::MatrixXd& M, int m,
                  double residual_tol = kSolverResidualTol);
Spectrum sym_eigs(const GluedOperatorPair& pair, int m,
                  double residual_tol = kSolverResidualTol);

/// First m eigenvalues of the (possibly non-Hermitian) pencil, via the
/// Cholesky congruence L^{-1} K L^{-T} and a dense complex solve.
Spectrum nonsym_eigs(const Eigen::MatrixXcd& K, const Eigen::MatrixXd& M, int m,
                     double residual_tol = kSolverResidualTol);
Spectrum nonsym_eigs(const GluedOperatorPair& pair, int m,
                     double residual_tol = kSolverResidualTol);

/// Pairwise spectrum comparison. rel_diff[i] floors the denominator at
/// 1e-6 times the largest modulus in either spectrum, so eigenvalues at
/// roundoff scale (e.g. the Neumann zero mode) compare on the spectrum scale.
struct CompareReport {
  int count = 0;
  double max_abs_diff = 0.0;
  double max_rel_diff = 0.0;
  std::vector<double> abs_diff;
  std::vector<double> rel_diff;
  double tolerance = 0.0;
  bool pass = false;
};

CompareReport compare(const Spectrum& a, const Spectrum& b, double rel_tol);

}  // namespace drums
