#include "drums/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace drums {

namespace {

constexpr double kReClusterRel = 1e-10;
constexpr double kRelFloorScale = 1e-6;

// Permutation sorting eigenvalues ascending by real part, then by imaginary
// part within clusters of real parts that agree up to roundoff.
std::vector<int> canonical_order(const std::vector<std::complex<double>>& values) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&values](int a, int b) {
    const auto& va = values[static_cast<std::size_t>(a)];
    const auto& vb = values[static_cast<std::size_t>(b)];
    if (va.real() != vb.real()) return va.real() < vb.real();
    return va.imag() < vb.imag();
  });
  // Re-sort runs of near-equal real parts by imaginary part.
  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t end = start + 1;
    while (end < order.size()) {
      double prev = values[static_cast<std::size_t>(order[end - 1])].real();
      double cur = values[static_cast<std::size_t>(order[end])].real();
      double gap_tol = kReClusterRel * std::max({1.0, std::abs(prev), std::abs(cur)});
      if (cur - prev > gap_tol) break;
      ++end;
    }
    std::sort(order.begin() + static_cast<std::ptrdiff_t>(start),
              order.begin() + static_cast<std::ptrdiff_t>(end), [&values](int a, int b) {
                const auto& va = values[static_cast<std::size_t>(a)];
                const auto& vb = values[static_cast<std::size_t>(b)];
                if (va.imag() != vb.imag()) return va.imag() < vb.imag();
                return va.real() < vb.real();
              });
    start = end;
  }
  return order;
}

// Batched eigenpair residuals: columns of x against eigenvalues lambda.
template <typename MatK, typename MatM, typename MatX, typename Values>
std::vector<double> batched_residuals(const MatK& k, const MatM& m, const MatX& x,
                                      const Values& lambda, double k_norm, double m_norm) {
  MatX kx = k * x;
  MatX mx = m * x;
  std::vector<double> out(static_cast<std::size_t>(x.cols()));
  for (Eigen::Index i = 0; i < x.cols(); ++i) {
    auto lam = lambda[static_cast<std::size_t>(i)];
    double num = (kx.col(i) - lam * mx.col(i)).norm();
    double den = (k_norm + std::abs(lam) * m_norm) * x.col(i).norm();
    out[static_cast<std::size_t>(i)] = den > 0 ? num / den : 0.0;
  }
  return out;
}

void check_counts(Eigen::Index dim, int m) {
  if (m <= 0) throw std::invalid_argument("eigensolve: requested count must be positive");
  if (m > dim) throw std::invalid_argument("eigensolve: requested count exceeds free dimension");
}

}  // namespace

double Spectrum::max_residual() const {
  double r = 0.0;
  for (double v : residuals) r = std::max(r, v);
  return r;
}

Spectrum sym_eigs(const Eigen::MatrixXcd& K, const Eigen::MatrixXd& M, int m,
                  double residual_tol) {
  check_counts(K.rows(), m);
  double k_norm = K.norm();
  double herm_defect = (K - K.adjoint()).norm();
  if (herm_defect > 1e-10 * std::max(1.0, k_norm)) {
    throw std::invalid_argument("sym_eigs: stiffness matrix is not Hermitian");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("sym_eigs: mass matrix is not positive definite");
  }
  double m_norm = M.norm();
  Spectrum spectrum;
  spectrum.count = m;
  std::vector<std::complex<double>> lambdas;
  if (K.imag().norm() == 0.0) {
    // Real symmetric pencil: solve in real arithmetic.
    Eigen::MatrixXd k_sym = 0.5 * (K.real() + K.real().transpose());
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        k_sym, M, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
    if (solver.info() != Eigen::Success) throw std::runtime_error("sym_eigs: eigensolver failed");
    Eigen::MatrixXd x = solver.eigenvectors().leftCols(m);
    std::vector<double> real_lams;
    for (int i = 0; i < m; ++i) {
      real_lams.push_back(solver.eigenvalues()(i));
      lambdas.emplace_back(solver.eigenvalues()(i), 0.0);
    }
    spectrum.values = lambdas;
    spectrum.residuals = batched_residuals(k_sym, M, x, real_lams, k_norm, m_norm);
  } else {
    Eigen::MatrixXcd k_herm = 0.5 * (K + K.adjoint());
    Eigen::MatrixXcd m_c = M.cast<std::complex<double>>();
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        k_herm, m_c, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
    if (solver.info() != Eigen::Success) throw std::runtime_error("sym_eigs: eigensolver failed");
    Eigen::MatrixXcd x = solver.eigenvectors().leftCols(m);
    for (int i = 0; i < m; ++i) lambdas.emplace_back(solver.eigenvalues()(i), 0.0);
    spectrum.values = lambdas;
    spectrum.residuals = batched_residuals(k_herm, m_c, x, lambdas, k_norm, m_norm);
  }
  if (spectrum.max_residual() > residual_tol) {
    throw std::runtime_error("sym_eigs: eigenpair residual exceeds solver tolerance");
  }
  return spectrum;
}

Spectrum sym_eigs(const GluedOperatorPair& pair, int m, double residual_tol) {
  return sym_eigs(pair.stiffness, pair.mass, m, residual_tol);
}

Spectrum nonsym_eigs(const Eigen::MatrixXcd& K, const Eigen::MatrixXd& M, int m,
                     double residual_tol) {
  check_counts(K.rows(), m);
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("nonsym_eigs: mass matrix is not positive definite");
  }
  Eigen::MatrixXcd l = llt.matrixL().toDenseMatrix().cast<std::complex<double>>();
  auto lower = l.triangularView<Eigen::Lower>();
  Eigen::MatrixXcd t1 = lower.solve(K);
  // a = t1 * L^{-T}: solve L a^T = t1^T (plain transpose, no conjugation).
  Eigen::MatrixXcd a = lower.solve(t1.transpose()).transpose();

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a, true);
  if (solver.info() != Eigen::Success) throw std::runtime_error("nonsym_eigs: eigensolver failed");

  std::vector<std::complex<double>> values(static_cast<std::size_t>(a.rows()));
  for (Eigen::Index i = 0; i < a.rows(); ++i) values[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  std::vector<int> order = canonical_order(values);

  double k_norm = K.norm();
  double m_norm = M.norm();
  Spectrum spectrum;
  spectrum.count = m;
  auto upper = l.transpose().triangularView<Eigen::Upper>();
  Eigen::MatrixXcd x(a.rows(), m);
  for (int i = 0; i < m; ++i) {
    int src = order[static_cast<std::size_t>(i)];
    spectrum.values.push_back(values[static_cast<std::size_t>(src)]);
    x.col(i) = solver.eigenvectors().col(src);
  }
  x = upper.solve(x);
  Eigen::MatrixXcd m_c = M.cast<std::complex<double>>();
  spectrum.residuals = batched_residuals(K, m_c, x, spectrum.values, k_norm, m_norm);
  if (spectrum.max_residual() > residual_tol) {
    throw std::runtime_error("nonsym_eigs: eigenpair residual exceeds solver tolerance");
  }
  return spectrum;
}

Spectrum nonsym_eigs(const GluedOperatorPair& pair, int m, double residual_tol) {
  return nonsym_eigs(pair.stiffness, pair.mass, m, residual_tol);
}

CompareReport compare(const Spectrum& a, const Spectrum& b, double rel_tol) {
  if (a.count != b.count) throw std::invalid_argument("compare: spectra have different counts");
  CompareReport report;
  report.count = a.count;
  report.tolerance = rel_tol;

  double scale = 0.0;
  for (const auto& v : a.values) scale = std::max(scale, std::abs(v));
  for (const auto& v : b.values) scale = std::max(scale, std::abs(v));
  double floor = kRelFloorScale * scale;

  for (int i = 0; i < report.count; ++i) {
    double abs_diff = std::abs(a.values[static_cast<std::size_t>(i)] - b.values[static_cast<std::size_t>(i)]);
    double denom = std::max({std::abs(a.values[static_cast<std::size_t>(i)]),
                             std::abs(b.values[static_cast<std::size_t>(i)]), floor});
    double rel_diff = denom > 0 ? abs_diff / denom : 0.0;
    report.abs_diff.push_back(abs_diff);
    report.rel_diff.push_back(rel_diff);
    report.max_abs_diff = std::max(report.max_abs_diff, abs_diff);
    report.max_rel_diff = std::max(report.max_rel_diff, rel_diff);
  }
  report.pass = report.max_rel_diff <= rel_tol;
  return report;
}

}  // namespace drums
