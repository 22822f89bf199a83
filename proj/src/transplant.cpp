#include "drums/transplant.hpp"

#include <cmath>
#include <stdexcept>

namespace drums {

Matrix7d TransplantMatrix::to_double() const {
  Matrix7d out;
  for (int r = 0; r < 7; ++r) {
    for (int c = 0; c < 7; ++c) out(r, c) = entries(r, c).to_double();
  }
  return out;
}

TransplantMatrix TransplantMatrix::from_double(const Matrix7d& m, std::string name) {
  TransplantMatrix out;
  out.name = std::move(name);
  for (int r = 0; r < 7; ++r) {
    for (int c = 0; c < 7; ++c) out.entries(r, c) = Rational::from_double(m(r, c));
  }
  return out;
}

TransplantMatrix TransplantMatrix::from_exact(const Matrix7q& m, std::string name) {
  return TransplantMatrix{m, std::move(name)};
}

TransplantMatrix transposed(const TransplantMatrix& p) {
  return TransplantMatrix{p.entries.transpose(), p.name + "^T"};
}

MatrixName parse_matrix_name(const std::string& text) {
  if (text == "B") return MatrixName::B;
  if (text == "BD") return MatrixName::BD;
  if (text == "ONES") return MatrixName::Ones;
  if (text == "IDENTITY") return MatrixName::Identity;
  throw std::invalid_argument("unknown matrix name: " + text);
}

TransplantMatrix named_matrix(MatrixName name) {
  constexpr int b[7][7] = {
      {0, 1, 1, 1, 0, 0, 0},
      {1, 0, 1, 0, 0, 0, 1},
      {1, 0, 0, 1, 1, 0, 0},
      {1, 1, 0, 0, 0, 1, 0},
      {0, 0, 0, 1, 0, 1, 1},
      {0, 1, 0, 0, 1, 0, 1},
      {0, 0, 1, 0, 1, 1, 0},
  };
  constexpr int bd[7][7] = {
      {0, 1, 1, 1, 0, 0, 0},
      {1, 0, -1, 0, 0, 0, 1},
      {1, 0, 0, -1, 1, 0, 0},
      {1, -1, 0, 0, 0, 1, 0},
      {0, 0, 0, 1, 0, -1, -1},
      {0, 1, 0, 0, -1, 0, -1},
      {0, 0, 1, 0, -1, -1, 0},
  };
  Matrix7q m;
  switch (name) {
    case MatrixName::B:
      for (int r = 0; r < 7; ++r)
        for (int c = 0; c < 7; ++c) m(r, c) = Rational(b[r][c]);
      return TransplantMatrix{m, "B"};
    case MatrixName::BD:
      for (int r = 0; r < 7; ++r)
        for (int c = 0; c < 7; ++c) m(r, c) = Rational(bd[r][c]);
      return TransplantMatrix{m, "BD"};
    case MatrixName::Ones:
      for (int r = 0; r < 7; ++r)
        for (int c = 0; c < 7; ++c) m(r, c) = Rational(1);
      return TransplantMatrix{m, "ONES"};
    case MatrixName::Identity:
      for (int r = 0; r < 7; ++r)
        for (int c = 0; c < 7; ++c) m(r, c) = Rational(r == c ? 1 : 0);
      return TransplantMatrix{m, "IDENTITY"};
  }
  throw std::invalid_argument("unknown matrix name");
}

TransplantMatrix bhat(double alpha, double gamma) {
  return bhat_exact(Rational::from_double(alpha), Rational::from_double(gamma));
}

TransplantMatrix bhat_exact(const Rational& alpha, const Rational& gamma) {
  const TransplantMatrix b = named_matrix(MatrixName::B);
  Matrix7q m;
  for (int r = 0; r < 7; ++r) {
    for (int c = 0; c < 7; ++c) {
      m(r, c) = b.entries(r, c).is_zero() ? alpha : gamma;
    }
  }
  return TransplantMatrix{m, "BHAT"};
}

UnitaryBhat unitary_bhat() {
  // gamma = alpha (sqrt(2) - 2) solves 2 a^2 + 4 a g + g^2 = 0; substituting
  // into 4 a^2 + 3 g^2 = 1 gives a = 1 / sqrt(22 - 12 sqrt(2)). This branch
  // has row sums +1 and matches the polar unitary of B.
  const double sqrt2 = std::sqrt(2.0);
  UnitaryBhat out;
  out.alpha = 1.0 / std::sqrt(22.0 - 12.0 * sqrt2);
  out.gamma = out.alpha * (sqrt2 - 2.0);
  out.matrix = bhat(out.alpha, out.gamma);
  out.matrix.name = "BHAT_UNITARY";
  return out;
}

namespace {

void require_compatible(const GluedSpace& src, const GluedSpace& dst) {
  if (src.mesh_level != dst.mesh_level || src.n != dst.n) {
    throw std::invalid_argument("transplant: glued spaces live on different mesh levels");
  }
  if (src.bc != dst.bc) {
    throw std::invalid_argument("transplant: glued spaces have different boundary conditions");
  }
}

}  // namespace

Rational subspace_residual_exact(const TransplantMatrix& p, const GluedSpace& src,
                                 const GluedSpace& dst) {
  require_compatible(src, dst);
  const int n = src.n;
  const auto src_members = class_members(src);
  const auto dst_members = class_members(dst);

  std::vector<Rational> y(static_cast<std::size_t>(src.num_slots));
  std::vector<int> touched;
  std::vector<char> class_touched(static_cast<std::size_t>(dst.num_classes()), 0);
  std::vector<int> touched_classes;

  Rational worst(0);
  for (int free_c = 0; free_c < src.free_dim; ++free_c) {
    const int cls = src.free_classes[static_cast<std::size_t>(free_c)];
    for (int s : src_members[static_cast<std::size_t>(cls)]) {
      const int copy = s / n;
      const int vertex = s % n;
      for (int k = 0; k < 7; ++k) {
        const Rational& w = p.entries(k, copy);
        if (w.is_zero()) continue;
        int t = k * n + vertex;
        if (y[static_cast<std::size_t>(t)].is_zero()) touched.push_back(t);
        y[static_cast<std::size_t>(t)] += w;
      }
    }

    Rational magnitude(0);
    for (int t : touched) {
      Rational a = abs(y[static_cast<std::size_t>(t)]);
      if (a > magnitude) magnitude = a;
      int c = dst.class_of[static_cast<std::size_t>(t)];
      if (!class_touched[static_cast<std::size_t>(c)]) {
        class_touched[static_cast<std::size_t>(c)] = 1;
        touched_classes.push_back(c);
      }
    }

    Rational violation(0);
    for (int c : touched_classes) {
      const auto& members = dst_members[static_cast<std::size_t>(c)];
      if (dst.masked[static_cast<std::size_t>(c)]) {
        for (int s : members) {
          Rational a = abs(y[static_cast<std::size_t>(s)]);
          if (a > violation) violation = a;
        }
      } else {
        const Rational& ref = y[static_cast<std::size_t>(members.front())];
        for (int s : members) {
          Rational a = abs(y[static_cast<std::size_t>(s)] - ref);
          if (a > violation) violation = a;
        }
      }
    }
    if (!magnitude.is_zero()) {
      Rational normalized = violation / magnitude;
      if (normalized > worst) worst = normalized;
    }

    for (int t : touched) y[static_cast<std::size_t>(t)] = Rational(0);
    for (int c : touched_classes) class_touched[static_cast<std::size_t>(c)] = 0;
    touched.clear();
    touched_classes.clear();
  }
  return worst;
}

double subspace_residual(const TransplantMatrix& p, const GluedSpace& src, const GluedSpace& dst) {
  return subspace_residual_exact(p, src, dst).to_double();
}

InducedMap induced_map(const TransplantMatrix& p, const GluedSpace& src, const GluedSpace& dst,
                       double residual_tol) {
  require_compatible(src, dst);
  InducedMap out;
  out.residual = subspace_residual(p, src, dst);
  if (out.residual > residual_tol) {
    throw std::invalid_argument("induced_map: matrix does not respect the glued spaces (residual " +
                                std::to_string(out.residual) + ")");
  }
  out.src_dim = src.free_dim;
  out.dst_dim = dst.free_dim;

  const int n = src.n;
  const Matrix7d pd = p.to_double();
  const auto src_members = class_members(src);
  out.matrix = Eigen::MatrixXd::Zero(dst.free_dim, src.free_dim);
  for (int free_c = 0; free_c < src.free_dim; ++free_c) {
    const int cls = src.free_classes[static_cast<std::size_t>(free_c)];
    for (int s : src_members[static_cast<std::size_t>(cls)]) {
      const int copy = s / n;
      const int vertex = s % n;
      for (int k = 0; k < 7; ++k) {
        if (pd(k, copy) == 0.0) continue;
        int t = k * n + vertex;
        int dst_class = dst.class_of[static_cast<std::size_t>(t)];
        // Each dst class accumulates once, read off at its representative.
        if (dst.representative[static_cast<std::size_t>(dst_class)] != t) continue;
        int b = dst.free_index[static_cast<std::size_t>(dst_class)];
        if (b >= 0) out.matrix(b, free_c) += pd(k, copy);
      }
    }
  }

  if (out.src_dim == out.dst_dim && out.src_dim > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(out.matrix);
    out.smallest_singular_value = svd.singularValues()(svd.singularValues().size() - 1);
  }
  return out;
}

IntertwineResidual intertwine_residual(const TransplantMatrix& p, const GluedSpace& src,
                                       const GluedSpace& dst, const AssembledBlock& block,
                                       const FormSpec& form) {
  InducedMap phi = induced_map(p, src, dst);
  InducedMap psi = induced_map(transposed(p), dst, src);

  GluedOperatorPair pair1 = assemble_glued(src, block, form);
  GluedOperatorPair pair2 = assemble_glued(dst, block, form);

  Eigen::MatrixXcd phi_c = phi.matrix.cast<std::complex<double>>();
  Eigen::MatrixXcd psi_c = psi.matrix.cast<std::complex<double>>();

  IntertwineResidual out;
  double k_norm = pair1.stiffness.norm();
  double m_norm = pair1.mass.norm();
  out.rho_k = (phi_c.transpose() * pair2.stiffness - pair1.stiffness * psi_c).norm() /
              (k_norm > 0 ? k_norm : 1.0);
  out.rho_m = (phi.matrix.transpose() * pair2.mass - pair1.mass * psi.matrix).norm() /
              (m_norm > 0 ? m_norm : 1.0);
  return out;
}

PolarDecomposition polar_unitary(const TransplantMatrix& p) {
  const Matrix7d pd = p.to_double();
  Eigen::SelfAdjointEigenSolver<Matrix7d> es(pd.transpose() * pd);
  if (es.info() != Eigen::Success) throw std::runtime_error("polar_unitary: eigensolver failed");
  double max_ev = es.eigenvalues().maxCoeff();
  if (!(es.eigenvalues().minCoeff() > 1e-12 * std::max(1.0, max_ev))) {
    throw std::invalid_argument("polar_unitary: matrix is singular");
  }

  Matrix7d sqrt_diag = Matrix7d::Zero();
  Matrix7d inv_sqrt_diag = Matrix7d::Zero();
  for (int i = 0; i < 7; ++i) {
    double s = std::sqrt(es.eigenvalues()(i));
    sqrt_diag(i, i) = s;
    inv_sqrt_diag(i, i) = 1.0 / s;
  }
  Matrix7d abs_p = es.eigenvectors() * sqrt_diag * es.eigenvectors().transpose();
  Matrix7d u = pd * (es.eigenvectors() * inv_sqrt_diag * es.eigenvectors().transpose());

  PolarDecomposition out;
  out.unitary = TransplantMatrix::from_double(u, "polar_unitary(" + p.name + ")");
  out.absolute = TransplantMatrix::from_double(abs_p, "polar_abs(" + p.name + ")");
  out.orthogonality_defect = (u.transpose() * u - Matrix7d::Identity()).cwiseAbs().maxCoeff();
  out.reconstruction_error = (u * abs_p - pd).cwiseAbs().maxCoeff();
  return out;
}

OrderReport order_properties(const TransplantMatrix& p) {
  OrderReport report;
  report.entrywise_nonnegative = true;
  for (int r = 0; r < 7; ++r) {
    int nonzeros = 0;
    for (int c = 0; c < 7; ++c) {
      if (p.entries(r, c).signum() < 0) report.entrywise_nonnegative = false;
      if (!p.entries(r, c).is_zero()) ++nonzeros;
    }
    report.max_nonzeros_per_row = std::max(report.max_nonzeros_per_row, nonzeros);
  }

  RatMatrix m(7, 7);
  for (int r = 0; r < 7; ++r)
    for (int c = 0; c < 7; ++c) m(r, c) = p.entries(r, c);

  auto inv = exact_inverse(m);
  report.invertible = inv.has_value();
  if (inv) {
    report.inverse_entrywise_nonnegative = true;
    for (int r = 0; r < 7; ++r) {
      for (int c = 0; c < 7; ++c) {
        if ((*inv)(r, c).signum() < 0) report.inverse_entrywise_nonnegative = false;
      }
    }
  }

  Matrix7q ptp = p.entries.transpose() * p.entries;
  Matrix7q ppt = p.entries * p.entries.transpose();
  report.is_normal = true;
  report.is_orthogonal = true;
  for (int r = 0; r < 7; ++r) {
    for (int c = 0; c < 7; ++c) {
      if (ptp(r, c) != ppt(r, c)) report.is_normal = false;
      if (ptp(r, c) != Rational(r == c ? 1 : 0)) report.is_orthogonal = false;
    }
  }
  return report;
}

}  // namespace drums
