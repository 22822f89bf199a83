#include <doctest.h>

#include <cmath>

#include "drums/spectra.hpp"
#include "oracles.hpp"

using namespace drums;

namespace {

struct Pencils {
  ReferenceTriangle tri = ReferenceTriangle::default_triangle();
  DomainLayout o1 = builtin_layout(DomainId::Omega1);
  DomainLayout o2 = builtin_layout(DomainId::Omega2);

  GluedOperatorPair make(DomainId id, int level, const FormSpec& form) const {
    TriangleMesh mesh = refine_uniform(tri, level);
    GluedSpace space = build_glued_space(builtin_layout(id), mesh, form.bc);
    return assemble_glued(space, assemble_block(mesh, form.coefficient), form);
  }
};

}  // namespace

TEST_SUITE("spectra") {

TEST_CASE("identity pencil") {
  Pencils p;
  GluedOperatorPair pair = p.make(DomainId::Omega1, 1, FormSpec::neumann());
  pair.stiffness = pair.mass.cast<std::complex<double>>();
  Spectrum s = sym_eigs(pair, pair.free_dim);
  for (const auto& v : s.values) CHECK(std::abs(v - 1.0) < 1e-12);
}

TEST_CASE("neumann zero mode") {
  Pencils p;
  GluedOperatorPair pair = p.make(DomainId::Omega1, 2, FormSpec::neumann());
  Spectrum s = sym_eigs(pair, 3);
  CHECK(std::abs(s.values[0]) <= 1e-10);
  CHECK(s.values[1].real() > 1e-8);
  // the constant vector is an eigenvector for the zero mode
  Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(pair.free_dim);
  double residual = (pair.stiffness * ones).norm() / (pair.stiffness.norm() * ones.norm());
  CHECK(residual <= 1e-12);
  CHECK(s.max_residual() <= 1e-10);
}

TEST_CASE("dirichlet eigenvalues decrease with refinement") {
  Pencils p;
  Spectrum coarse = sym_eigs(p.make(DomainId::Omega1, 2, FormSpec::dirichlet()), 10);
  Spectrum fine = sym_eigs(p.make(DomainId::Omega1, 3, FormSpec::dirichlet()), 10);
  for (int i = 0; i < 10; ++i) {
    CHECK(fine.values[static_cast<std::size_t>(i)].real() <=
          coarse.values[static_cast<std::size_t>(i)].real() + 1e-12);
  }
  CHECK(fine.values[0].real() > 0.0);
}

TEST_CASE("nonsymmetric path agrees with the symmetric one on hermitian pencils") {
  Pencils p;
  GluedOperatorPair pair = p.make(DomainId::Omega1, 2, FormSpec::neumann());
  Spectrum sym = sym_eigs(pair, 20);
  Spectrum nonsym = nonsym_eigs(pair, 20);
  for (int i = 0; i < 20; ++i) {
    CHECK(std::abs(sym.values[static_cast<std::size_t>(i)] -
                   nonsym.values[static_cast<std::size_t>(i)]) <=
          1e-9 * std::max(1.0, std::abs(sym.values[static_cast<std::size_t>(i)])));
  }
}

TEST_CASE("general elliptic coefficient: similar pencils, right half plane") {
  Pencils p;
  Eigen::Matrix2cd c;
  c << 2.0, 1.0, 0.0, 1.5;
  FormSpec form = FormSpec::neumann(CoefficientField::constant(c));
  GluedOperatorPair pair1 = p.make(DomainId::Omega1, 2, form);
  GluedOperatorPair pair2 = p.make(DomainId::Omega2, 2, form);
  Spectrum s1 = nonsym_eigs(pair1, pair1.free_dim);
  Spectrum s2 = nonsym_eigs(pair2, pair2.free_dim);
  CompareReport report = compare(s1, s2, 1e-6);
  CHECK(report.pass);
  double min_re = 1e300;
  double max_im = 0.0;
  for (const auto& v : s1.values) {
    min_re = std::min(min_re, v.real());
    max_im = std::max(max_im, std::abs(v.imag()));
  }
  CHECK(min_re >= -1e-10);  // zero mode sits at the origin
  CHECK(max_im > 1.0);      // the pencil is genuinely non-normal

  FormSpec dform = FormSpec::dirichlet(CoefficientField::constant(c));
  Spectrum d1 = nonsym_eigs(p.make(DomainId::Omega1, 2, dform), 10);
  for (const auto& v : d1.values) CHECK(v.real() > 0.0);
}

TEST_CASE("canonical ordering pairs conjugates deterministically") {
  Eigen::MatrixXcd k(2, 2);
  k << 0.0, 1.0, -1.0, 0.0;
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2, 2);
  Spectrum s = nonsym_eigs(k, m, 2);
  CHECK(s.values[0].imag() == doctest::Approx(-1.0));
  CHECK(s.values[1].imag() == doctest::Approx(1.0));
  CHECK(std::abs(s.values[0].real()) < 1e-12);
}

TEST_CASE("comparison report") {
  Pencils p;
  GluedOperatorPair pair = p.make(DomainId::Omega1, 1, FormSpec::neumann());
  Spectrum s = sym_eigs(pair, 5);
  CompareReport same = compare(s, s, 1e-6);
  CHECK(same.max_abs_diff == 0.0);
  CHECK(same.max_rel_diff == 0.0);
  CHECK(same.pass);

  Spectrum shorter = sym_eigs(pair, 4);
  CHECK_THROWS(compare(s, shorter, 1e-6));
}

TEST_CASE("solver guards") {
  Pencils p;
  GluedOperatorPair pair = p.make(DomainId::Omega1, 1, FormSpec::neumann());
  CHECK_THROWS(sym_eigs(pair, pair.free_dim + 1));
  CHECK_THROWS(sym_eigs(pair, 0));

  GluedOperatorPair bad = pair;
  bad.mass.setZero();
  CHECK_THROWS(sym_eigs(bad, 1));
  CHECK_THROWS(nonsym_eigs(bad, 1));

  GluedOperatorPair skew = pair;
  skew.stiffness(0, 1) += 1.0;  // break hermiticity
  CHECK_THROWS(sym_eigs(skew, 1));
}

TEST_CASE("robin path keeps residuals small") {
  Pencils p;
  GluedOperatorPair pair = p.make(DomainId::Omega1, 2, FormSpec::robin(1.0));
  Spectrum s = sym_eigs(pair, 10);
  CHECK(s.max_residual() <= 1e-10);
  for (const auto& v : s.values) CHECK(v.real() > 0.0);
}

TEST_CASE("eigenvalue counting tracks the area term") {
  Pencils p;
  GluedOperatorPair pair = p.make(DomainId::Omega1, 4, FormSpec::neumann());
  Spectrum s = sym_eigs(pair, pair.free_dim);
  double area7 = 7.0 * p.tri.area();
  for (double lambda : {200.0, 300.0}) {
    int count = 0;
    for (const auto& v : s.values) {
      if (v.real() <= lambda) ++count;
    }
    double predicted = area7 * lambda / (4.0 * M_PI);
    CHECK(std::abs(count / predicted - 1.0) <= 0.25);
  }
}

}  // TEST_SUITE
