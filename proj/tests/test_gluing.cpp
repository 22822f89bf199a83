#include <doctest.h>

#include "drums/gluing.hpp"
#include "drums/spectra.hpp"
#include "oracles.hpp"

using namespace drums;

TEST_SUITE("gluing") {

TEST_CASE("free dimensions at the base level") {
  auto tri = ReferenceTriangle::default_triangle();
  TriangleMesh mesh = refine_uniform(tri, 0);
  DomainLayout o1 = builtin_layout(DomainId::Omega1);

  GluedSpace neumann = build_glued_space(o1, mesh, BoundaryCondition::Neumann);
  // Euler count on the 7-triangle complex: 8 faces (with the outer one) and
  // 21 - 6 = 15 edges give V = 2 - F + E = 9.
  int faces = 8;
  int edges = 21 - 6;
  CHECK(neumann.free_dim == 2 - faces + edges);
  CHECK(neumann.free_dim == 9);

  GluedSpace dirichlet = build_glued_space(o1, mesh, BoundaryCondition::Dirichlet);
  CHECK(dirichlet.free_dim == 0);
  // exhaustive: at r = 0 every vertex lies on two sides of its copy, and each
  // class reaches some exposed side
  auto members = class_members(dirichlet);
  for (int c = 0; c < dirichlet.num_classes(); ++c) {
    bool touches_boundary = false;
    for (int s : members[static_cast<std::size_t>(c)]) {
      int copy = s / dirichlet.n;
      int vertex = s % dirichlet.n;
      for (EdgeLabel l : kEdgeLabels) {
        const auto& dofs = edge_dofs(mesh, l);
        bool on_side = dofs[0] == vertex || dofs[1] == vertex;
        if (on_side && dirichlet.layout.is_boundary(copy, l)) touches_boundary = true;
      }
    }
    CHECK(touches_boundary);
    CHECK(dirichlet.masked[static_cast<std::size_t>(c)] == 1);
  }
}

TEST_CASE("both domains share every free dimension") {
  auto tri = ReferenceTriangle::default_triangle();
  for (int r = 0; r <= 4; ++r) {
    TriangleMesh mesh = refine_uniform(tri, r);
    for (BoundaryCondition bc :
         {BoundaryCondition::Neumann, BoundaryCondition::Dirichlet, BoundaryCondition::Robin}) {
      GluedSpace s1 = build_glued_space(builtin_layout(DomainId::Omega1), mesh, bc);
      GluedSpace s2 = build_glued_space(builtin_layout(DomainId::Omega2), mesh, bc);
      CHECK(s1.free_dim == s2.free_dim);
    }
  }
}

TEST_CASE("gluing is deterministic") {
  auto tri = ReferenceTriangle::default_triangle();
  TriangleMesh mesh = refine_uniform(tri, 2);
  GluedSpace a = build_glued_space(builtin_layout(DomainId::Omega1), mesh, BoundaryCondition::Dirichlet);
  GluedSpace b = build_glued_space(builtin_layout(DomainId::Omega1), mesh, BoundaryCondition::Dirichlet);
  CHECK(a.class_of == b.class_of);
  CHECK(a.representative == b.representative);
  CHECK(a.masked == b.masked);
  CHECK(a.free_classes == b.free_classes);
}

TEST_CASE("glued operators") {
  auto tri = ReferenceTriangle::default_triangle();
  TriangleMesh mesh = refine_uniform(tri, 2);
  DomainLayout o1 = builtin_layout(DomainId::Omega1);
  AssembledBlock block = assemble_block(mesh, CoefficientField::identity());

  GluedSpace vn = build_glued_space(o1, mesh, BoundaryCondition::Neumann);
  GluedOperatorPair neumann = assemble_glued(vn, block, FormSpec::neumann());
  CHECK((neumann.stiffness * Eigen::VectorXcd::Ones(neumann.free_dim)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((neumann.stiffness - neumann.stiffness.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  Eigen::LLT<Eigen::MatrixXd> llt(neumann.mass);
  CHECK(llt.info() == Eigen::Success);

  // robin with beta = 0 is entrywise the neumann operator
  GluedSpace vr = build_glued_space(o1, mesh, BoundaryCondition::Robin);
  GluedOperatorPair robin0 = assemble_glued(vr, block, FormSpec::robin(0.0));
  CHECK((robin0.stiffness - neumann.stiffness).cwiseAbs().maxCoeff() == 0.0);
  CHECK((robin0.mass - neumann.mass).cwiseAbs().maxCoeff() == 0.0);

  // dirichlet at r = 1: nonempty and coercive
  TriangleMesh mesh1 = refine_uniform(tri, 1);
  GluedSpace vd = build_glued_space(o1, mesh1, BoundaryCondition::Dirichlet);
  CHECK(vd.free_dim > 0);
  GluedOperatorPair dirichlet =
      assemble_glued(vd, assemble_block(mesh1, CoefficientField::identity()), FormSpec::dirichlet());
  Spectrum ds = sym_eigs(dirichlet, 1);
  CHECK(ds.values[0].real() > 0.0);

  // neumann kernel is one-dimensional
  Spectrum ns = sym_eigs(neumann, 2);
  CHECK(std::abs(ns.values[0]) < 1e-10);
  CHECK(ns.values[1].real() > 1e-8);

  // robin eigenvalues are nondecreasing in beta
  std::vector<double> previous;
  for (double beta : {0.0, 0.5, 1.0}) {
    Spectrum s = sym_eigs(assemble_glued(vr, block, FormSpec::robin(beta)), 10);
    if (!previous.empty()) {
      for (int i = 0; i < 10; ++i) {
        CHECK(s.values[static_cast<std::size_t>(i)].real() >=
              previous[static_cast<std::size_t>(i)] - 1e-12);
      }
    }
    previous.clear();
    for (const auto& v : s.values) previous.push_back(v.real());
  }
}

TEST_CASE("mismatch guards") {
  auto tri = ReferenceTriangle::default_triangle();
  TriangleMesh mesh1 = refine_uniform(tri, 1);
  TriangleMesh mesh2 = refine_uniform(tri, 2);
  DomainLayout o1 = builtin_layout(DomainId::Omega1);
  GluedSpace space = build_glued_space(o1, mesh1, BoundaryCondition::Neumann);
  AssembledBlock block2 = assemble_block(mesh2, CoefficientField::identity());
  CHECK_THROWS(assemble_glued(space, block2, FormSpec::neumann()));
  AssembledBlock block1 = assemble_block(mesh1, CoefficientField::identity());
  CHECK_THROWS(assemble_glued(space, block1, FormSpec::dirichlet()));
}

TEST_CASE("embedded crosscheck agrees with the glued construction") {
  auto tri = ReferenceTriangle::default_triangle();
  DomainLayout o1 = builtin_layout(DomainId::Omega1);

  // r = 0: both routes have dimension 9 and identical spectra
  CrosscheckReport base = embedded_crosscheck(o1, tri, 0, FormSpec::neumann(), -1);
  CHECK(base.glued_dim == 9);
  CHECK(base.planar_dim == 9);
  CHECK(base.compared == 9);
  CHECK(base.max_abs_diff < 1e-9);

  CrosscheckReport neumann = embedded_crosscheck(o1, tri, 2, FormSpec::neumann(), 15);
  CHECK(neumann.glued_dim == neumann.planar_dim);
  CHECK(neumann.max_abs_diff <= 1e-9);

  CrosscheckReport dirichlet = embedded_crosscheck(o1, tri, 2, FormSpec::dirichlet(), 15);
  CHECK(dirichlet.glued_dim == dirichlet.planar_dim);
  CHECK(dirichlet.max_abs_diff <= 1e-9);

  CrosscheckReport robin = embedded_crosscheck(o1, tri, 2, FormSpec::robin(1.0), 15);
  CHECK(robin.glued_dim == robin.planar_dim);
  CHECK(robin.max_abs_diff <= 1e-9);
}

}  // TEST_SUITE
