#include "drums/admissible.hpp"

#include <map>
#include <stdexcept>

#include "drums/gluing.hpp"
#include "drums/mesh.hpp"

namespace drums {

std::array<PatternSubspace, 3> trace_patterns(const DomainLayout& layout, BoundaryCondition bc) {
  if (bc == BoundaryCondition::Robin) bc = BoundaryCondition::Neumann;
  std::array<PatternSubspace, 3> out;
  for (EdgeLabel l : kEdgeLabels) {
    PatternSubspace& sub = out[static_cast<std::size_t>(index(l))];
    sub.label = l;
    const auto& pairs = layout.pairs(l);
    const auto& boundary = layout.boundary(l);
    if (bc == BoundaryCondition::Neumann) {
      sub.basis = RatMatrix::Zero(7, 5);
      sub.complement_basis = RatMatrix::Zero(7, 2);
      for (int i = 0; i < 2; ++i) {
        const auto& [k, m] = pairs[static_cast<std::size_t>(i)];
        sub.basis(k, i) = Rational(1);
        sub.basis(m, i) = Rational(1);
        sub.complement_basis(k, i) = Rational(1);
        sub.complement_basis(m, i) = Rational(-1);
      }
      for (int i = 0; i < 3; ++i) sub.basis(boundary[static_cast<std::size_t>(i)], 2 + i) = Rational(1);
    } else {
      sub.basis = RatMatrix::Zero(7, 2);
      sub.complement_basis = RatMatrix::Zero(7, 5);
      for (int i = 0; i < 2; ++i) {
        const auto& [k, m] = pairs[static_cast<std::size_t>(i)];
        sub.basis(k, i) = Rational(1);
        sub.basis(m, i) = Rational(1);
        sub.complement_basis(k, i) = Rational(1);
        sub.complement_basis(m, i) = Rational(-1);
      }
      for (int i = 0; i < 3; ++i) {
        sub.complement_basis(boundary[static_cast<std::size_t>(i)], 2 + i) = Rational(1);
      }
    }
  }
  return out;
}

std::string to_string(AdmissibleBc bc) {
  switch (bc) {
    case AdmissibleBc::Neumann: return "neumann";
    case AdmissibleBc::Dirichlet: return "dirichlet";
    case AdmissibleBc::Robin: return "robin";
    case AdmissibleBc::Joint: return "joint";
  }
  throw std::invalid_argument("unknown admissible bc");
}

AdmissibleBc parse_admissible_bc(const std::string& text) {
  if (text == "neumann") return AdmissibleBc::Neumann;
  if (text == "dirichlet") return AdmissibleBc::Dirichlet;
  if (text == "robin") return AdmissibleBc::Robin;
  if (text == "joint") return AdmissibleBc::Joint;
  throw std::invalid_argument("unknown admissible bc: " + text);
}

namespace {

int unknown_index(int k, int l) { return 7 * k + l; }

void append_if_nonzero(std::vector<Constraint>& out, Constraint&& eq) {
  for (Eigen::Index i = 0; i < eq.coefficients.size(); ++i) {
    if (!eq.coefficients(i).is_zero()) {
      out.push_back(std::move(eq));
      return;
    }
  }
}

// Subspace conditions P W_src(l) <= W_dst(l) and P^T W_dst(l) <= W_src(l),
// expressed against the complement generators of the target.
void append_pattern_constraints(std::vector<Constraint>& out,
                                const std::array<PatternSubspace, 3>& src,
                                const std::array<PatternSubspace, 3>& dst) {
  for (EdgeLabel l : kEdgeLabels) {
    const PatternSubspace& w1 = src[static_cast<std::size_t>(index(l))];
    const PatternSubspace& w2 = dst[static_cast<std::size_t>(index(l))];
    for (Eigen::Index d = 0; d < w2.complement_basis.cols(); ++d) {
      for (Eigen::Index t = 0; t < w1.basis.cols(); ++t) {
        Constraint eq;
        eq.coefficients = RatVector::Zero(49);
        eq.kind = ConstraintKind::Forward;
        eq.label = l;
        eq.generator_a = static_cast<int>(d);
        eq.generator_b = static_cast<int>(t);
        for (int k = 0; k < 7; ++k) {
          if (w2.complement_basis(k, d).is_zero()) continue;
          for (int m = 0; m < 7; ++m) {
            if (w1.basis(m, t).is_zero()) continue;
            eq.coefficients(unknown_index(k, m)) += w2.complement_basis(k, d) * w1.basis(m, t);
          }
        }
        append_if_nonzero(out, std::move(eq));
      }
    }
    for (Eigen::Index d = 0; d < w1.complement_basis.cols(); ++d) {
      for (Eigen::Index s = 0; s < w2.basis.cols(); ++s) {
        Constraint eq;
        eq.coefficients = RatVector::Zero(49);
        eq.kind = ConstraintKind::Adjoint;
        eq.label = l;
        eq.generator_a = static_cast<int>(d);
        eq.generator_b = static_cast<int>(s);
        for (int k = 0; k < 7; ++k) {
          if (w2.basis(k, s).is_zero()) continue;
          for (int m = 0; m < 7; ++m) {
            if (w1.complement_basis(m, d).is_zero()) continue;
            eq.coefficients(unknown_index(k, m)) += w2.basis(k, s) * w1.complement_basis(m, d);
          }
        }
        append_if_nonzero(out, std::move(eq));
      }
    }
  }
}

// Per side, the bilinear form s^T Z t with z_kl = p_kl (chi2_k - chi1_l) must
// vanish on the Neumann patterns; chi are the boundary-slot indicators.
void append_robin_constraints(std::vector<Constraint>& out, const DomainLayout& src,
                              const DomainLayout& dst,
                              const std::array<PatternSubspace, 3>& w1,
                              const std::array<PatternSubspace, 3>& w2, const Rational& beta) {
  for (EdgeLabel l : kEdgeLabels) {
    const PatternSubspace& p1 = w1[static_cast<std::size_t>(index(l))];
    const PatternSubspace& p2 = w2[static_cast<std::size_t>(index(l))];
    for (Eigen::Index s = 0; s < p2.basis.cols(); ++s) {
      for (Eigen::Index t = 0; t < p1.basis.cols(); ++t) {
        Constraint eq;
        eq.coefficients = RatVector::Zero(49);
        eq.kind = ConstraintKind::RobinBoundary;
        eq.label = l;
        eq.generator_a = static_cast<int>(s);
        eq.generator_b = static_cast<int>(t);
        for (int k = 0; k < 7; ++k) {
          if (p2.basis(k, s).is_zero()) continue;
          for (int m = 0; m < 7; ++m) {
            if (p1.basis(m, t).is_zero()) continue;
            int chi = (dst.is_boundary(k, l) ? 1 : 0) - (src.is_boundary(m, l) ? 1 : 0);
            if (chi == 0) continue;
            eq.coefficients(unknown_index(k, m)) +=
                beta * Rational(chi) * p2.basis(k, s) * p1.basis(m, t);
          }
        }
        append_if_nonzero(out, std::move(eq));
      }
    }
  }
}

}  // namespace

ConstraintSystem build_constraints(AdmissibleBc bc, const DomainLayout& src,
                                   const DomainLayout& dst, const Rational& beta) {
  ConstraintSystem sys;
  sys.bc = bc;
  auto neumann_src = trace_patterns(src, BoundaryCondition::Neumann);
  auto neumann_dst = trace_patterns(dst, BoundaryCondition::Neumann);
  switch (bc) {
    case AdmissibleBc::Neumann:
      append_pattern_constraints(sys.equations, neumann_src, neumann_dst);
      break;
    case AdmissibleBc::Dirichlet: {
      auto d_src = trace_patterns(src, BoundaryCondition::Dirichlet);
      auto d_dst = trace_patterns(dst, BoundaryCondition::Dirichlet);
      append_pattern_constraints(sys.equations, d_src, d_dst);
      break;
    }
    case AdmissibleBc::Robin:
      if (beta.is_zero()) throw std::invalid_argument("robin constraints need beta != 0");
      append_pattern_constraints(sys.equations, neumann_src, neumann_dst);
      append_robin_constraints(sys.equations, src, dst, neumann_src, neumann_dst, beta);
      break;
    case AdmissibleBc::Joint: {
      append_pattern_constraints(sys.equations, neumann_src, neumann_dst);
      auto d_src = trace_patterns(src, BoundaryCondition::Dirichlet);
      auto d_dst = trace_patterns(dst, BoundaryCondition::Dirichlet);
      append_pattern_constraints(sys.equations, d_src, d_dst);
      break;
    }
  }
  return sys;
}

ConstraintSystem build_constraints(AdmissibleBc bc, const Rational& beta) {
  return build_constraints(bc, builtin_layout(DomainId::Omega1), builtin_layout(DomainId::Omega2),
                           beta);
}

ConstraintSystem build_constraints_robin_discrete(int level, const Rational& beta) {
  if (beta.is_zero()) throw std::invalid_argument("robin constraints need beta != 0");
  // Triangle with rational side lengths so every edge-mass entry is rational:
  // G1 = 5, G2 = 4, G3 = 3.
  ReferenceTriangle tri({0.0, 0.0}, {3.0, 0.0}, {0.0, 4.0});
  TriangleMesh mesh = refine_uniform(tri, level);
  const std::array<Rational, 3> side_length = {Rational(5), Rational(4), Rational(3)};
  const int segments = (1 << level);
  const int n = mesh.num_vertices();

  DomainLayout src = builtin_layout(DomainId::Omega1);
  DomainLayout dst = builtin_layout(DomainId::Omega2);
  GluedSpace v1 = build_glued_space(src, mesh, BoundaryCondition::Neumann);
  GluedSpace v2 = build_glued_space(dst, mesh, BoundaryCondition::Neumann);
  const auto members1 = class_members(v1);
  const auto members2 = class_members(v2);

  ConstraintSystem sys;
  sys.bc = AdmissibleBc::Robin;

  // Coefficient of p_km in the image value at slot (k, v) of the indicator of
  // a src class: one for every member (m, v) of the class.
  auto image_coefficients = [&](int src_class) {
    // map: dst slot -> list of source copies m contributing p_{copy(slot), m}
    std::map<int, std::vector<int>> contributions;
    for (int s : members1[static_cast<std::size_t>(src_class)]) {
      int copy = s / n;
      int vertex = s % n;
      for (int k = 0; k < 7; ++k) contributions[k * n + vertex].push_back(copy);
    }
    return contributions;
  };

  // Subspace conditions: the image of every src class indicator is constant
  // on every dst class.
  for (int free_c = 0; free_c < v1.free_dim; ++free_c) {
    int cls = v1.free_classes[static_cast<std::size_t>(free_c)];
    auto contributions = image_coefficients(cls);
    std::map<int, std::vector<int>> touched;  // dst class -> touched slots
    for (const auto& [slot, _] : contributions) {
      touched[v2.class_of[static_cast<std::size_t>(slot)]].push_back(slot);
    }
    for (const auto& [dst_class, slots] : touched) {
      const auto& all = members2[static_cast<std::size_t>(dst_class)];
      int ref = all.front();
      for (int s : all) {
        if (s == ref) continue;
        Constraint eq;
        eq.coefficients = RatVector::Zero(49);
        eq.kind = ConstraintKind::Forward;
        eq.generator_a = free_c;
        eq.generator_b = s;
        auto add = [&](int slot, int sign) {
          auto it = contributions.find(slot);
          if (it == contributions.end()) return;
          int k = slot / n;
          for (int m : it->second) eq.coefficients(unknown_index(k, m)) += Rational(sign);
        };
        add(s, 1);
        add(ref, -1);
        append_if_nonzero(sys.equations, std::move(eq));
      }
    }
  }

  // Adjoint subspace conditions, same construction with the domains swapped
  // and P replaced by P^T (coefficient lands on p_{m, copy}).
  for (int free_c = 0; free_c < v2.free_dim; ++free_c) {
    int cls = v2.free_classes[static_cast<std::size_t>(free_c)];
    std::map<int, std::vector<int>> contributions;
    for (int s : members2[static_cast<std::size_t>(cls)]) {
      int copy = s / n;
      int vertex = s % n;
      for (int k = 0; k < 7; ++k) contributions[k * n + vertex].push_back(copy);
    }
    std::map<int, std::vector<int>> touched;
    for (const auto& [slot, _] : contributions) {
      touched[v1.class_of[static_cast<std::size_t>(slot)]].push_back(slot);
    }
    for (const auto& [dst_class, slots] : touched) {
      const auto& all = members1[static_cast<std::size_t>(dst_class)];
      int ref = all.front();
      for (int s : all) {
        if (s == ref) continue;
        Constraint eq;
        eq.coefficients = RatVector::Zero(49);
        eq.kind = ConstraintKind::Adjoint;
        eq.generator_a = free_c;
        eq.generator_b = s;
        auto add = [&](int slot, int sign) {
          auto it = contributions.find(slot);
          if (it == contributions.end()) return;
          int k = slot / n;
          for (int m : it->second) eq.coefficients(unknown_index(m, k)) += Rational(sign);
        };
        add(s, 1);
        add(ref, -1);
        append_if_nonzero(sys.equations, std::move(eq));
      }
    }
  }

  // Exact 1D P1 edge mass per side: tridiagonal with h/3 diagonal blocks.
  // trace_vector(class, copy, label) below dots through it.
  auto edge_mass_dot = [&](EdgeLabel l, const std::vector<Rational>& a,
                           const std::vector<Rational>& b) {
    Rational h = side_length[static_cast<std::size_t>(index(l))] / Rational(segments);
    Rational third = h / Rational(3);
    Rational sixth = h / Rational(6);
    Rational sum(0);
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
      sum += third * (a[i] * b[i] + a[i + 1] * b[i + 1]) +
             sixth * (a[i] * b[i + 1] + a[i + 1] * b[i]);
    }
    return sum;
  };

  // Classes with support on side l of a given copy, with their 0/1 trace
  // vectors along that side.
  struct SideTrace {
    int cls = 0;
    std::vector<Rational> trace;
  };
  auto side_traces = [&](const GluedSpace& space) {
    std::array<std::array<std::vector<SideTrace>, 7>, 3> out;
    for (EdgeLabel l : kEdgeLabels) {
      const auto& dofs = edge_dofs(mesh, l);
      for (int copy = 0; copy < 7; ++copy) {
        std::map<int, std::vector<Rational>> per_class;
        for (std::size_t i = 0; i < dofs.size(); ++i) {
          int cls = space.class_of[static_cast<std::size_t>(space.slot(copy, dofs[i]))];
          auto [it, inserted] = per_class.try_emplace(cls, std::vector<Rational>(dofs.size()));
          (void)inserted;
          it->second[i] = Rational(1);
        }
        for (auto& [cls, trace] : per_class) {
          out[static_cast<std::size_t>(index(l))][static_cast<std::size_t>(copy)].push_back(
              SideTrace{cls, std::move(trace)});
        }
      }
    }
    return out;
  };
  auto traces1 = side_traces(v1);
  auto traces2 = side_traces(v2);

  // Boundary identity: for every free pair (a, b), sum over sides and copies
  // of p_km (chi2_k - chi1_m) <trace_k(b), EdgeMass_l trace_m(a)> vanishes.
  std::map<std::pair<int, int>, RatVector> boundary_eqs;
  for (EdgeLabel l : kEdgeLabels) {
    for (int k = 0; k < 7; ++k) {
      for (int m = 0; m < 7; ++m) {
        int chi = (dst.is_boundary(k, l) ? 1 : 0) - (src.is_boundary(m, l) ? 1 : 0);
        if (chi == 0) continue;
        for (const SideTrace& tb : traces2[static_cast<std::size_t>(index(l))][static_cast<std::size_t>(k)]) {
          int fb = v2.free_index[static_cast<std::size_t>(tb.cls)];
          if (fb < 0) continue;
          for (const SideTrace& ta : traces1[static_cast<std::size_t>(index(l))][static_cast<std::size_t>(m)]) {
            int fa = v1.free_index[static_cast<std::size_t>(ta.cls)];
            if (fa < 0) continue;
            Rational dot = edge_mass_dot(l, tb.trace, ta.trace);
            if (dot.is_zero()) continue;
            auto [it, inserted] = boundary_eqs.try_emplace(std::pair<int, int>{fb, fa},
                                                           RatVector::Zero(49));
            (void)inserted;
            it->second(unknown_index(k, m)) += beta * Rational(chi) * dot;
          }
        }
      }
    }
  }
  for (auto& [key, coeffs] : boundary_eqs) {
    Constraint eq;
    eq.coefficients = std::move(coeffs);
    eq.kind = ConstraintKind::RobinBoundary;
    eq.generator_a = key.first;
    eq.generator_b = key.second;
    append_if_nonzero(sys.equations, std::move(eq));
  }
  return sys;
}

bool satisfies(const ConstraintSystem& sys, const Matrix7q& p) {
  for (const Constraint& eq : sys.equations) {
    Rational sum(0);
    for (int k = 0; k < 7; ++k) {
      for (int l = 0; l < 7; ++l) {
        const Rational& c = eq.coefficients(unknown_index(k, l));
        if (!c.is_zero()) sum += c * p(k, l);
      }
    }
    if (!sum.is_zero()) return false;
  }
  return true;
}

RatMatrix SolutionSpace::stacked() const {
  RatMatrix out(49, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t b = 0; b < basis.size(); ++b) {
    for (int k = 0; k < 7; ++k) {
      for (int l = 0; l < 7; ++l) {
        out(unknown_index(k, l), static_cast<Eigen::Index>(b)) = basis[b](k, l);
      }
    }
  }
  return out;
}

SolutionSpace solve_space(const ConstraintSystem& sys) {
  RatMatrix a = RatMatrix::Zero(static_cast<Eigen::Index>(std::max<std::size_t>(sys.equations.size(), 1)), 49);
  for (std::size_t r = 0; r < sys.equations.size(); ++r) {
    a.row(static_cast<Eigen::Index>(r)) = sys.equations[r].coefficients.transpose();
  }
  RatMatrix null = nullspace(a);

  SolutionSpace space;
  space.bc = sys.bc;
  space.dimension = static_cast<int>(null.cols());
  for (Eigen::Index c = 0; c < null.cols(); ++c) {
    Matrix7q m;
    for (int k = 0; k < 7; ++k) {
      for (int l = 0; l < 7; ++l) m(k, l) = null(unknown_index(k, l), c);
    }
    space.basis.push_back(m);
  }
  return space;
}

bool contains(const SolutionSpace& space, const Matrix7q& p) {
  RatVector v(49);
  for (int k = 0; k < 7; ++k) {
    for (int l = 0; l < 7; ++l) v(unknown_index(k, l)) = p(k, l);
  }
  return in_span(space.stacked(), v);
}

namespace {

// Sparse multivariate polynomial in at most 4 variables over Q.
struct MultiPoly {
  std::map<std::array<int, 4>, Rational> terms;

  bool is_zero() const { return terms.empty(); }

  void add(const std::array<int, 4>& exp, const Rational& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms.try_emplace(exp, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  static MultiPoly constant(const Rational& c) {
    MultiPoly p;
    p.add({0, 0, 0, 0}, c);
    return p;
  }

  static MultiPoly linear(const std::vector<Rational>& coeffs) {
    MultiPoly p;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      std::array<int, 4> exp = {0, 0, 0, 0};
      exp[i] = 1;
      p.add(exp, coeffs[i]);
    }
    return p;
  }

  MultiPoly operator+(const MultiPoly& rhs) const {
    MultiPoly out = *this;
    for (const auto& [exp, coeff] : rhs.terms) out.add(exp, coeff);
    return out;
  }

  MultiPoly operator*(const MultiPoly& rhs) const {
    MultiPoly out;
    for (const auto& [ea, ca] : terms) {
      for (const auto& [eb, cb] : rhs.terms) {
        std::array<int, 4> exp = {ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]};
        out.add(exp, ca * cb);
      }
    }
    return out;
  }

  Rational evaluate(const std::array<Rational, 4>& x) const {
    Rational sum(0);
    for (const auto& [exp, coeff] : terms) {
      Rational term = coeff;
      for (int v = 0; v < 4; ++v) {
        for (int e = 0; e < exp[static_cast<std::size_t>(v)]; ++e) term *= x[static_cast<std::size_t>(v)];
      }
      sum += term;
    }
    return sum;
  }
};

// det of a 7x7 matrix of linear forms by Laplace expansion with memoization
// over column subsets.
MultiPoly symbolic_determinant(const std::vector<Matrix7q>& basis) {
  const int d = static_cast<int>(basis.size());
  std::array<std::array<MultiPoly, 7>, 7> entry;
  for (int r = 0; r < 7; ++r) {
    for (int c = 0; c < 7; ++c) {
      std::vector<Rational> coeffs(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) coeffs[static_cast<std::size_t>(i)] = basis[static_cast<std::size_t>(i)](r, c);
      entry[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = MultiPoly::linear(coeffs);
    }
  }
  std::vector<MultiPoly> dp(1 << 7);
  dp[0] = MultiPoly::constant(Rational(1));
  for (int mask = 1; mask < (1 << 7); ++mask) {
    int row = __builtin_popcount(static_cast<unsigned>(mask)) - 1;
    MultiPoly acc;
    int position = 0;
    for (int col = 0; col < 7; ++col) {
      if (!(mask & (1 << col))) continue;
      const MultiPoly& minor = dp[static_cast<std::size_t>(mask ^ (1 << col))];
      MultiPoly term = entry[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] * minor;
      if ((row + position) % 2 == 1) {
        for (auto& [exp, coeff] : term.terms) coeff = -coeff;
      }
      acc = acc + term;
      ++position;
    }
    dp[static_cast<std::size_t>(mask)] = std::move(acc);
  }
  return dp[(1 << 7) - 1];
}

Matrix7q combine(const std::vector<Matrix7q>& basis, const std::array<Rational, 4>& c) {
  Matrix7q out;
  for (int r = 0; r < 7; ++r) {
    for (int col = 0; col < 7; ++col) {
      Rational sum(0);
      for (std::size_t i = 0; i < basis.size(); ++i) sum += c[i] * basis[i](r, col);
      out(r, col) = sum;
    }
  }
  return out;
}

Rational determinant7(const Matrix7q& m) {
  RatMatrix dyn(7, 7);
  for (int r = 0; r < 7; ++r)
    for (int c = 0; c < 7; ++c) dyn(r, c) = m(r, c);
  return exact_determinant(dyn);
}

}  // namespace

InvertibilityResult contains_invertible(const SolutionSpace& space) {
  InvertibilityResult result;

  for (int row = 0; row < 7; ++row) {
    bool zero_row = true;
    for (const Matrix7q& b : space.basis) {
      for (int col = 0; col < 7 && zero_row; ++col) {
        if (!b(row, col).is_zero()) zero_row = false;
      }
      if (!zero_row) break;
    }
    if (zero_row) {
      result.answer = InvertibilityResult::Answer::No;
      result.zero_row = row;
      result.certificate = "row " + std::to_string(row + 1) +
                           " vanishes on the whole space, so every member is singular";
      return result;
    }
  }

  if (space.dimension <= 4) {
    MultiPoly det = symbolic_determinant(space.basis);
    if (det.is_zero()) {
      result.answer = InvertibilityResult::Answer::No;
      result.certificate = "determinant of the general member vanishes identically";
      return result;
    }
    // A polynomial of degree <= 7 per variable cannot vanish on {0..7}^d.
    const int d = space.dimension;
    std::array<int, 4> c = {0, 0, 0, 0};
    while (true) {
      std::array<Rational, 4> x = {Rational(c[0]), Rational(c[1]), Rational(c[2]), Rational(c[3])};
      if (!det.evaluate(x).is_zero()) {
        Matrix7q witness = combine(space.basis, x);
        result.answer = InvertibilityResult::Answer::Yes;
        result.witness = witness;
        result.witness_determinant = determinant7(witness);
        result.certificate = "witness with nonzero exact determinant " +
                             result.witness_determinant.to_string();
        return result;
      }
      int i = 0;
      while (i < d && c[static_cast<std::size_t>(i)] == 7) {
        c[static_cast<std::size_t>(i)] = 0;
        ++i;
      }
      if (i == d) break;
      ++c[static_cast<std::size_t>(i)];
    }
    // Unreachable: a nonzero polynomial of degree <= 7 per variable has a
    // nonvanishing point on the grid.
    result.answer = InvertibilityResult::Answer::Inconclusive;
    result.certificate = "nonzero determinant polynomial but no witness found on the grid";
    return result;
  }

  // High-dimensional spaces: deterministic sampling only, never a forced "no".
  const int d = space.dimension;
  std::vector<std::vector<Rational>> samples;
  for (int i = 0; i < d; ++i) {
    std::vector<Rational> unit(static_cast<std::size_t>(d), Rational(0));
    unit[static_cast<std::size_t>(i)] = Rational(1);
    samples.push_back(std::move(unit));
  }
  samples.emplace_back(static_cast<std::size_t>(d), Rational(1));
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Rational> c(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      state = state * 6364136223846793005ull + 1442695040888963407ull;
      c[static_cast<std::size_t>(i)] = Rational(static_cast<long long>((state >> 33) % 7) - 3);
    }
    samples.push_back(std::move(c));
  }
  for (const auto& c : samples) {
    Matrix7q candidate;
    for (int r = 0; r < 7; ++r) {
      for (int col = 0; col < 7; ++col) {
        Rational sum(0);
        for (std::size_t i = 0; i < c.size(); ++i) sum += c[i] * space.basis[i](r, col);
        candidate(r, col) = sum;
      }
    }
    Rational det = determinant7(candidate);
    if (!det.is_zero()) {
      result.answer = InvertibilityResult::Answer::Yes;
      result.witness = candidate;
      result.witness_determinant = det;
      result.certificate = "witness with nonzero exact determinant " + det.to_string();
      return result;
    }
  }
  result.answer = InvertibilityResult::Answer::Inconclusive;
  result.certificate = "no vanishing row; all sampled members were singular";
  return result;
}

}  // namespace drums
