#include <CLI11.hpp>

#include <cctype>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "drums/admissible.hpp"
#include "drums/assembly.hpp"
#include "drums/gluing.hpp"
#include "drums/io.hpp"
#include "drums/mesh.hpp"
#include "drums/spectra.hpp"
#include "drums/transplant.hpp"

namespace {

using namespace drums;

struct Options {
  std::string domain = "omega1";
  std::string bc = "neumann";
  double beta = std::numeric_limits<double>::quiet_NaN();
  int refine = 3;
  int num = 20;
  std::string coeff_path;
  std::string matrix = "B";
  std::string out_path;
  double tol = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> triangle;
  std::string emit_mesh;
  std::string emit_operators;
  bool check_overlap = false;
};

DomainId parse_domain(const std::string& text) {
  if (text == "omega1") return DomainId::Omega1;
  if (text == "omega2") return DomainId::Omega2;
  throw CLI::ValidationError("--domain must be omega1 or omega2");
}

BoundaryCondition parse_bc(const std::string& text) {
  if (text == "neumann") return BoundaryCondition::Neumann;
  if (text == "dirichlet") return BoundaryCondition::Dirichlet;
  if (text == "robin") return BoundaryCondition::Robin;
  throw CLI::ValidationError("--bc must be neumann, dirichlet or robin");
}

ReferenceTriangle make_triangle(const Options& opt) {
  if (opt.triangle.empty()) return ReferenceTriangle::default_triangle();
  if (opt.triangle.size() != 6) {
    throw CLI::ValidationError("--triangle needs six coordinates x1,y1,x2,y2,x3,y3");
  }
  return ReferenceTriangle({opt.triangle[0], opt.triangle[1]}, {opt.triangle[2], opt.triangle[3]},
                           {opt.triangle[4], opt.triangle[5]});
}

CoefficientField make_coefficient(const Options& opt) {
  if (opt.coeff_path.empty()) return CoefficientField::identity();
  return load_coefficient(opt.coeff_path);
}

FormSpec make_form(const Options& opt, CoefficientField c) {
  BoundaryCondition bc = parse_bc(opt.bc);
  switch (bc) {
    case BoundaryCondition::Neumann: return FormSpec::neumann(std::move(c));
    case BoundaryCondition::Dirichlet: return FormSpec::dirichlet(std::move(c));
    case BoundaryCondition::Robin:
      return FormSpec::robin(std::isnan(opt.beta) ? 1.0 : opt.beta, std::move(c));
  }
  throw CLI::ValidationError("unknown boundary condition");
}

void maybe_check_overlap(const Options& opt, const ReferenceTriangle& tri,
                         const std::vector<DomainId>& domains) {
  if (!opt.check_overlap) return;
  for (DomainId id : domains) {
    auto placements = planar_placements(builtin_layout(id), tri);
    OverlapReport report = check_embedding(placements, tri);
    if (!report.empty()) {
      std::string pairs;
      for (const auto& [a, b] : report.overlapping_pairs) {
        pairs += " (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")";
      }
      throw std::runtime_error("overlapping placements for " + to_string(id) + ":" + pairs);
    }
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

std::ostream& out_or_stdout(const Options& opt, std::optional<std::ofstream>& file) {
  if (opt.out_path.empty()) return std::cout;
  file.emplace(opt.out_path);
  if (!*file) throw std::runtime_error("cannot open output file: " + opt.out_path);
  return *file;
}

GluedOperatorPair build_pair(const Options& opt, DomainId id, const ReferenceTriangle& tri,
                             const FormSpec& form) {
  TriangleMesh mesh = refine_uniform(tri, opt.refine);
  if (!opt.emit_mesh.empty()) write_text(opt.emit_mesh, mesh_to_json(mesh).dump(2) + "\n");
  GluedSpace space = build_glued_space(builtin_layout(id), mesh, form.bc);
  if (space.free_dim == 0) {
    std::string bc_name = to_string(form.bc);
    bc_name[0] = static_cast<char>(std::toupper(bc_name[0]));
    throw std::runtime_error("empty " + bc_name + " space at r=" + std::to_string(opt.refine));
  }
  AssembledBlock block = assemble_block(mesh, form.coefficient);
  return assemble_glued(space, block, form);
}

Spectrum solve_spectrum(const GluedOperatorPair& pair, int num) {
  if (num > pair.free_dim) {
    throw std::runtime_error("requested " + std::to_string(num) + " eigenvalues but the space has " +
                             std::to_string(pair.free_dim));
  }
  bool hermitian = pair.form.coefficient.is_hermitian(0.0);
  return hermitian ? sym_eigs(pair, num) : nonsym_eigs(pair, num);
}

int cmd_spectrum(const Options& opt) {
  ReferenceTriangle tri = make_triangle(opt);
  maybe_check_overlap(opt, tri, {parse_domain(opt.domain)});
  FormSpec form = make_form(opt, make_coefficient(opt));
  GluedOperatorPair pair = build_pair(opt, parse_domain(opt.domain), tri, form);
  if (!opt.emit_operators.empty()) {
    std::ofstream k_out(opt.emit_operators + ".K.mtx");
    std::ofstream m_out(opt.emit_operators + ".M.mtx");
    if (!k_out || !m_out) throw std::runtime_error("cannot open operator output files");
    write_matrix_market(k_out, pair.stiffness);
    write_matrix_market(m_out, pair.mass);
  }
  Spectrum spectrum = solve_spectrum(pair, opt.num);
  std::optional<std::ofstream> file;
  write_spectrum_csv(out_or_stdout(opt, file), spectrum);
  return 0;
}

int cmd_compare(const Options& opt) {
  ReferenceTriangle tri = make_triangle(opt);
  maybe_check_overlap(opt, tri, {DomainId::Omega1, DomainId::Omega2});
  FormSpec form = make_form(opt, make_coefficient(opt));
  GluedOperatorPair pair1 = build_pair(opt, DomainId::Omega1, tri, form);
  GluedOperatorPair pair2 = build_pair(opt, DomainId::Omega2, tri, form);
  Spectrum s1 = solve_spectrum(pair1, opt.num);
  Spectrum s2 = solve_spectrum(pair2, opt.num);

  double tol = std::isnan(opt.tol) ? 1e-6 : opt.tol;
  CompareReport report = compare(s1, s2, tol);
  const bool informational = form.bc == BoundaryCondition::Robin;

  nlohmann::json summary;
  summary["format_version"] = kFormatVersion;
  summary["command"] = "compare";
  summary["bc"] = to_string(form.bc);
  summary["beta"] = form.beta;
  summary["refine"] = opt.refine;
  summary["count"] = report.count;
  summary["max_abs_diff"] = report.max_abs_diff;
  summary["max_rel_diff"] = report.max_rel_diff;
  summary["tolerance"] = report.tolerance;
  summary["informational"] = informational;
  summary["pass"] = informational ? true : report.pass;

  if (opt.out_path.empty()) {
    write_compare_csv(std::cout, s1, s2, report);
    std::cerr << summary.dump(2) << "\n";
  } else {
    std::optional<std::ofstream> file;
    write_compare_csv(out_or_stdout(opt, file), s1, s2, report);
    std::cout << summary.dump(2) << "\n";
  }
  return informational || report.pass ? 0 : 1;
}

int cmd_verify(const Options& opt) {
  ReferenceTriangle tri = make_triangle(opt);
  maybe_check_overlap(opt, tri, {DomainId::Omega1, DomainId::Omega2});
  FormSpec form = make_form(opt, make_coefficient(opt));
  TriangleMesh mesh = refine_uniform(tri, opt.refine);
  GluedSpace src = build_glued_space(builtin_layout(DomainId::Omega1), mesh, form.bc);
  GluedSpace dst = build_glued_space(builtin_layout(DomainId::Omega2), mesh, form.bc);
  AssembledBlock block = assemble_block(mesh, form.coefficient);

  TransplantMatrix p = [&]() {
    if (opt.matrix == "BHAT") return unitary_bhat().matrix;
    try {
      return named_matrix(parse_matrix_name(opt.matrix));
    } catch (const std::invalid_argument&) {
      return load_transplant_matrix(opt.matrix);
    }
  }();

  double tol = std::isnan(opt.tol) ? 1e-12 : opt.tol;
  nlohmann::json checks;
  bool pass = true;

  Rational forward = subspace_residual_exact(p, src, dst);
  Rational adjoint = subspace_residual_exact(transposed(p), dst, src);
  checks["subspace_forward"] = {{"residual", forward.to_double()},
                                {"exact", forward.to_string()},
                                {"pass", forward.to_double() <= tol}};
  checks["subspace_adjoint"] = {{"residual", adjoint.to_double()},
                                {"exact", adjoint.to_string()},
                                {"pass", adjoint.to_double() <= tol}};
  pass = forward.to_double() <= tol && adjoint.to_double() <= tol;

  if (pass) {
    InducedMap phi = induced_map(p, src, dst, std::max(tol, 1e-12));
    checks["induced_map"] = {{"src_dim", phi.src_dim},
                             {"dst_dim", phi.dst_dim},
                             {"smallest_singular_value", phi.smallest_singular_value},
                             {"invertible", phi.smallest_singular_value > 1e-8},
                             {"pass", true}};
    IntertwineResidual rho = intertwine_residual(p, src, dst, block, form);
    bool rho_pass = rho.rho_k <= std::max(tol, 1e-13) && rho.rho_m <= std::max(tol, 1e-13);
    checks["intertwine"] = {{"rho_k", rho.rho_k}, {"rho_m", rho.rho_m}, {"pass", rho_pass}};
    pass = pass && rho_pass;
  }

  nlohmann::json j;
  j["format_version"] = kFormatVersion;
  j["command"] = "verify";
  j["matrix"] = p.name;
  j["matrix_entries"] = matrix_to_json(p.entries);
  j["bc"] = to_string(form.bc);
  j["beta"] = form.beta;
  j["refine"] = opt.refine;
  j["tolerance"] = tol;
  j["checks"] = std::move(checks);
  j["pass"] = pass;

  if (opt.out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_text(opt.out_path, j.dump(2) + "\n");
    std::cout << (pass ? "pass" : "fail") << "\n";
  }
  return pass ? 0 : 1;
}

int cmd_admissible(const Options& opt) {
  AdmissibleBc bc = parse_admissible_bc(opt.bc);
  Rational beta = std::isnan(opt.beta) ? Rational(1) : Rational::from_double(opt.beta);
  ConstraintSystem sys = build_constraints(bc, beta);
  SolutionSpace space = solve_space(sys);
  InvertibilityResult invertibility = contains_invertible(space);

  nlohmann::json j = solution_space_to_json(space, invertibility);
  j["equations"] = sys.equations.size();
  j["contains"] = {{"B", contains(space, named_matrix(MatrixName::B).entries)},
                   {"BD", contains(space, named_matrix(MatrixName::BD).entries)},
                   {"ONES", contains(space, named_matrix(MatrixName::Ones).entries)}};

  if (opt.out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_text(opt.out_path, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_layout(const Options& opt) {
  nlohmann::json j = layout_to_json(builtin_layout(parse_domain(opt.domain)));
  if (opt.out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_text(opt.out_path, j.dump(2) + "\n");
  }
  return 0;
}

void add_common(CLI::App* cmd, Options& opt, bool with_domain, bool with_bc) {
  if (with_domain) cmd->add_option("--domain", opt.domain, "omega1 or omega2");
  if (with_bc) cmd->add_option("--bc", opt.bc, "boundary condition");
  cmd->add_option("--beta", opt.beta, "Robin boundary coefficient (default 1 for robin)");
  cmd->add_option("--refine", opt.refine, "uniform refinement level");
  cmd->add_option("--num", opt.num, "number of eigenvalues");
  cmd->add_option("--coeff", opt.coeff_path, "coefficient JSON file");
  cmd->add_option("--out", opt.out_path, "output file");
  cmd->add_option("--tol", opt.tol, "tolerance override");
  cmd->add_option("--triangle", opt.triangle, "reference triangle x1,y1,x2,y2,x3,y3")
      ->delimiter(',')
      ->expected(6);
  cmd->add_option("--emit-mesh", opt.emit_mesh, "write the reference mesh as JSON");
  cmd->add_option("--emit-operators", opt.emit_operators,
                  "write the glued K and M as matrix-market files with this prefix");
  cmd->add_flag("--check-overlap", opt.check_overlap, "validate the planar embedding first");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"glued-domain isospectrality laboratory"};
  app.require_subcommand(1);

  Options spectrum_opt, compare_opt, verify_opt, admissible_opt, layout_opt;
  verify_opt.refine = 2;

  CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues of one glued domain");
  add_common(spectrum, spectrum_opt, true, true);

  CLI::App* cmp = app.add_subcommand("compare", "eigenvalue comparison of the two domains");
  add_common(cmp, compare_opt, false, true);

  CLI::App* verify = app.add_subcommand("verify", "transplantation checks for a matrix");
  add_common(verify, verify_opt, false, true);
  verify->add_option("--matrix", verify_opt.matrix, "B, BD, BHAT, ONES, IDENTITY or a JSON file");

  CLI::App* admissible = app.add_subcommand("admissible", "exact admissible-matrix space");
  admissible->add_option("--bc", admissible_opt.bc, "neumann, dirichlet, robin or joint");
  admissible->add_option("--beta", admissible_opt.beta,
                         "Robin coefficient (scales the boundary equations)");
  admissible->add_option("--out", admissible_opt.out_path, "output file");

  CLI::App* layout = app.add_subcommand("layout", "gluing tables of a domain as JSON");
  layout->add_option("--domain", layout_opt.domain, "omega1 or omega2");
  layout->add_option("--out", layout_opt.out_path, "output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (spectrum->parsed()) return cmd_spectrum(spectrum_opt);
    if (cmp->parsed()) return cmd_compare(compare_opt);
    if (verify->parsed()) return cmd_verify(verify_opt);
    if (admissible->parsed()) return cmd_admissible(admissible_opt);
    if (layout->parsed()) return cmd_layout(layout_opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
