#include "drums/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace drums {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

nlohmann::json mesh_to_json(const TriangleMesh& mesh) {
  nlohmann::json j;
  j["format_version"] = kFormatVersion;
  j["level"] = mesh.level;
  auto& vertices = j["vertices"] = nlohmann::json::array();
  for (const auto& v : mesh.vertices) vertices.push_back({v.x(), v.y()});
  auto& elements = j["elements"] = nlohmann::json::array();
  for (const auto& e : mesh.elements) elements.push_back({e[0], e[1], e[2]});
  auto& edges = j["edges"] = nlohmann::json::object();
  for (EdgeLabel l : kEdgeLabels) {
    edges[to_string(l)] = edge_dofs(mesh, l);
  }
  return j;
}

nlohmann::json layout_to_json(const DomainLayout& layout) {
  nlohmann::json j;
  j["format_version"] = kFormatVersion;
  j["domain"] = to_string(layout.domain_id);
  auto& pairs = j["glue_pairs"] = nlohmann::json::object();
  auto& boundary = j["boundary_slots"] = nlohmann::json::object();
  for (EdgeLabel l : kEdgeLabels) {
    auto& lp = pairs[to_string(l)] = nlohmann::json::array();
    for (const auto& [a, b] : layout.pairs(l)) lp.push_back({a + 1, b + 1});
    auto& lb = boundary[to_string(l)] = nlohmann::json::array();
    for (int b : layout.boundary(l)) lb.push_back(b + 1);
  }
  return j;
}

namespace {

std::complex<double> complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  throw std::invalid_argument("coefficient entry must be a number or [re, im]");
}

Eigen::Matrix2cd matrix2_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
      !j[1].is_array() || j[1].size() != 2) {
    throw std::invalid_argument("coefficient matrix must be 2x2");
  }
  Eigen::Matrix2cd m;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      m(r, c) = complex_from_json(j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
    }
  }
  return m;
}

}  // namespace

CoefficientField coefficient_from_json(const nlohmann::json& j) {
  if (j.contains("constant")) return CoefficientField::constant(matrix2_from_json(j["constant"]));
  if (j.contains("per_element")) {
    std::vector<Eigen::Matrix2cd> entries;
    for (const auto& e : j["per_element"]) entries.push_back(matrix2_from_json(e));
    return CoefficientField::per_element(std::move(entries));
  }
  throw std::invalid_argument("coefficient file needs a \"constant\" or \"per_element\" key");
}

CoefficientField load_coefficient(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open coefficient file: " + path);
  nlohmann::json j;
  in >> j;
  return coefficient_from_json(j);
}

nlohmann::json matrix_to_json(const Matrix7q& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < 7; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < 7; ++c) row.push_back(m(r, c).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix7q matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 7) throw std::invalid_argument("matrix must have 7 rows");
  Matrix7q m;
  for (int r = 0; r < 7; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != 7) throw std::invalid_argument("matrix rows must have 7 entries");
    for (int c = 0; c < 7; ++c) {
      const auto& entry = row[static_cast<std::size_t>(c)];
      if (entry.is_string()) {
        auto parsed = Rational::parse(entry.get<std::string>());
        if (!parsed) throw std::invalid_argument("bad rational entry: " + entry.get<std::string>());
        m(r, c) = *parsed;
      } else if (entry.is_number_integer()) {
        m(r, c) = Rational(entry.get<long long>());
      } else if (entry.is_number()) {
        m(r, c) = Rational::from_double(entry.get<double>());
      } else {
        throw std::invalid_argument("matrix entries must be numbers or rational strings");
      }
    }
  }
  return m;
}

TransplantMatrix load_transplant_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file: " + path);
  nlohmann::json j;
  in >> j;
  if (j.is_object() && j.contains("entries")) {
    return TransplantMatrix::from_exact(matrix_from_json(j["entries"]),
                                        j.value("name", std::string("custom")));
  }
  return TransplantMatrix::from_exact(matrix_from_json(j), "custom");
}

nlohmann::json solution_space_to_json(const SolutionSpace& space,
                                      const InvertibilityResult& invertibility) {
  nlohmann::json j;
  j["format_version"] = kFormatVersion;
  j["bc"] = to_string(space.bc);
  j["dimension"] = space.dimension;
  auto& basis = j["basis"] = nlohmann::json::array();
  for (const auto& b : space.basis) basis.push_back(matrix_to_json(b));

  nlohmann::json inv;
  switch (invertibility.answer) {
    case InvertibilityResult::Answer::Yes: inv["answer"] = "yes"; break;
    case InvertibilityResult::Answer::No: inv["answer"] = "no"; break;
    case InvertibilityResult::Answer::Inconclusive: inv["answer"] = "inconclusive"; break;
  }
  inv["certificate"] = invertibility.certificate;
  if (invertibility.zero_row >= 0) inv["zero_row"] = invertibility.zero_row + 1;
  if (invertibility.witness) {
    inv["witness"] = matrix_to_json(*invertibility.witness);
    inv["witness_determinant"] = invertibility.witness_determinant.to_string();
  }
  j["invertible"] = std::move(inv);
  return j;
}

void write_matrix_market(std::ostream& os, const Eigen::MatrixXcd& m) {
  std::vector<std::tuple<Eigen::Index, Eigen::Index, std::complex<double>>> entries;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (m(r, c) != 0.0) entries.emplace_back(r, c, m(r, c));
    }
  }
  os << "%%MatrixMarket matrix coordinate complex general\n";
  os << m.rows() << ' ' << m.cols() << ' ' << entries.size() << '\n';
  for (const auto& [r, c, v] : entries) {
    os << r + 1 << ' ' << c + 1 << ' ' << format_double(v.real()) << ' '
       << format_double(v.imag()) << '\n';
  }
}

void write_matrix_market(std::ostream& os, const Eigen::MatrixXd& m) {
  std::vector<std::tuple<Eigen::Index, Eigen::Index, double>> entries;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (m(r, c) != 0.0) entries.emplace_back(r, c, m(r, c));
    }
  }
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << m.rows() << ' ' << m.cols() << ' ' << entries.size() << '\n';
  for (const auto& [r, c, v] : entries) {
    os << r + 1 << ' ' << c + 1 << ' ' << format_double(v) << '\n';
  }
}

void write_spectrum_csv(std::ostream& os, const Spectrum& spectrum) {
  os << "n,lambda_re,lambda_im,residual\n";
  for (int i = 0; i < spectrum.count; ++i) {
    const auto& v = spectrum.values[static_cast<std::size_t>(i)];
    os << i << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << ','
       << format_double(spectrum.residuals[static_cast<std::size_t>(i)]) << '\n';
  }
}

void write_compare_csv(std::ostream& os, const Spectrum& a, const Spectrum& b,
                       const CompareReport& report) {
  os << "n,lambda_1_re,lambda_1_im,lambda_2_re,lambda_2_im,abs_diff,rel_diff\n";
  for (int i = 0; i < report.count; ++i) {
    const auto& va = a.values[static_cast<std::size_t>(i)];
    const auto& vb = b.values[static_cast<std::size_t>(i)];
    os << i << ',' << format_double(va.real()) << ',' << format_double(va.imag()) << ','
       << format_double(vb.real()) << ',' << format_double(vb.imag()) << ','
       << format_double(report.abs_diff[static_cast<std::size_t>(i)]) << ','
       << format_double(report.rel_diff[static_cast<std::size_t>(i)]) << '\n';
  }
}

}  // namespace drums
