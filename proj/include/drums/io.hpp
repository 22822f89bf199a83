#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "drums/admissible.hpp"
#include "drums/geometry.hpp"
#include "drums/mesh.hpp"
#include "drums/spectra.hpp"
#include "drums/transplant.hpp"

namespace drums {

inline constexpr int kFormatVersion = 1;

/// {"vertices": [[x,y]...], "elements": [[i,j,k]...], "edges": {"G1": [...]}},
/// 0-based indices.
nlohmann::json mesh_to_json(const TriangleMesh& mesh);

/// {"glue_pairs": {"G1": [[1,2],[4,7]], ...}, "boundary_slots": ...} with copy
/// indices 1..7.
nlohmann::json layout_to_json(const DomainLayout& layout);

/// Accepts {"constant": [[[re,im],[re,im]],[[re,im],[re,im]]]} or
/// {"per_element": [...]}; plain numbers are taken as real entries.
CoefficientField coefficient_from_json(const nlohmann::json& j);
CoefficientField load_coefficient(const std::string& path);

/// 7x7 matrix as rational strings (row-major rows).
nlohmann::json matrix_to_json(const Matrix7q& m);
Matrix7q matrix_from_json(const nlohmann::json& j);
TransplantMatrix load_transplant_matrix(const std::string& path);

nlohmann::json solution_space_to_json(const SolutionSpace& space,
                                      const InvertibilityResult& invertibility);

/// Matrix-market coordinate format, 1-based indices, nonzeros only.
void write_matrix_market(std::ostream& os, const Eigen::MatrixXcd& m);
void write_matrix_market(std::ostream& os, const Eigen::MatrixXd& m);

/// Header "n,lambda_re,lambda_im,residual".
void write_spectrum_csv(std::ostream& os, const Spectrum& spectrum);

/// Header "n,lambda_1_re,lambda_1_im,lambda_2_re,lambda_2_im,abs_diff,rel_diff".
void write_compare_csv(std::ostream& os, const Spectrum& a, const Spectrum& b,
                       const CompareReport& report);

/// Shortest round-trip decimal representation, locale-independent.
std::string format_double(double v);

}  // namespace drums
