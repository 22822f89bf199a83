#include <doctest.h>

#include <sstream>

#include "drums/io.hpp"
#include "drums/transplant.hpp"

using namespace drums;

TEST_SUITE("io") {

TEST_CASE("mesh json shape") {
  auto tri = ReferenceTriangle::default_triangle();
  TriangleMesh mesh = refine_uniform(tri, 2);
  nlohmann::json j = mesh_to_json(mesh);
  CHECK(j["format_version"] == kFormatVersion);
  CHECK(j["vertices"].size() == 15);
  CHECK(j["elements"].size() == 16);
  for (const char* label : {"G1", "G2", "G3"}) CHECK(j["edges"][label].size() == 5);
  // 0-based indices
  int max_index = 0;
  for (const auto& e : j["elements"]) {
    for (const auto& v : e) max_index = std::max(max_index, v.get<int>());
  }
  CHECK(max_index == 14);
}

TEST_CASE("layout json uses one-based copies") {
  nlohmann::json j = layout_to_json(builtin_layout(DomainId::Omega2));
  CHECK(j["domain"] == "omega2");
  CHECK(j["glue_pairs"]["G1"] == nlohmann::json::parse("[[1,2],[3,6]]"));
  CHECK(j["boundary_slots"]["G1"] == nlohmann::json::parse("[4,5,7]"));
}

TEST_CASE("coefficient parsing") {
  nlohmann::json constant = nlohmann::json::parse(
      R"({"constant": [[[2,0],[1,-1]],[[0,0.5],[1.5,0]]]})");
  CoefficientField c = coefficient_from_json(constant);
  REQUIRE(c.is_constant());
  CHECK(c.entries[0](0, 1) == std::complex<double>(1.0, -1.0));
  CHECK(c.entries[0](1, 0) == std::complex<double>(0.0, 0.5));

  nlohmann::json per_element = nlohmann::json::parse(
      R"({"per_element": [[[1,0],[0,0]],[[0,0],[1,0]]], "ignored": 3})");
  // plain numbers are accepted as real entries
  per_element["per_element"][0] = nlohmann::json::parse("[[1,0],[0,1]]");
  CoefficientField p = coefficient_from_json(per_element);
  CHECK(p.entries.size() == 2);
  CHECK(p.entries[0](0, 0) == std::complex<double>(1.0, 0.0));

  CHECK_THROWS(coefficient_from_json(nlohmann::json::parse(R"({"nope": 1})")));
  CHECK_THROWS(coefficient_from_json(nlohmann::json::parse(R"({"constant": [[1,2],[3]]})")));
}

TEST_CASE("matrix json round trip keeps exact entries") {
  Matrix7q m = bhat_exact(Rational(2, 3), Rational(-5, 7)).entries;
  nlohmann::json j = matrix_to_json(m);
  Matrix7q back = matrix_from_json(j);
  for (int r = 0; r < 7; ++r) {
    for (int c = 0; c < 7; ++c) CHECK(back(r, c) == m(r, c));
  }
  CHECK_THROWS(matrix_from_json(nlohmann::json::parse("[[1,2,3]]")));
}

TEST_CASE("csv writers") {
  Spectrum s;
  s.count = 2;
  s.values = {{0.0, 0.0}, {2.5, -0.5}};
  s.residuals = {1e-16, 2e-16};
  std::ostringstream os;
  write_spectrum_csv(os, s);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "n,lambda_re,lambda_im,residual");
  std::getline(in, line);
  CHECK(line.rfind("0,0,0,", 0) == 0);
  std::getline(in, line);
  CHECK(line.rfind("1,2.5,-0.5,", 0) == 0);
  CHECK(std::stod(line.substr(line.rfind(',') + 1)) == 2e-16);

  CompareReport report;
  report.count = 1;
  report.abs_diff = {0.25};
  report.rel_diff = {0.1};
  Spectrum t = s;
  t.count = 1;
  std::ostringstream cs;
  write_compare_csv(cs, t, t, report);
  std::istringstream cin(cs.str());
  std::getline(cin, line);
  CHECK(line == "n,lambda_1_re,lambda_1_im,lambda_2_re,lambda_2_im,abs_diff,rel_diff");
  std::getline(cin, line);
  CHECK(line.rfind("0,0,0,0,0,0.25,", 0) == 0);
  CHECK(std::stod(line.substr(line.rfind(',') + 1)) == 0.1);
}

TEST_CASE("matrix market output") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 3);
  m(0, 0) = 1.25;
  m(1, 2) = -3.0;
  std::ostringstream os;
  write_matrix_market(os, m);
  CHECK(os.str() ==
        "%%MatrixMarket matrix coordinate real general\n2 3 2\n1 1 1.25\n2 3 -3\n");

  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(1, 1);
  c(0, 0) = {0.5, -1.0};
  std::ostringstream cos;
  write_matrix_market(cos, c);
  CHECK(cos.str() ==
        "%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 0.5 -1\n");
}

TEST_CASE("format_double round trips") {
  for (double v : {0.0, 1.0 / 3.0, -2.7182818284590452, 1e-300, 123456789.123456789}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

}  // TEST_SUITE
