// Test-only oracles, independent of the library code paths they check.
#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace oracles {

// Gradient of the P1 nodal function of vertex i, from the coefficients of the
// affine function solving the 3x3 interpolation system (the library uses the
// rotated-edge formula instead).
inline Eigen::Vector2d hat_gradient(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                                    const Eigen::Vector2d& c, int i) {
  Eigen::Matrix3d vandermonde;
  vandermonde << 1, a.x(), a.y(), 1, b.x(), b.y(), 1, c.x(), c.y();
  Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
  rhs(i) = 1.0;
  Eigen::Vector3d coeff = vandermonde.colPivHouseholderQr().solve(rhs);
  return {coeff(1), coeff(2)};
}

inline double triangle_area(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                            const Eigen::Vector2d& c) {
  return 0.5 * std::abs((b - a).x() * (c - a).y() - (b - a).y() * (c - a).x());
}

// Local stiffness by one-point quadrature (exact: the integrand is constant).
inline Eigen::Matrix3cd local_stiffness(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                                        const Eigen::Vector2d& c, const Eigen::Matrix2cd& coeff) {
  double area = triangle_area(a, b, c);
  Eigen::Matrix3cd local;
  for (int p = 0; p < 3; ++p) {
    for (int q = 0; q < 3; ++q) {
      Eigen::Vector2d gp = hat_gradient(a, b, c, p);
      Eigen::Vector2d gq = hat_gradient(a, b, c, q);
      std::complex<double> sum = 0.0;
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) sum += coeff(i, j) * gq(i) * gp(j);
      }
      local(p, q) = area * sum;
    }
  }
  return local;
}

// Exact integral of lambda_1^p lambda_2^q lambda_3^r over a triangle:
// 2A p! q! r! / (p + q + r + 2)!.
inline double barycentric_integral(double area, int p, int q, int r) {
  auto factorial = [](int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  return 2.0 * area * factorial(p) * factorial(q) * factorial(r) / factorial(p + q + r + 2);
}

// 1D mass of two linear hats on a segment of length h by Simpson's rule
// (exact for quadratics).
inline Eigen::Matrix2d segment_mass(double h) {
  auto simpson = [h](auto f) { return h / 6.0 * (f(0.0) + 4.0 * f(0.5) + f(1.0)); };
  Eigen::Matrix2d m;
  m(0, 0) = simpson([](double t) { return (1 - t) * (1 - t); });
  m(0, 1) = simpson([](double t) { return (1 - t) * t; });
  m(1, 0) = m(0, 1);
  m(1, 1) = simpson([](double t) { return t * t; });
  return m;
}

// Smaller eigenvalue of a 2x2 Hermitian matrix, closed form.
inline double min_eig_2x2_hermitian(const Eigen::Matrix2cd& h) {
  double a = h(0, 0).real();
  double d = h(1, 1).real();
  double off = std::abs(h(0, 1));
  return 0.5 * (a + d) - std::hypot(0.5 * (a - d), off);
}

// --- planar overlap oracle: edge crossings and strict containment ---

inline double orient(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                     const Eigen::Vector2d& c) {
  return (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
}

inline bool segments_cross(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2,
                           const Eigen::Vector2d& q1, const Eigen::Vector2d& q2, double tol) {
  double o1 = orient(p1, p2, q1);
  double o2 = orient(p1, p2, q2);
  double o3 = orient(q1, q2, p1);
  double o4 = orient(q1, q2, p2);
  return ((o1 > tol && o2 < -tol) || (o1 < -tol && o2 > tol)) &&
         ((o3 > tol && o4 < -tol) || (o3 < -tol && o4 > tol));
}

inline bool strictly_inside(const std::array<Eigen::Vector2d, 3>& tri, const Eigen::Vector2d& p,
                            double tol) {
  double s = orient(tri[0], tri[1], tri[2]) > 0 ? 1.0 : -1.0;
  return s * orient(tri[0], tri[1], p) > tol && s * orient(tri[1], tri[2], p) > tol &&
         s * orient(tri[2], tri[0], p) > tol;
}

// Interiors of two triangles intersect iff an edge pair properly crosses or a
// vertex of one lies strictly inside the other (or they coincide).
inline bool interiors_overlap(const std::array<Eigen::Vector2d, 3>& a,
                              const std::array<Eigen::Vector2d, 3>& b, double tol) {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (segments_cross(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>((i + 1) % 3)],
                         b[static_cast<std::size_t>(j)], b[static_cast<std::size_t>((j + 1) % 3)],
                         tol)) {
        return true;
      }
    }
  }
  Eigen::Vector2d ca = (a[0] + a[1] + a[2]) / 3.0;
  Eigen::Vector2d cb = (b[0] + b[1] + b[2]) / 3.0;
  if (strictly_inside(b, ca, tol) || strictly_inside(a, cb, tol)) return true;
  for (int i = 0; i < 3; ++i) {
    if (strictly_inside(b, a[static_cast<std::size_t>(i)], tol) ||
        strictly_inside(a, b[static_cast<std::size_t>(i)], tol)) {
      return true;
    }
  }
  return false;
}

// Signed integer determinant by cofactor expansion; entries must stay small
// enough for int64 (true for 7x7 sign matrices).
inline long long int_determinant(const std::vector<std::vector<long long>>& m) {
  std::size_t n = m.size();
  if (n == 1) return m[0][0];
  long long det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    std::vector<std::vector<long long>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<long long> row;
      for (std::size_t cc = 0; cc < n; ++cc) {
        if (cc != c) row.push_back(m[r][cc]);
      }
      minor.push_back(std::move(row));
    }
    long long term = m[0][c] * int_determinant(minor);
    det += (c % 2 == 0) ? term : -term;
  }
  return det;
}

// Deterministic pseudo-random stream for property tests.
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  long long next_int(long long lo, long long hi) {
    return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace oracles
