#pragma once

#include <Eigen/Core>

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "drums/bigint.hpp"

namespace drums {

/// Exact rational scalar over BigInt, always normalized: positive denominator,
/// gcd(num, den) = 1, zero stored as 0/1. Usable as an Eigen scalar type.
class Rational {
public:
  Rational() : num_(0), den_(1) {}
  Rational(long long v) : num_(v), den_(1) {}
  Rational(long long num, long long den) : num_(num), den_(den) { normalize(); }
  Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  /// Exact conversion: every finite double is a dyadic rational.
  static Rational from_double(double v);
  /// Parses "a" or "a/b" with optional signs.
  static std::optional<Rational> parse(std::string_view text);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  int signum() const { return num_.signum(); }
  bool is_integer() const { return den_.is_one(); }

  Rational operator-() const;
  Rational operator+(const Rational& rhs) const;
  Rational operator-(const Rational& rhs) const;
  Rational operator*(const Rational& rhs) const;
  Rational operator/(const Rational& rhs) const;

  Rational& operator+=(const Rational& rhs) { return *this = *this + rhs; }
  Rational& operator-=(const Rational& rhs) { return *this = *this - rhs; }
  Rational& operator*=(const Rational& rhs) { return *this = *this * rhs; }
  Rational& operator/=(const Rational& rhs) { return *this = *this / rhs; }

  bool operator==(const Rational& rhs) const { return num_ == rhs.num_ && den_ == rhs.den_; }
  bool operator!=(const Rational& rhs) const { return !(*this == rhs); }
  bool operator<(const Rational& rhs) const { return compare(rhs) < 0; }
  bool operator>(const Rational& rhs) const { return compare(rhs) > 0; }
  bool operator<=(const Rational& rhs) const { return compare(rhs) <= 0; }
  bool operator>=(const Rational& rhs) const { return compare(rhs) >= 0; }
  int compare(const Rational& rhs) const;

  double to_double() const;
  /// "a" for integers, "a/b" otherwise.
  std::string to_string() const;

private:
  BigInt num_;
  BigInt den_;
  void normalize();
};

inline Rational abs(const Rational& v) { return v.signum() < 0 ? -v : v; }

std::ostream& operator<<(std::ostream& os, const Rational& v);

using RatMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using Matrix7q = Eigen::Matrix<Rational, 7, 7>;
using Vector7q = Eigen::Matrix<Rational, 7, 1>;

/// Reduced row echelon form in place; returns the pivot column of each pivot
/// row in order. Pivot choice is the first nonzero entry, so the result is
/// deterministic.
std::vector<int> rref_in_place(RatMatrix& m);

/// Basis of the nullspace of m (columns of the result), one vector per free
/// column in increasing column order, with the free coordinate set to 1.
RatMatrix nullspace(const RatMatrix& m);

/// Exact rank via elimination.
int rank(RatMatrix m);

/// Exact inverse by Gauss-Jordan; empty if singular.
std::optional<RatMatrix> exact_inverse(const RatMatrix& m);

/// Exact determinant by elimination.
Rational exact_determinant(RatMatrix m);

/// True if v lies in the column span of basis.
bool in_span(const RatMatrix& basis, const RatVector& v);

/// True if the column spans coincide.
bool same_span(const RatMatrix& a, const RatMatrix& b);

}  // namespace drums

namespace Eigen {

template <>
struct NumTraits<drums::Rational> : GenericNumTraits<drums::Rational> {
  typedef drums::Rational Real;
  typedef drums::Rational NonInteger;
  typedef drums::Rational Nested;

  static inline Real epsilon() { return drums::Rational(0); }
  static inline Real dummy_precision() { return drums::Rational(0); }
  static inline int digits10() { return 0; }

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 200,
    MulCost = 200
  };
};

}  // namespace Eigen
