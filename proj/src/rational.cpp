#include "drums/rational.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace drums {

void Rational::normalize() {
  if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
  if (num_.is_zero()) {
    den_ = BigInt(1);
    return;
  }
  if (den_.signum() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  BigInt g = BigInt::gcd(num_, den_);
  if (!g.is_one()) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
}

Rational Rational::from_double(double v) {
  if (!std::isfinite(v)) throw std::domain_error("Rational: non-finite double");
  if (v == 0.0) return Rational();
  int exp = 0;
  double mantissa = std::frexp(v, &exp);  // v = mantissa * 2^exp, |mantissa| in [0.5, 1)
  long long scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exp -= 53;
  BigInt num(scaled);
  if (exp >= 0) return Rational(num.shifted_left(static_cast<unsigned>(exp)), BigInt(1));
  return Rational(std::move(num), BigInt(1).shifted_left(static_cast<unsigned>(-exp)));
}

std::optional<Rational> Rational::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) return Rational(BigInt::from_string(text), BigInt(1));
    BigInt num = BigInt::from_string(text.substr(0, slash));
    BigInt den = BigInt::from_string(text.substr(slash + 1));
    if (den.is_zero()) return std::nullopt;
    return Rational(std::move(num), std::move(den));
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

Rational Rational::operator-() const {
  Rational out = *this;
  out.num_ = -out.num_;
  return out;
}

Rational Rational::operator+(const Rational& rhs) const {
  return Rational(num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_);
}

Rational Rational::operator-(const Rational& rhs) const {
  return Rational(num_ * rhs.den_ - rhs.num_ * den_, den_ * rhs.den_);
}

Rational Rational::operator*(const Rational& rhs) const {
  return Rational(num_ * rhs.num_, den_ * rhs.den_);
}

Rational Rational::operator/(const Rational& rhs) const {
  if (rhs.is_zero()) throw std::domain_error("Rational: division by zero");
  return Rational(num_ * rhs.den_, den_ * rhs.num_);
}

int Rational::compare(const Rational& rhs) const {
  return (num_ * rhs.den_).compare(rhs.num_ * den_);
}

double Rational::to_double() const {
  return static_cast<double>(num_.to_long_double() / den_.to_long_double());
}

std::string Rational::to_string() const {
  if (is_integer()) return num_.to_string();
  return num_.to_string() + "/" + den_.to_string();
}

std::ostream& operator<<(std::ostream& os, const Rational& v) { return os << v.to_string(); }

std::vector<int> rref_in_place(RatMatrix& m) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  std::vector<int> pivot_cols;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = row; r < rows; ++r) {
      if (!m(r, col).is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    Rational inv = Rational(1) / m(row, col);
    for (Eigen::Index c = col; c < cols; ++c) m(row, c) *= inv;
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      Rational factor = m(r, col);
      for (Eigen::Index c = col; c < cols; ++c) m(r, c) -= factor * m(row, c);
    }
    pivot_cols.push_back(static_cast<int>(col));
    ++row;
  }
  return pivot_cols;
}

RatMatrix nullspace(const RatMatrix& m) {
  RatMatrix work = m;
  std::vector<int> pivots = rref_in_place(work);
  const Eigen::Index cols = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;

  const Eigen::Index dim = cols - static_cast<Eigen::Index>(pivots.size());
  RatMatrix basis = RatMatrix::Zero(cols, dim);
  Eigen::Index k = 0;
  for (Eigen::Index free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[static_cast<std::size_t>(free_col)]) continue;
    basis(free_col, k) = Rational(1);
    for (std::size_t pr = 0; pr < pivots.size(); ++pr) {
      basis(pivots[pr], k) = -work(static_cast<Eigen::Index>(pr), free_col);
    }
    ++k;
  }
  return basis;
}

int rank(RatMatrix m) { return static_cast<int>(rref_in_place(m).size()); }

std::optional<RatMatrix> exact_inverse(const RatMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("exact_inverse: matrix not square");
  RatMatrix work(n, 2 * n);
  work.leftCols(n) = m;
  work.rightCols(n) = RatMatrix::Identity(n, n);
  std::vector<int> pivots = rref_in_place(work);
  // Invertible iff every pivot lands in the left block, i.e. the pivot
  // columns are exactly 0..n-1.
  if (static_cast<Eigen::Index>(pivots.size()) < n || pivots[static_cast<std::size_t>(n) - 1] != n - 1) {
    return std::nullopt;
  }
  return RatMatrix(work.rightCols(n));
}

Rational exact_determinant(RatMatrix m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("exact_determinant: matrix not square");
  Rational det(1);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = col; r < n; ++r) {
      if (!m(r, col).is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return Rational(0);
    if (pivot != col) {
      m.row(pivot).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    Rational inv = Rational(1) / m(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (m(r, col).is_zero()) continue;
      Rational factor = m(r, col) * inv;
      for (Eigen::Index c = col; c < n; ++c) m(r, c) -= factor * m(col, c);
    }
  }
  return det;
}

bool in_span(const RatMatrix& basis, const RatVector& v) {
  if (basis.cols() == 0) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (!v(i).is_zero()) return false;
    }
    return true;
  }
  RatMatrix stacked(basis.rows(), basis.cols() + 1);
  stacked.leftCols(basis.cols()) = basis;
  stacked.col(basis.cols()) = v;
  return rank(basis) == rank(stacked);
}

bool same_span(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows()) return false;
  RatMatrix stacked(a.rows(), a.cols() + b.cols());
  stacked.leftCols(a.cols()) = a;
  stacked.rightCols(b.cols()) = b;
  int ra = rank(a);
  int rb = rank(b);
  int rs = rank(stacked);
  return ra == rb && rb == rs;
}

}  // namespace drums
