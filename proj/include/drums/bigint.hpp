#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace drums {

/// Arbitrary-precision signed integer, sign-magnitude with base-2^32 limbs.
///
/// Supports exactly the operations the rational layer needs: ring arithmetic,
/// truncated division, gcd, bit shifts and decimal conversion. Limbs are
/// little-endian and never carry trailing zeros; zero has an empty limb vector
/// and sign 0.
class BigInt {
public:
  BigInt() = default;
  BigInt(long long v);

  static BigInt from_string(std::string_view decimal);
  std::string to_string() const;

  bool is_zero() const { return sign_ == 0; }
  int signum() const { return sign_; }
  bool is_one() const { return sign_ == 1 && limbs_.size() == 1 && limbs_[0] == 1; }

  BigInt operator-() const;
  BigInt abs() const;

  BigInt operator+(const BigInt& rhs) const;
  BigInt operator-(const BigInt& rhs) const;
  BigInt operator*(const BigInt& rhs) const;
  /// Truncated toward zero, like built-in integer division.
  BigInt operator/(const BigInt& rhs) const;
  BigInt operator%(const BigInt& rhs) const;

  BigInt& operator+=(const BigInt& rhs) { return *this = *this + rhs; }
  BigInt& operator-=(const BigInt& rhs) { return *this = *this - rhs; }
  BigInt& operator*=(const BigInt& rhs) { return *this = *this * rhs; }

  /// Quotient and remainder in one pass; remainder has the dividend's sign.
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
  static BigInt gcd(const BigInt& a, const BigInt& b);

  BigInt shifted_left(unsigned bits) const;

  bool operator==(const BigInt& rhs) const { return sign_ == rhs.sign_ && limbs_ == rhs.limbs_; }
  bool operator!=(const BigInt& rhs) const { return !(*this == rhs); }
  bool operator<(const BigInt& rhs) const { return compare(rhs) < 0; }
  bool operator>(const BigInt& rhs) const { return compare(rhs) > 0; }
  bool operator<=(const BigInt& rhs) const { return compare(rhs) <= 0; }
  bool operator>=(const BigInt& rhs) const { return compare(rhs) >= 0; }

  /// Three-way comparison of signed values.
  int compare(const BigInt& rhs) const;

  long double to_long_double() const;

  /// True if the value fits in a signed 64-bit integer.
  bool fits_int64() const;
  long long to_int64() const;

private:
  int sign_ = 0;
  std::vector<std::uint32_t> limbs_;

  void trim();
  static int compare_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  // Requires |a| >= |b|.
  static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  static void divmod_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                         std::vector<std::uint32_t>& q, std::vector<std::uint32_t>& r);
};

std::ostream& operator<<(std::ostream& os, const BigInt& v);

}  // namespace drums
