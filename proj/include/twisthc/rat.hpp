#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace twisthc {

/// Exact rational number, always in lowest terms with a positive denominator.
class Rat {
 public:
  Rat() = default;
  Rat(long value);  // NOLINT(google-explicit-constructor)
  Rat(long num, long den);
  Rat(const mpz_class& num, const mpz_class& den);
  explicit Rat(mpq_class value);

  /// Parses "p/q" or "p". Throws std::invalid_argument on malformed input.
  static Rat parse(std::string_view text);

  [[nodiscard]] mpz_class num() const { return value_.get_num(); }
  [[nodiscard]] mpz_class den() const { return value_.get_den(); }
  [[nodiscard]] bool is_zero() const { return sgn(value_) == 0; }
  [[nodiscard]] int sign() const { return sgn(value_); }
  [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }
  [[nodiscard]] Rat abs() const;
  [[nodiscard]] double to_double() const { return value_.get_d(); }
  [[nodiscard]] const mpq_class& raw() const { return value_; }

  /// Canonical serialization "p/q"; integers are written with "/1".
  [[nodiscard]] std::string to_string() const;

  Rat& operator+=(const Rat& rhs);
  Rat& operator-=(const Rat& rhs);
  Rat& operator*=(const Rat& rhs);
  Rat& operator/=(const Rat& rhs);

  friend Rat operator+(Rat lhs, const Rat& rhs) { return lhs += rhs; }
  friend Rat operator-(Rat lhs, const Rat& rhs) { return lhs -= rhs; }
  friend Rat operator*(Rat lhs, const Rat& rhs) { return lhs *= rhs; }
  friend Rat operator/(Rat lhs, const Rat& rhs) { return lhs /= rhs; }
  friend Rat operator-(const Rat& x) { return Rat(mpq_class(-x.value_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

/// gcd(n, m) with the convention gcd(0, m) = m. Throws on m <= 0 or n < 0.
std::int64_t kappa(std::int64_t n, std::int64_t m);

}  // namespace twisthc
