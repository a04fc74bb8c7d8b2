#include "twisthc/rat.hpp"

#include <numeric>
#include <ostream>
#include <stdexcept>

namespace twisthc {

Rat::Rat(long value) : value_(value) {}

Rat::Rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("Rat: zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rat::Rat(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::invalid_argument("Rat: zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rat::Rat(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rat Rat::parse(std::string_view text) {
  const auto slash = text.find('/');
  auto parse_int = [](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("Rat::parse: empty component");
    std::size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("Rat::parse: missing digits");
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("Rat::parse: bad digit");
    }
    return mpz_class(std::string(s.front() == '+' ? s.substr(1) : s), 10);
  };
  if (slash == std::string_view::npos) return Rat(parse_int(text), mpz_class(1));
  return Rat(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

Rat Rat::abs() const { return Rat(mpq_class(::abs(value_))); }

std::string Rat::to_string() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rat& Rat::operator+=(const Rat& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rat& Rat::operator-=(const Rat& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rat& Rat::operator*=(const Rat& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rat& Rat::operator/=(const Rat& rhs) {
  if (rhs.is_zero()) throw std::domain_error("Rat: division by zero");
  value_ /= rhs.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.to_string(); }

std::int64_t kappa(std::int64_t n, std::int64_t m) {
  if (m <= 0) throw std::invalid_argument("kappa: m must be positive");
  if (n < 0) throw std::invalid_argument("kappa: n must be nonnegative");
  return std::gcd(n, m);  // gcd(0, m) == m
}

}  // namespace twisthc
