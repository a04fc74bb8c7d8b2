#pragma once

#include <map>
#include <string>

#include "twisthc/orbit.hpp"
#include "twisthc/rat.hpp"

namespace twisthc {

/// Finite Q-linear combination of orbits. Zero coefficients are never stored.
class ChainQ {
 public:
  using Terms = std::map<Orbit, Rat>;

  ChainQ() = default;
  ChainQ(const Orbit& o, const Rat& coefficient) { add(o, coefficient); }

  void add(const Orbit& o, const Rat& coefficient);
  [[nodiscard]] Rat coefficient(const Orbit& o) const;
  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

  /// "1/1 e_{1/4} + 1/2 e_{2/4}"; "0" for the zero chain.
  [[nodiscard]] std::string to_string() const;

  ChainQ& operator+=(const ChainQ& rhs);
  ChainQ& operator*=(const Rat& s);
  friend ChainQ operator+(ChainQ a, const ChainQ& b) { return a += b; }
  friend ChainQ operator*(const Rat& s, ChainQ a) { return a *= s; }
  friend bool operator==(const ChainQ&, const ChainQ&) = default;

 private:
  Terms terms_;
};

}  // namespace twisthc
