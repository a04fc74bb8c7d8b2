#include "twisthc/chain.hpp"

namespace twisthc {

void ChainQ::add(const Orbit& o, const Rat& coefficient) {
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(o, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Rat ChainQ::coefficient(const Orbit& o) const {
  const auto it = terms_.find(o);
  return it == terms_.end() ? Rat(0) : it->second;
}

std::string ChainQ::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [o, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += c.to_string() + " " + o.label();
  }
  return out;
}

ChainQ& ChainQ::operator+=(const ChainQ& rhs) {
  for (const auto& [o, c] : rhs.terms_) add(o, c);
  return *this;
}

ChainQ& ChainQ::operator*=(const Rat& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [o, c] : terms_) c *= s;
  return *this;
}

}  // namespace twisthc
