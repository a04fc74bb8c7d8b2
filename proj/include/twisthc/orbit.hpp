#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twisthc/local_model.hpp"

namespace twisthc {

/// Orbit kinds, in canonical listing order.
enum class OrbitKind : std::uint8_t { EllipticT, HyperbolicT, CoreH, Binding };

/// A Reeb orbit generator.
///
/// Torus-family orbits e_{n/m}, h_{n/m} carry 0 < n < sigma m. The core
/// hyperbolic orbit h^m and the binding iterate B^m carry only the winding m
/// (n is stored as 0). Ordering is by winding, then kind, then numerator.
struct Orbit {
  OrbitKind kind = OrbitKind::CoreH;
  std::int64_t n = 0;
  std::int64_t m = 1;

  static Orbit elliptic(std::int64_t n, std::int64_t m) { return {OrbitKind::EllipticT, n, m}; }
  static Orbit hyperbolic(std::int64_t n, std::int64_t m) { return {OrbitKind::HyperbolicT, n, m}; }
  static Orbit core(std::int64_t m) { return {OrbitKind::CoreH, 0, m}; }
  static Orbit binding(std::int64_t m) { return {OrbitKind::Binding, 0, m}; }

  [[nodiscard]] bool is_torus() const {
    return kind == OrbitKind::EllipticT || kind == OrbitKind::HyperbolicT;
  }
  [[nodiscard]] bool is_elliptic() const {
    return kind == OrbitKind::EllipticT || kind == OrbitKind::Binding;
  }

  /// "e_{3/2}", "h_{1/1}", "h^2", "B^4".
  [[nodiscard]] std::string label() const;

  friend bool operator==(const Orbit&, const Orbit&) = default;
  friend std::strong_ordering operator<=>(const Orbit& a, const Orbit& b) {
    if (auto c = a.m <=> b.m; c != 0) return c;
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    return a.n <=> b.n;
  }
};

std::string to_string(OrbitKind kind);

/// First homology class: torsion part mod sigma and the free part.
struct OrbitClass {
  std::int64_t torsion = 0;
  std::int64_t free = 0;

  [[nodiscard]] bool is_trivial() const { return torsion == 0 && free == 0; }
  friend bool operator==(const OrbitClass&, const OrbitClass&) = default;
  friend auto operator<=>(const OrbitClass&, const OrbitClass&) = default;
};

/// Throws std::invalid_argument when `o` is not a generator for this sigma.
void validate(const Orbit& o, std::int64_t sigma);

/// All generators with winding <= max_winding, in canonical order.
std::vector<Orbit> enumerate(std::int64_t sigma, std::int64_t max_winding, bool include_binding);

/// Brings a torus label (n, m) into range by shifting n by multiples of
/// sigma m. Hyperbolic labels landing on 0 or sigma m become h^m; elliptic
/// ones there have no generator and are rejected.
Orbit normalize_index(std::int64_t n, std::int64_t m, std::int64_t sigma, OrbitKind kind);

OrbitClass homology_class(const Orbit& o, std::int64_t sigma);
bool is_contractible(const Orbit& o, std::int64_t sigma);

/// Reduced Conley-Zehnder index; absent for orbits that are not homologically
/// trivial and for binding iterates.
std::optional<std::int64_t> mu_bar(const Orbit& o, std::int64_t sigma);

/// Z/2 index: 0 for elliptic kinds, 1 for hyperbolic kinds.
int parity(const Orbit& o);

/// Linearized return-map type of each kind in this system.
ReturnMapType return_map_type(const Orbit& o);
/// Covering multiplicity: gcd(n, m) for torus orbits, m otherwise.
std::int64_t covering_multiplicity(const Orbit& o);
/// An orbit is bad iff it is an even multiple of an orbit with negative real
/// eigenvalues.
bool is_good(const Orbit& o);

/// Action: n q_o + m K(q_o) for torus orbits, m K(x_h) for h^m, 2 m pi for B^m.
/// Throws std::domain_error when the level q_o is not realized.
double action(const Orbit& o, const LocalModelParams& params);

/// action(upper) - action(lower).
double energy(const Orbit& lower, const Orbit& upper, const LocalModelParams& params);

}  // namespace twisthc
