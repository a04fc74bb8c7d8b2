#include "twisthc/orbit.hpp"

#include <numbers>
#include <stdexcept>

#include "twisthc/rat.hpp"

namespace twisthc {

std::string to_string(OrbitKind kind) {
  switch (kind) {
    case OrbitKind::EllipticT: return "elliptic";
    case OrbitKind::HyperbolicT: return "hyperbolic";
    case OrbitKind::CoreH: return "core";
    case OrbitKind::Binding: return "binding";
  }
  return "unknown";
}

std::string Orbit::label() const {
  const std::string frac = "{" + std::to_string(n) + "/" + std::to_string(m) + "}";
  switch (kind) {
    case OrbitKind::EllipticT: return "e_" + frac;
    case OrbitKind::HyperbolicT: return "h_" + frac;
    case OrbitKind::CoreH: return "h^" + std::to_string(m);
    case OrbitKind::Binding: return "B^" + std::to_string(m);
  }
  return "?";
}

void validate(const Orbit& o, std::int64_t sigma) {
  if (sigma < 1) throw std::invalid_argument("sigma must be >= 1");
  if (o.m < 1) throw std::invalid_argument("orbit winding must be >= 1: " + o.label());
  if (o.is_torus()) {
    if (!(o.n > 0 && o.n < sigma * o.m)) {
      throw std::invalid_argument("torus orbit needs 0 < n < sigma m: " + o.label());
    }
  } else if (o.n != 0) {
    throw std::invalid_argument("core/binding orbits carry no numerator: " + o.label());
  }
}

std::vector<Orbit> enumerate(std::int64_t sigma, std::int64_t max_winding, bool include_binding) {
  if (sigma < 1) throw std::invalid_argument("enumerate: sigma must be >= 1");
  if (max_winding < 1) throw std::invalid_argument("enumerate: max winding must be >= 1");
  std::vector<Orbit> out;
  for (std::int64_t m = 1; m <= max_winding; ++m) {
    for (std::int64_t n = 1; n < sigma * m; ++n) out.push_back(Orbit::elliptic(n, m));
    for (std::int64_t n = 1; n < sigma * m; ++n) out.push_back(Orbit::hyperbolic(n, m));
    out.push_back(Orbit::core(m));
    if (include_binding) out.push_back(Orbit::binding(m));
  }
  return out;
}

Orbit normalize_index(std::int64_t n, std::int64_t m, std::int64_t sigma, OrbitKind kind) {
  if (m < 1) throw std::invalid_argument("normalize_index: m must be >= 1");
  if (sigma < 1) throw std::invalid_argument("normalize_index: sigma must be >= 1");
  if (kind == OrbitKind::CoreH) return Orbit::core(m);
  if (kind == OrbitKind::Binding) throw std::invalid_argument("normalize_index: binding has no index");

  const std::int64_t period = sigma * m;
  std::int64_t r = n % period;
  if (r < 0) r += period;
  if (r == 0) {
    // n == 0 and n == sigma m both land here.
    if (kind == OrbitKind::HyperbolicT) return Orbit::core(m);
    throw std::invalid_argument("normalize_index: no elliptic generator at n = 0 mod sigma m");
  }
  return Orbit{kind, r, m};
}

OrbitClass homology_class(const Orbit& o, std::int64_t sigma) {
  validate(o, sigma);
  if (o.is_torus()) return OrbitClass{o.n % sigma, 0};
  return OrbitClass{0, 0};
}

bool is_contractible(const Orbit& o, std::int64_t sigma) {
  validate(o, sigma);
  switch (o.kind) {
    case OrbitKind::EllipticT:
    case OrbitKind::HyperbolicT: return o.n % sigma == 0;
    case OrbitKind::CoreH: return true;
    case OrbitKind::Binding: return sigma == 1;
  }
  return false;
}

std::optional<std::int64_t> mu_bar(const Orbit& o, std::int64_t sigma) {
  validate(o, sigma);
  switch (o.kind) {
    case OrbitKind::CoreH: return 2 * o.m - 1;
    case OrbitKind::EllipticT:
      if (o.n % sigma == 0) return 2 * o.m - 2;
      return std::nullopt;
    case OrbitKind::HyperbolicT:
      if (o.n % sigma == 0) return 2 * o.m - 1;
      return std::nullopt;
    case OrbitKind::Binding: return std::nullopt;
  }
  return std::nullopt;
}

int parity(const Orbit& o) { return o.is_elliptic() ? 0 : 1; }

ReturnMapType return_map_type(const Orbit& o) {
  // Torus pairs split from Morse-Bott families into an elliptic and a
  // positive-hyperbolic orbit; h^m has positive eigenvalues; B^m rotates by an
  // irrational angle.
  return o.is_elliptic() ? ReturnMapType::Elliptic : ReturnMapType::PositiveHyperbolic;
}

std::int64_t covering_multiplicity(const Orbit& o) { return o.is_torus() ? kappa(o.n, o.m) : o.m; }

bool is_good(const Orbit& o) {
  const bool even_multiple = covering_multiplicity(o) % 2 == 0;
  return !(even_multiple && return_map_type(o) == ReturnMapType::NegativeHyperbolic);
}

double action(const Orbit& o, const LocalModelParams& params) {
  validate(o, params.sigma);
  const auto m = static_cast<double>(o.m);
  switch (o.kind) {
    case OrbitKind::Binding: return 2.0 * m * std::numbers::pi;
    case OrbitKind::CoreH: return m * k_at_hyperbolic_point(params);
    case OrbitKind::EllipticT:
    case OrbitKind::HyperbolicT: {
      const auto prof = adjacent_k_profile(params);
      const auto n = static_cast<double>(o.n);
      const double q_o = locate_orbit_level(prof, n / m);
      return n * q_o + m * prof.k(q_o);
    }
  }
  return 0.0;
}

double energy(const Orbit& lower, const Orbit& upper, const LocalModelParams& params) {
  return action(upper, params) - action(lower, params);
}

}  // namespace twisthc
