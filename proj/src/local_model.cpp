#include "twisthc/local_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>

namespace twisthc {

namespace {

constexpr double kPi = std::numbers::pi;

double twist_s(double q, const TwistProfile& t) {
  return std::clamp((q - t.q_minus) / (t.q_plus - t.q_minus), 0.0, 1.0);
}

bool in_twist(double q, const TwistProfile& t) { return q > t.q_minus && q < t.q_plus; }

// Slope of K at the outer edge of the twist region.
double edge_slope(const LocalModelParams& p) {
  return -(static_cast<double>(p.sigma) + p.r_tilde);
}

double collar_length(const LocalModelParams& p) {
  return p.f_profile.q_prime_plus - p.f_profile.q_plus;
}

double collar_s(double q, const LocalModelParams& p) {
  return std::clamp((q - p.f_profile.q_plus) / collar_length(p), 0.0, 1.0);
}

}  // namespace

void LocalModelParams::validate() const {
  if (!(c > 0.0)) throw std::invalid_argument("LocalModelParams: c must be positive");
  if (!(epsilon > 0.0)) throw std::invalid_argument("LocalModelParams: epsilon must be positive");
  if (sigma < 1) throw std::invalid_argument("LocalModelParams: sigma must be >= 1");
  if (!(c0 > 0.0)) throw std::invalid_argument("LocalModelParams: c0 must be positive");
  if (!(r_tilde < 0.0) || std::abs(r_tilde) >= 0.2) {
    throw std::invalid_argument("LocalModelParams: r_tilde must lie in (-0.2, 0)");
  }
  const auto& t = f_profile;
  if (!(0.0 < t.q_minus && t.q_minus < t.q_plus && t.q_plus < t.q_prime_plus)) {
    throw std::invalid_argument("LocalModelParams: need 0 < q_minus < q_plus < q_prime_plus");
  }
  // Contact condition K - q K_q - q^2 f > 0 on the twist region reduces to
  // c0 > q^2 (f - f'), bounded by q_plus^2 sigma.
  if (!(c0 > t.q_plus * t.q_plus * static_cast<double>(sigma))) {
    throw std::invalid_argument("LocalModelParams: c0 too small for the contact condition");
  }
  if (!(k_value(t.q_prime_plus, *this) > 0.0)) {
    throw std::invalid_argument("LocalModelParams: K must stay positive on the collar");
  }
}

LocalModelParams LocalModelParams::for_sigma(std::int64_t sigma) {
  LocalModelParams p;
  p.sigma = sigma;
  // c0 = 10 covers sigma <= 8; larger twists need a larger constant.
  p.c0 = std::max(10.0, 1.5 * static_cast<double>(sigma) + 1.0);
  return p;
}

double twist_f(double q, const LocalModelParams& p) {
  const double s = twist_s(q, p.f_profile);
  return static_cast<double>(p.sigma) * s * s * (3.0 - 2.0 * s);
}

double twist_f_prime(double q, const LocalModelParams& p) {
  if (!in_twist(q, p.f_profile)) return 0.0;
  const double len = p.f_profile.q_plus - p.f_profile.q_minus;
  const double s = twist_s(q, p.f_profile);
  return static_cast<double>(p.sigma) * 6.0 * s * (1.0 - s) / len;
}

double twist_f_second(double q, const LocalModelParams& p) {
  if (!in_twist(q, p.f_profile)) return 0.0;
  const double len = p.f_profile.q_plus - p.f_profile.q_minus;
  const double s = twist_s(q, p.f_profile);
  return static_cast<double>(p.sigma) * (6.0 - 12.0 * s) / (len * len);
}

double k_value(double q, const LocalModelParams& p) {
  if (q <= p.f_profile.q_plus) return -q * (twist_f(q, p) + p.r_tilde) + p.c0;
  const double a = edge_slope(p);
  const double len = collar_length(p);
  const double s = collar_s(q, p);
  const double k_edge = -p.f_profile.q_plus * (static_cast<double>(p.sigma) + p.r_tilde) + p.c0;
  return k_edge + a * len / 3.0 * (1.0 - std::pow(1.0 - s, 3));
}

double k_slope(double q, const LocalModelParams& p) {
  if (q <= p.f_profile.q_plus) return -(twist_f(q, p) + p.r_tilde) - q * twist_f_prime(q, p);
  const double s = collar_s(q, p);
  return edge_slope(p) * (1.0 - s) * (1.0 - s);
}

double k_curvature(double q, const LocalModelParams& p) {
  if (q <= p.f_profile.q_plus) return -(2.0 * twist_f_prime(q, p) + q * twist_f_second(q, p));
  const double s = collar_s(q, p);
  return -2.0 * edge_slope(p) * (1.0 - s) / collar_length(p);
}

KProfile adjacent_k_profile(const LocalModelParams& p) {
  KProfile prof;
  prof.k = [p](double q) { return k_value(q, p); };
  prof.k_q = [p](double q) { return k_slope(q, p); };
  prof.k_qq = [p](double q) { return k_curvature(q, p); };
  prof.lo = p.f_profile.q_plus;
  prof.hi = p.f_profile.q_prime_plus;
  return prof;
}

double k_at_hyperbolic_point(const LocalModelParams& p) {
  return p.k_xh.value_or(k_value(p.f_profile.q_prime_plus, p));
}

double locate_orbit_level(const KProfile& profile, double slope_ratio) {
  auto g = [&](double q) { return profile.k_q(q) + slope_ratio; };
  const double g_lo = g(profile.lo);
  const double g_hi = g(profile.hi);
  if (g_lo == 0.0) return profile.lo;
  if (g_hi == 0.0) return profile.hi;
  if ((g_lo > 0.0) == (g_hi > 0.0)) {
    throw std::domain_error("slope -n/m is outside the range realized by K_q");
  }
  std::uintmax_t max_iter = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      g, profile.lo, profile.hi, g_lo, g_hi, boost::math::tools::eps_tolerance<double>(50),
      max_iter);
  return 0.5 * (a + b);
}

ActionProfile action_profile(std::int64_t n, std::int64_t m, const KProfile& profile,
                             std::size_t grid_points, double tol) {
  if (m < 1 || n < 1) throw std::invalid_argument("action_profile: need n >= 1, m >= 1");
  if (grid_points < 2) throw std::invalid_argument("action_profile: need at least 2 grid points");
  const auto nd = static_cast<double>(n);
  const auto md = static_cast<double>(m);

  ActionProfile out;
  out.q_o = locate_orbit_level(profile, nd / md);
  out.slope_at_q_o = nd + md * profile.k_q(out.q_o);

  out.q.resize(grid_points);
  out.action.resize(grid_points);
  const double h = (profile.hi - profile.lo) / static_cast<double>(grid_points - 1);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double q = (i + 1 == grid_points) ? profile.hi : profile.lo + h * static_cast<double>(i);
    out.q[i] = q;
    out.action[i] = nd * q + md * profile.k(q);
  }

  // Moving away from q_o on either side, A must not drop by more than tol.
  out.monotone_in_distance = true;
  for (std::size_t i = 0; i + 1 < grid_points; ++i) {
    const double step = out.action[i + 1] - out.action[i];
    if (out.q[i] >= out.q_o && step < -tol) out.monotone_in_distance = false;
    if (out.q[i + 1] <= out.q_o && -step < -tol) out.monotone_in_distance = false;
  }
  return out;
}

ActionProfile action_profile(std::int64_t n, std::int64_t m, const LocalModelParams& params,
                             std::size_t grid_points, double tol) {
  params.validate();
  if (!(n > 0 && n < params.sigma * m)) {
    throw std::invalid_argument("action_profile: need 0 < n < sigma m");
  }
  return action_profile(n, m, adjacent_k_profile(params), grid_points, tol);
}

// ---------------------------------------------------------------------------

double conformal_exponent(double r2, double c) {
  if (r2 < 0.0) throw std::invalid_argument("conformal_exponent: r2 must be nonnegative");
  return std::log1p((1.0 + c) * r2 * r2);
}

C2Point flow_y(double t, const C2Point& z, double c) {
  return {z[0] * std::exp(-t), z[1] * std::exp(c * t)};
}

double flow_invariant_rho(const C2Point& z, double c) {
  return std::pow(std::abs(z[0]), c) * std::abs(z[1]);
}

double model_residual(const C2Point& z) { return -std::norm(z[0]) + std::norm(z[1]) + 1.0; }

PolarVector reeb_field(const C2Point& z, double c, double epsilon) {
  if (std::abs(model_residual(z)) > 1e-9) {
    throw std::invalid_argument("reeb_field: point is not on -|z1|^2 + |z2|^2 = -1");
  }
  if (!(std::abs(z[1]) < epsilon)) throw std::invalid_argument("reeb_field: |z2| >= epsilon");
  return PolarVector{0.0, 0.0, -1.0, c};
}

C2Point reeb_flow(double t, const C2Point& z, double c) {
  using namespace std::complex_literals;
  return {z[0] * std::exp(-1.0i * t), z[1] * std::exp(1.0i * (c * t))};
}

C2Point embed_phi(double p, double r, double theta, double epsilon) {
  using namespace std::complex_literals;
  if (r < 0.0 || !(r < epsilon)) throw std::invalid_argument("embed_phi: need 0 <= r < epsilon");
  return {std::sqrt(1.0 + r * r) * std::exp(-1.0i * p), r * std::exp(1.0i * theta)};
}

Mat2 return_map(std::int64_t m, double c) {
  if (m < 1) throw std::invalid_argument("return_map: m must be >= 1");
  const double angle = 4.0 * static_cast<double>(m) * c * kPi;
  const double co = std::cos(angle);
  const double si = std::sin(angle);
  return Mat2{{{co, -si}, {si, co}}};
}

Mat2 return_map_integrated(std::int64_t m, double c, double step) {
  if (m < 1) throw std::invalid_argument("return_map_integrated: m must be >= 1");
  const double period = 2.0 * kPi * static_cast<double>(m);
  const auto steps = static_cast<std::int64_t>(std::ceil(period / step));
  const double h = period / static_cast<double>(steps);
  const double w = 2.0 * c;

  // Columns evolve independently under x' = A x, A = [[0, -w], [w, 0]].
  auto deriv = [w](const std::array<double, 2>& x) {
    return std::array<double, 2>{-w * x[1], w * x[0]};
  };
  Mat2 out{};
  for (int col = 0; col < 2; ++col) {
    std::array<double, 2> x{col == 0 ? 1.0 : 0.0, col == 0 ? 0.0 : 1.0};
    for (std::int64_t k = 0; k < steps; ++k) {
      const auto k1 = deriv(x);
      const auto k2 = deriv({x[0] + 0.5 * h * k1[0], x[1] + 0.5 * h * k1[1]});
      const auto k3 = deriv({x[0] + 0.5 * h * k2[0], x[1] + 0.5 * h * k2[1]});
      const auto k4 = deriv({x[0] + h * k3[0], x[1] + h * k3[1]});
      for (int i = 0; i < 2; ++i) x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out[0][col] = x[0];
    out[1][col] = x[1];
  }
  return out;
}

std::string to_string(ReturnMapType t) {
  switch (t) {
    case ReturnMapType::Elliptic: return "elliptic";
    case ReturnMapType::PositiveHyperbolic: return "positive-hyperbolic";
    case ReturnMapType::NegativeHyperbolic: return "negative-hyperbolic";
    case ReturnMapType::Degenerate: return "degenerate";
  }
  return "unknown";
}

ReturnMapType classify_return_map(const Mat2& lambda, double tol) {
  const double det = lambda[0][0] * lambda[1][1] - lambda[0][1] * lambda[1][0];
  if (std::abs(det - 1.0) > tol) throw std::invalid_argument("classify_return_map: det != 1");
  const double tr = lambda[0][0] + lambda[1][1];
  // With det = 1, eigenvalue 1 occurs exactly when the trace is 2.
  if (std::abs(tr - 2.0) <= tol) return ReturnMapType::Degenerate;
  if (std::abs(tr) < 2.0) return ReturnMapType::Elliptic;
  return tr > 0.0 ? ReturnMapType::PositiveHyperbolic : ReturnMapType::NegativeHyperbolic;
}

// ---------------------------------------------------------------------------

std::string ViewDescriptor::describe() const {
  const std::string iterate = orbit + "^" + std::to_string(multiplicity);
  switch (behavior) {
    case EndBehavior::PositiveEnd: return "converges to " + iterate + " at +inf";
    case EndBehavior::NegativeEnd: return "converges to " + iterate + " at -inf";
    case EndBehavior::Extends:
      return "extends, intersection multiplicity " + std::to_string(multiplicity);
  }
  return {};
}

LaurentViews laurent_classify(const LaurentExponents& exps, double c) {
  const double weight = c * static_cast<double>(exps.n1) + static_cast<double>(exps.n2);
  if (!(weight > 0.0)) throw std::invalid_argument("laurent_classify: requires c n1 + n2 > 0");

  LaurentViews v;
  v.n_view.orbit = "gamma";
  if (exps.n1 > 0) {
    v.n_view.behavior = EndBehavior::PositiveEnd;
    v.n_view.multiplicity = exps.n1;
  } else if (exps.n1 == 0) {
    v.n_view.behavior = EndBehavior::Extends;
    v.n_view.multiplicity = exps.n2;
  } else {
    v.n_view.behavior = EndBehavior::NegativeEnd;
    v.n_view.multiplicity = -exps.n1;
  }

  // Roles of the two coordinates swap on the surgered side, and so do the ends.
  v.n_hat_view.orbit = "gamma_hat";
  if (exps.n2 > 0) {
    v.n_hat_view.behavior = EndBehavior::NegativeEnd;
    v.n_hat_view.multiplicity = exps.n2;
  } else if (exps.n2 == 0) {
    v.n_hat_view.behavior = EndBehavior::Extends;
    v.n_hat_view.multiplicity = exps.n1;
  } else {
    v.n_hat_view.behavior = EndBehavior::PositiveEnd;
    v.n_hat_view.multiplicity = -exps.n2;
  }
  return v;
}

}  // namespace twisthc
