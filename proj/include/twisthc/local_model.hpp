#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace twisthc {

/// Twist-region geometry in the annulus coordinate q.
///
/// The Dehn twist is supported on [q_minus, q_plus]; torus-family orbits sit
/// on the adjacent collar [q_plus, q_prime_plus] where K is convex.
struct TwistProfile {
  double q_minus = 0.5;
  double q_plus = 1.0;
  double q_prime_plus = 1.5;
};

struct LocalModelParams {
  double c = 0.41421356237309504880;          // sqrt(2) - 1
  double epsilon = 0.5;
  std::int64_t sigma = 1;
  double c0 = 10.0;
  double r_tilde = -0.14142135623730950488;   // -1/sqrt(50)
  TwistProfile f_profile{};
  /// Value of K at the hyperbolic critical point; defaults to K(q_prime_plus).
  std::optional<double> k_xh;

  /// Throws std::invalid_argument when an invariant fails.
  void validate() const;

  static LocalModelParams for_sigma(std::int64_t sigma);
};

// ---------------------------------------------------------------------------
// Dehn twist profile and the K-profile.

/// Smoothstep twist profile sigma * (3s^2 - 2s^3), s normalized on the twist
/// interval; clamped to 0 / sigma outside it.
double twist_f(double q, const LocalModelParams& p);
double twist_f_prime(double q, const LocalModelParams& p);
double twist_f_second(double q, const LocalModelParams& p);

/// A one-variable Hamiltonian profile K(q) with its first two derivatives on
/// the closed interval [lo, hi].
struct KProfile {
  std::function<double(double)> k;
  std::function<double(double)> k_q;
  std::function<double(double)> k_qq;
  double lo = 0.0;
  double hi = 0.0;
};

/// K on the whole collar [q_minus, q_prime_plus]: -q(f + r~) + c0 on the twist
/// region, continued as a convex C^1 decreasing function whose slope rises
/// from -(sigma + r~) to 0 across the adjacent collar.
double k_value(double q, const LocalModelParams& p);
double k_slope(double q, const LocalModelParams& p);
double k_curvature(double q, const LocalModelParams& p);

/// Restriction of K to the adjacent collar, where torus orbits live.
KProfile adjacent_k_profile(const LocalModelParams& p);

/// K(x_h): the configured override or K(q_prime_plus).
double k_at_hyperbolic_point(const LocalModelParams& p);

/// Solves K_q(q) = -n/m on the profile domain. Throws std::domain_error when
/// the slope is not realized.
double locate_orbit_level(const KProfile& profile, double slope_ratio);

struct ActionProfile {
  std::vector<double> q;
  std::vector<double> action;
  double q_o = 0.0;
  double slope_at_q_o = 0.0;  // dA/dq at q_o
  bool monotone_in_distance = false;
};

/// Samples A(q) = n q + m K(q) on an evenly spaced grid over the profile
/// domain and checks that A increases with |q - q_o| (tolerance `tol`).
ActionProfile action_profile(std::int64_t n, std::int64_t m, const KProfile& profile,
                             std::size_t grid_points, double tol = 1e-9);
ActionProfile action_profile(std::int64_t n, std::int64_t m, const LocalModelParams& params,
                             std::size_t grid_points, double tol = 1e-9);

// ---------------------------------------------------------------------------
// The C^2 model.

using C2Point = std::array<std::complex<double>, 2>;

/// h(r2) = ln(1 + (1 + c) r2^2), the conformal factor exponent.
double conformal_exponent(double r2, double c);

/// Y^t(z1, z2) = (e^{-t} z1, e^{ct} z2).
C2Point flow_y(double t, const C2Point& z, double c);

/// rho = |z1|^c |z2|, the quantity preserved by Y^t.
double flow_invariant_rho(const C2Point& z, double c);

/// Reeb vector in polar coordinates (r1, r2, theta1, theta2).
struct PolarVector {
  double d_r1 = 0.0;
  double d_r2 = 0.0;
  double d_theta1 = 0.0;
  double d_theta2 = 0.0;
};

/// Residual -|z1|^2 + |z2|^2 + 1 of the defining equation of N.
double model_residual(const C2Point& z);
/// Throws std::invalid_argument unless z lies on N (residual <= 1e-9, |z2| < epsilon).
PolarVector reeb_field(const C2Point& z, double c, double epsilon);
/// Time-t map of the Reeb flow -d_theta1 + c d_theta2.
C2Point reeb_flow(double t, const C2Point& z, double c);

/// Phi(p, r, theta) = (sqrt(1 + r^2) e^{-ip}, r e^{i theta}); requires 0 <= r < epsilon.
C2Point embed_phi(double p, double r, double theta, double epsilon);

using Mat2 = std::array<std::array<double, 2>, 2>;

/// Linearized return map along the m-th iterate of the binding orbit:
/// rotation by 4 m c pi.
Mat2 return_map(std::int64_t m, double c);

/// Same map obtained by RK4 integration of the linearized flow
/// d/dt X = [[0, -2c], [2c, 0]] X over the orbit period 2 m pi.
Mat2 return_map_integrated(std::int64_t m, double c, double step = 1e-4);

enum class ReturnMapType { Elliptic, PositiveHyperbolic, NegativeHyperbolic, Degenerate };

std::string to_string(ReturnMapType t);

/// Throws std::invalid_argument unless |det - 1| <= tol.
ReturnMapType classify_return_map(const Mat2& lambda, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Laurent-exponent classification of punctured holomorphic maps.

struct LaurentExponents {
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
};

enum class EndBehavior { PositiveEnd, NegativeEnd, Extends };

/// How a punctured map looks from one of the two symplectizations.
struct ViewDescriptor {
  EndBehavior behavior = EndBehavior::Extends;
  /// Iterate of the limit orbit, or the intersection multiplicity when the
  /// map extends over the puncture.
  std::int64_t multiplicity = 0;
  std::string orbit;  // "gamma" or "gamma_hat"

  [[nodiscard]] std::string describe() const;
  friend bool operator==(const ViewDescriptor&, const ViewDescriptor&) = default;
};

struct LaurentViews {
  ViewDescriptor n_view;
  ViewDescriptor n_hat_view;
};

/// Throws std::invalid_argument when c n1 + n2 <= 0.
LaurentViews laurent_classify(const LaurentExponents& exps, double c);

}  // namespace twisthc
