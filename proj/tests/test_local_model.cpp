#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "twisthc/local_model.hpp"

namespace {

using namespace twisthc;
using std::numbers::pi;

const double kC = std::numbers::sqrt2 - 1.0;

double max_entry_diff(const Mat2& a, const Mat2& b) {
  double d = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
  }
  return d;
}

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

TEST(Params, DefaultsValidate) {
  EXPECT_NO_THROW(LocalModelParams{}.validate());
  for (std::int64_t s : {1, 2, 5, 8, 20, 100}) EXPECT_NO_THROW(LocalModelParams::for_sigma(s).validate());
  LocalModelParams bad;
  bad.r_tilde = 0.1;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = LocalModelParams{};
  bad.c = -1.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(TwistProfile, SmoothstepEndpoints) {
  const auto p = LocalModelParams::for_sigma(3);
  EXPECT_EQ(twist_f(0.2, p), 0.0);
  EXPECT_DOUBLE_EQ(twist_f(1.2, p), 3.0);
  EXPECT_DOUBLE_EQ(twist_f(0.75, p), 1.5);
  EXPECT_NEAR(twist_f_prime(0.5 + 1e-12, p), 0.0, 1e-9);
  EXPECT_NEAR(twist_f_prime(1.0 - 1e-12, p), 0.0, 1e-9);
  for (double q = 0.5; q <= 1.0; q += 0.01) EXPECT_GE(twist_f_prime(q, p), 0.0);
}

TEST(KProfile, DerivativesMatchFiniteDifferences) {
  const auto p = LocalModelParams::for_sigma(2);
  const double h = 1e-6;
  for (double q = 0.55; q < 1.48; q += 0.037) {
    const double fd1 = (k_value(q + h, p) - k_value(q - h, p)) / (2 * h);
    const double fd2 = (k_slope(q + h, p) - k_slope(q - h, p)) / (2 * h);
    EXPECT_NEAR(k_slope(q, p), fd1, 1e-6) << q;
    EXPECT_NEAR(k_curvature(q, p), fd2, 1e-5) << q;
  }
}

TEST(KProfile, ConvexOnCollarAndContinuousAtEdge) {
  const auto p = LocalModelParams::for_sigma(4);
  const auto prof = adjacent_k_profile(p);
  // Open collar: K is only C^1 across q_plus, and K_qq vanishes at the outer end.
  for (int k = 1; k < 50; ++k) EXPECT_GT(prof.k_qq(prof.lo + 0.01 * k), 0.0);
  EXPECT_NEAR(k_value(1.0 - 1e-12, p), k_value(1.0 + 1e-12, p), 1e-9);
  EXPECT_NEAR(k_slope(1.0 - 1e-12, p), k_slope(1.0 + 1e-12, p), 1e-9);
  EXPECT_NEAR(k_slope(prof.hi, p), 0.0, 1e-12);
}

TEST(LocateLevel, RootAndOutOfRange) {
  const auto p = LocalModelParams::for_sigma(2);
  const auto prof = adjacent_k_profile(p);
  const double q = locate_orbit_level(prof, 0.5);
  EXPECT_NEAR(prof.k_q(q), -0.5, 1e-12);
  EXPECT_THROW(locate_orbit_level(prof, 2.5), std::domain_error);
}

TEST(ActionProfile, StationaryAtLevel) {
  for (std::int64_t m = 1; m <= 5; ++m) {
    for (std::int64_t n = 1; n < 3 * m; ++n) {
      const auto a = action_profile(n, m, LocalModelParams::for_sigma(3), 2000);
      EXPECT_NEAR(a.slope_at_q_o, 0.0, 1e-9);
      EXPECT_TRUE(a.monotone_in_distance) << n << "/" << m;
    }
  }
  EXPECT_TRUE(action_profile(1, 2, LocalModelParams::for_sigma(2), 10000).monotone_in_distance);
}

TEST(ActionProfile, QuadraticTestProfile) {
  const double c0 = 10.0;
  KProfile quad;
  quad.k = [c0](double q) { return c0 - 0.5 * q * q; };
  quad.k_q = [](double q) { return -q; };
  quad.k_qq = [](double) { return -1.0; };
  quad.lo = 0.0;
  quad.hi = 2.0;
  const auto a = action_profile(1, 1, quad, 101);
  EXPECT_NEAR(a.q_o, 1.0, 1e-12);
  // A(q) = q + c0 - q^2/2 is symmetric about 1.
  for (double d : {0.1, 0.3, 0.7}) {
    const double up = (1.0 + d) + quad.k(1.0 + d);
    const double down = (1.0 - d) + quad.k(1.0 - d);
    EXPECT_NEAR(up, down, 1e-12);
  }
  // Concave profile: A falls away from q_o.
  EXPECT_FALSE(a.monotone_in_distance);
}

TEST(ActionProfile, RejectsOutOfRange) {
  EXPECT_THROW(action_profile(4, 2, LocalModelParams::for_sigma(2), 100), std::invalid_argument);
  EXPECT_THROW(action_profile(0, 2, LocalModelParams::for_sigma(2), 100), std::invalid_argument);
}

TEST(ConformalExponent, Examples) {
  EXPECT_EQ(conformal_exponent(0.0, kC), 0.0);
  EXPECT_NEAR(conformal_exponent(1.0, 1.0), std::log(3.0), 1e-15);
  EXPECT_NEAR(conformal_exponent(0.5, 2.0), std::log(1.75), 1e-15);
  EXPECT_THROW(conformal_exponent(-1.0, 1.0), std::invalid_argument);
}

TEST(Flow, Examples) {
  const C2Point z{std::complex<double>(0.3, -1.2), std::complex<double>(2.0, 0.5)};
  const auto same = flow_y(0.0, z, kC);
  EXPECT_EQ(same[0], z[0]);
  EXPECT_EQ(same[1], z[1]);

  const C2Point w{std::complex<double>(std::numbers::e, 0.0), std::complex<double>(1.0, 0.0)};
  const auto out = flow_y(1.0, w, 1.0);
  EXPECT_NEAR(std::abs(out[0] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out[1] - std::numbers::e), 0.0, 1e-15);
}

TEST(Flow, PreservesRhoAndAnglesAndComposes) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> t_dist(-10.0, 10.0);
  std::uniform_real_distribution<double> r_dist(0.1, 3.0);
  std::uniform_real_distribution<double> a_dist(-pi, pi);
  for (int k = 0; k < 500; ++k) {
    const C2Point z{std::polar(r_dist(rng), a_dist(rng)), std::polar(r_dist(rng), a_dist(rng))};
    const double t = t_dist(rng);
    const auto y = flow_y(t, z, kC);
    EXPECT_LE(rel_err(flow_invariant_rho(y, kC), flow_invariant_rho(z, kC)), 1e-12);
    EXPECT_LE(std::abs(std::arg(y[0]) - std::arg(z[0])), 1e-12);
    EXPECT_LE(std::abs(std::arg(y[1]) - std::arg(z[1])), 1e-12);

    const double s = t_dist(rng) * 0.3;
    const auto two = flow_y(s, flow_y(t * 0.3, z, kC), kC);
    const auto one = flow_y(s + t * 0.3, z, kC);
    EXPECT_LE(std::abs(two[0] - one[0]) / std::abs(one[0]), 1e-12);
    EXPECT_LE(std::abs(two[1] - one[1]) / std::abs(one[1]), 1e-12);
  }
}

TEST(Reeb, FieldOnBindingAndFlowStaysOnN) {
  const C2Point on_gamma{std::complex<double>(1.0, 0.0), std::complex<double>(0.0, 0.0)};
  const auto v = reeb_field(on_gamma, kC, 0.5);
  EXPECT_EQ(v.d_theta1, -1.0);
  EXPECT_EQ(v.d_theta2, kC);
  EXPECT_EQ(v.d_r1, 0.0);
  EXPECT_EQ(v.d_r2, 0.0);
  const C2Point off{std::complex<double>(2.0, 0.0), std::complex<double>(0.0, 0.0)};
  EXPECT_THROW(reeb_field(off, kC, 0.5), std::invalid_argument);

  const auto z = embed_phi(0.4, 0.3, 1.1, 0.5);
  const auto w = reeb_flow(3.7, z, kC);
  EXPECT_NEAR(model_residual(w), 0.0, 1e-14);
  // One full turn of theta1 brings gamma back to itself.
  const auto back = reeb_flow(2.0 * pi, on_gamma, kC);
  EXPECT_NEAR(std::abs(back[0] - on_gamma[0]), 0.0, 1e-14);
}

TEST(EmbedPhi, Examples) {
  for (double p : {0.0, 0.7, 2.5}) {
    const auto z = embed_phi(p, 0.0, 1.3, 0.5);
    EXPECT_NEAR(std::abs(z[0] - std::polar(1.0, -p)), 0.0, 1e-15);
    EXPECT_EQ(z[1], std::complex<double>(0.0, 0.0));
  }
  const auto z = embed_phi(0.0, 1.0, 0.9, 2.0);
  EXPECT_NEAR(z[0].real(), std::numbers::sqrt2, 1e-15);
  EXPECT_NEAR(std::abs(z[1] - std::polar(1.0, 0.9)), 0.0, 1e-15);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 0.49);
  for (int k = 0; k < 200; ++k) {
    const auto w = embed_phi(u(rng) * 13, u(rng), u(rng) * 13, 0.5);
    EXPECT_NEAR(model_residual(w), 0.0, 1e-14);
  }
  EXPECT_THROW(embed_phi(0.0, 0.5, 0.0, 0.5), std::invalid_argument);
}

TEST(ReturnMap, Examples) {
  for (std::int64_t m : {1, 3, 7}) {
    EXPECT_EQ(classify_return_map(return_map(m, 0.5)), ReturnMapType::Degenerate);
    const Mat2 minus_id = return_map(m, 1.0 / (4.0 * static_cast<double>(m)));
    EXPECT_LE(max_entry_diff(minus_id, Mat2{{{-1, 0}, {0, -1}}}), 1e-12);
  }
  const Mat2 l = return_map(1, kC);
  const double det_minus_id = (l[0][0] - 1) * (l[1][1] - 1) - l[0][1] * l[1][0];
  EXPECT_NEAR(det_minus_id, 2.0 - 2.0 * std::cos(4.0 * kC * pi), 1e-12);
  EXPECT_GT(det_minus_id, 0.0);
}

TEST(ReturnMap, ComposesByAngleAddition) {
  const Mat2 one = return_map(1, kC);
  Mat2 acc{{{1, 0}, {0, 1}}};
  for (std::int64_t m = 1; m <= 12; ++m) {
    Mat2 next{};
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) next[i][j] = acc[i][0] * one[0][j] + acc[i][1] * one[1][j];
    }
    acc = next;
    EXPECT_LE(max_entry_diff(acc, return_map(m, kC)), 1e-12) << m;
  }
}

TEST(ReturnMap, MatchesIntegration) {
  for (std::int64_t m = 1; m <= 10; ++m) {
    EXPECT_LE(max_entry_diff(return_map(m, kC), return_map_integrated(m, kC)), 1e-8) << m;
  }
}

TEST(ReturnMap, EllipticForIrrationalC) {
  for (std::int64_t m = 1; m <= 100; ++m) {
    EXPECT_EQ(classify_return_map(return_map(m, kC)), ReturnMapType::Elliptic) << m;
  }
}

TEST(Classify, Examples) {
  const double a = pi / 3;
  EXPECT_EQ(classify_return_map(Mat2{{{std::cos(a), -std::sin(a)}, {std::sin(a), std::cos(a)}}}),
            ReturnMapType::Elliptic);
  EXPECT_EQ(classify_return_map(Mat2{{{2, 0}, {0, 0.5}}}), ReturnMapType::PositiveHyperbolic);
  EXPECT_EQ(classify_return_map(Mat2{{{-2, 0}, {0, -0.5}}}), ReturnMapType::NegativeHyperbolic);
  EXPECT_EQ(classify_return_map(Mat2{{{1, 0}, {0, 1}}}), ReturnMapType::Degenerate);
  EXPECT_THROW(classify_return_map(Mat2{{{2, 0}, {0, 1}}}), std::invalid_argument);
}

TEST(Laurent, Examples) {
  const auto a = laurent_classify({0, 2}, kC);
  EXPECT_EQ(a.n_view.behavior, EndBehavior::Extends);
  EXPECT_EQ(a.n_view.multiplicity, 2);
  EXPECT_EQ(a.n_hat_view.behavior, EndBehavior::NegativeEnd);
  EXPECT_EQ(a.n_hat_view.multiplicity, 2);
  EXPECT_EQ(a.n_hat_view.describe(), "converges to gamma_hat^2 at -inf");

  const auto b = laurent_classify({3, 0}, kC);
  EXPECT_EQ(b.n_view.behavior, EndBehavior::PositiveEnd);
  EXPECT_EQ(b.n_view.multiplicity, 3);
  EXPECT_EQ(b.n_hat_view.behavior, EndBehavior::Extends);
  EXPECT_EQ(b.n_hat_view.multiplicity, 3);

  EXPECT_THROW(laurent_classify({-1, 2}, 3.0), std::invalid_argument);
}

TEST(Laurent, SignTable) {
  // c = 3 makes c n1 + n2 > 0 reachable for (+, -); (-, +) needs n2 > 3.
  struct Case { std::int64_t n1, n2; EndBehavior n, hat; };
  const Case cases[] = {
      {2, 1, EndBehavior::PositiveEnd, EndBehavior::NegativeEnd},
      {2, 0, EndBehavior::PositiveEnd, EndBehavior::Extends},
      {2, -1, EndBehavior::PositiveEnd, EndBehavior::PositiveEnd},
      {0, 1, EndBehavior::Extends, EndBehavior::NegativeEnd},
      {-1, 5, EndBehavior::NegativeEnd, EndBehavior::NegativeEnd},
  };
  for (const auto& k : cases) {
    const auto v = laurent_classify({k.n1, k.n2}, 3.0);
    EXPECT_EQ(v.n_view.behavior, k.n) << k.n1 << "," << k.n2;
    EXPECT_EQ(v.n_hat_view.behavior, k.hat) << k.n1 << "," << k.n2;
  }
  for (auto [n1, n2] : {std::pair{0, 0}, {0, -1}, {-1, 0}, {-1, -1}}) {
    EXPECT_THROW(laurent_classify({n1, n2}, 3.0), std::invalid_argument);
  }
}

TEST(Laurent, InterPairing) {
  for (std::int64_t n2 = 1; n2 <= 20; ++n2) {
    const auto v = laurent_classify({0, n2}, kC);
    EXPECT_EQ(v.n_hat_view.multiplicity, v.n_view.multiplicity);
  }
}

}  // namespace
