#include <catch2/catch_amalgamated.hpp>

#include "glopt/stepsizes.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace glopt;
using namespace glopt::testing;
using Catch::Approx;

TEST_CASE("fixed_step") {
  CHECK(fixed_step(4.0) == 0.25);
  CHECK(fixed_step(1.0) == 1.0);
  CHECK_THROWS_AS(fixed_step(0.0), InputError);
  CHECK_THROWS_AS(fixed_step(-2.0), InputError);
}

TEST_CASE("polyak_step values") {
  CHECK(*polyak_step(0.02625, 0.0, 0.005) == Approx(5.25).epsilon(1e-14));
  CHECK(*polyak_step(1.5, 1.5, 0.3) == 0.0);
  CHECK(*polyak_step(2.0, 0.0, 4.0) == Approx(0.5));  // f = x^2/2 at x = 2 steps to x = 1
  CHECK_FALSE(polyak_step(1.0, 0.0, 0.0).has_value());
  CHECK_THROWS_AS(polyak_step(1.0, 2.0, 1.0), InputError);
  CHECK_THROWS_AS(polyak_step(std::nan(""), 0.0, 1.0), InputError);
}

TEST_CASE("polyak step never exceeds 1/(2 mu) on strongly convex quadratics") {
  SplitMix64 rng(13);
  for (int rep = 0; rep < 5; ++rep) {
    const auto q = random_spd_quadratic(rng, 4, 0.8, 15.0);
    const double mu = *q.strong_convexity();
    const double fs = *q.optimum_value();
    for (int k = 0; k < 20; ++k) {
      const Vec w = random_vec(rng, 4, 2.0);
      const Vec g = q.gradient(w);
      if (g.squaredNorm() < 1e-14) continue;
      const double eta = *polyak_step(q.value(w), fs, g.squaredNorm());
      CHECK(eta <= 1.0 / (2.0 * mu) * (1.0 + 1e-9));
    }
  }
}

namespace {

AdgdState state_with(double eta_prev, double theta_prev, Vec w_prev, Vec g_prev) {
  AdgdState s;
  s.eta_prev = eta_prev;
  s.theta_prev = theta_prev;
  s.w_prev = std::move(w_prev);
  s.g_prev = std::move(g_prev);
  s.first = false;
  return s;
}

}  // namespace

TEST_CASE("adgd_step takes the binding minimum of growth and curvature") {
  Vec w0 = Vec::Zero(2), g0 = Vec::Zero(2);
  Vec w1(2), g1(2);
  w1 << 1.0, 0.0;  // ||dw|| = 1
  g1 << 10.0, 0.0;  // ||dg|| = 10
  const auto [eta, next] = adgd_step(state_with(0.1, 1.0, w0, g0), w1, g1);
  CHECK(eta == Approx(0.05));  // min(0.1 sqrt(1.5), 1/20)
  CHECK(next.theta_prev == Approx(0.5));
  CHECK_FALSE(next.first);
}

TEST_CASE("adgd_step grows freely when the gradient does not move") {
  Vec w0 = Vec::Zero(2);
  Vec g(2);
  g << 1.0, -1.0;
  Vec w1(2);
  w1 << 0.3, 0.3;
  const auto [eta, next] = adgd_step(state_with(0.2, 2.0, w0, g), w1, g);
  CHECK(eta == Approx(std::sqrt(2.0) * 0.2));
  (void)next;
}

TEST_CASE("adgd curvature term settles at 1/(2L) on a quadratic") {
  // On f = (1/2) L x^2 gradients scale exactly with iterates.
  const double l = 8.0;
  Vec w0(1), w1(1);
  w0 << 2.0;
  w1 << 1.3;
  const Vec g0 = l * w0, g1 = l * w1;
  const auto [eta, next] = adgd_step(state_with(1.0, 1.0, w0, g0), w1, g1);
  (void)next;
  CHECK(eta == Approx(1.0 / (2.0 * l)));
}

TEST_CASE("adgd growth and curvature bounds hold along a random sequence") {
  SplitMix64 rng(29);
  AdgdState st = AdgdState::initial(1e-10, random_vec(rng, 3), random_vec(rng, 3));
  for (int k = 0; k < 50; ++k) {
    const Vec w = random_vec(rng, 3);
    const Vec g = random_vec(rng, 3);
    const bool first = st.first;
    const double eta_prev = st.eta_prev, theta_prev = st.theta_prev;
    const Vec dw = w - st.w_prev;
    const Vec dg = g - st.g_prev;
    const auto [eta, next] = adgd_step(st, w, g);
    if (!first) CHECK(eta <= std::sqrt(1.0 + 0.5 * theta_prev) * eta_prev * (1.0 + 1e-12));
    if (dg.norm() > 0.0) CHECK(eta * dg.norm() <= 0.5 * dw.norm() * (1.0 + 1e-12));
    st = next;
  }
}

TEST_CASE("adgd first update uses the curvature estimate alone") {
  Vec w0(1), g0(1), w1(1), g1(1);
  w0 << 0.0;
  g0 << 4.0;
  w1 << -4e-10;  // w0 - 1e-10 * g0
  g1 << 3.9;
  const AdgdState st = AdgdState::initial(1e-10, w0, g0);
  const auto [eta, next] = adgd_step(st, w1, g1);
  (void)next;
  CHECK(eta == Approx((w1 - w0).norm() / (2.0 * (g1 - g0).norm())));
}
