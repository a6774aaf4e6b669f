#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "swarmkit/cognition.hpp"

using namespace swarmkit;
using namespace swarmkit::cognition;
using testing::vec;

namespace {

core::Neighborhood nb(std::vector<std::size_t> m) { return core::Neighborhood{std::move(m)}; }

}  // namespace

TEST_CASE("energy derivative") {
  CHECK(energy_derivative(vec({0, 0}), 0.15, 0.015) == doctest::Approx(-0.015));
  CHECK(energy_derivative(vec({2, 0}), 0.15, 0.015) == doctest::Approx(-0.615));
  const double one = energy_derivative(vec({1, 1}), 0.15, 0.015) + 0.015;
  const double two = energy_derivative(vec({2, 2}), 0.15, 0.015) + 0.015;
  CHECK(two == doctest::Approx(4.0 * one));
}

TEST_CASE("low energy fraction and adaptive threshold") {
  const std::vector<double> e{100, 30, 50, 40};
  CHECK(low_energy_fraction(e, nb({1, 2}), 40) == 0.5);
  CHECK(adaptive_threshold(e, nb({1, 2}), 40) == doctest::Approx(35.0));
  // 40 is not strictly below 40
  CHECK(low_energy_fraction(e, nb({2, 3}), 40) == 0.0);
  CHECK(adaptive_threshold(e, nb({2, 3}), 40) == 40.0);
  CHECK(low_energy_fraction(e, nb({1}), 40) == 1.0);
  CHECK(adaptive_threshold(e, nb({1}), 40) == 30.0);
  CHECK(low_energy_fraction(e, nb({}), 40) == 0.0);
  CHECK(adaptive_threshold(e, nb({}), 40) == 40.0);
}

TEST_CASE("sigmoid adaptation") {
  AdaptationParams p;
  CHECK(adaptive_delta(35, 35, p) == 1.25);
  CHECK(adaptive_delta(1e6, 35, p) == doctest::Approx(2.0));
  // 3 + 12 / (1 + e^-4) = 14.784165480454901...
  CHECK(adaptive_eta(40 + 4 / 0.5, 40, p) == doctest::Approx(14.784165480454901).epsilon(1e-14));

  double prev_d = adaptive_delta(-100, 40, p);
  double prev_e = adaptive_eta(-100, 40, p);
  for (double e = -99; e <= 100; e += 0.5) {
    const double d = adaptive_delta(e, 40, p);
    const double h = adaptive_eta(e, 40, p);
    CHECK(d >= prev_d);
    CHECK(h >= prev_e);
    CHECK(d >= p.delta_min);
    CHECK(d <= p.delta_max);
    CHECK(h >= p.eta_min);
    CHECK(h <= p.eta_max);
    prev_d = d;
    prev_e = h;
  }
  CHECK(adaptive_eta(30, 40, p) > p.eta_min);
  CHECK(adaptive_eta(50, 40, p) < p.eta_max);
}

TEST_CASE("apply adaptation") {
  std::mt19937_64 rng(1);
  const auto s = testing::random_states(rng, 10, 2);
  core::InteractionParams base;
  base.delta = 1.0;
  base.eta = 7.0;
  base.alpha = 1.5;
  const std::vector<core::InteractionParams> params(10, base);
  AdaptationParams p;

  const std::vector<double> high(10, 1000.0);
  const auto unchanged = apply_adaptation(s, high, params, p, false);
  for (const auto& q : unchanged) {
    CHECK(q.delta == 1.0);
    CHECK(q.eta == 7.0);
  }

  const auto up = apply_adaptation(s, high, params, p);
  for (const auto& q : up) {
    CHECK(q.delta > 0.99 * p.delta_max);
    CHECK(q.eta > 0.99 * p.eta_max);
    CHECK(q.alpha == 1.5);
    CHECK(q.radius == base.radius);
  }

  // Isolated agents compare against the global threshold and sit near the minima.
  std::vector<core::InteractionParams> isolated(10, base);
  for (auto& q : isolated) q.radius = 1e-6;
  const std::vector<double> low(10, -1000.0);
  for (const auto& q : apply_adaptation(s, low, isolated, p)) {
    CHECK(q.delta < 1.01 * p.delta_min);
    CHECK(q.eta < 1.01 * p.eta_min);
  }
  // With neighbors all below e_th the threshold collapses to the lowest
  // neighbor energy; equal energies then give the sigmoid midpoint.
  const auto mid = apply_adaptation(s, low, params, p);
  for (std::size_t i = 0; i < mid.size(); ++i) {
    if (core::neighborhood(i, s, base.radius).empty()) continue;
    const auto& q = mid[i];
    CHECK(q.delta == doctest::Approx(0.5 * (p.delta_min + p.delta_max)));
    CHECK(q.eta == doctest::Approx(0.5 * (p.eta_min + p.eta_max)));
  }
}
