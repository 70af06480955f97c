#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "betacoal/coupling_lab.hpp"
#include "betacoal/stats.hpp"

using namespace betacoal;

TEST_SUITE("coupling_lab") {
  TEST_CASE("stationary renewal points and delay law") {
    const Model model(make_alpha_params(1.5));
    RandomStream s(1, 0);
    CHECK_THROWS_AS(stationary_renewal(1, s, model), std::invalid_argument);
    const std::int64_t n = 100000;
    std::int64_t at2 = 0, at3 = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      const RenewalProcess r = stationary_renewal(50, s, model);
      REQUIRE(r.window_end == 50);
      for (std::size_t j = 0; j < r.points.size(); ++j) {
        REQUIRE(r.points[j] >= 2);
        REQUIRE(r.points[j] <= 50);
        if (j > 0) REQUIRE(r.points[j] > r.points[j - 1]);
      }
      if (!r.points.empty()) {
        at2 += r.points.front() == 2;
        at3 += r.points.front() == 3;
      }
    }
    CHECK(std::abs(at2 / double(n) - 0.5) < 4.0 * std::sqrt(0.25 / n));
    CHECK(std::abs(at3 / double(n) - 0.125) < 4.0 * std::sqrt(0.125 * 0.875 / n));
  }

  TEST_CASE("renewal increments follow the V law") {
    const Model model(make_alpha_params(1.5));
    RandomStream s(2, 0);
    std::vector<double> gaps, direct;
    while (gaps.size() < 200000) {
      const RenewalProcess r = stationary_renewal(100000, s, model);
      for (std::size_t j = 1; j < r.points.size(); ++j) {
        gaps.push_back(static_cast<double>(r.points[j] - r.points[j - 1]));
      }
    }
    RandomStream t(3, 0);
    for (std::size_t i = 0; i < gaps.size(); ++i) {
      direct.push_back(static_cast<double>(sample_v(t, model)));
    }
    const auto n = static_cast<std::int64_t>(gaps.size());
    CHECK(ks_two_sample(gaps, direct) < ks_critical_value(n, n, 0.01));
  }

  TEST_CASE("renewal gaps read both ways have the same law") {
    const Model model(make_alpha_params(1.5));
    RandomStream s(4, 0);
    const RenewalProcess r = stationary_renewal(100000, s, model);
    std::vector<double> forward, backward;
    for (std::size_t j = 1; j < r.points.size(); ++j) {
      forward.push_back(static_cast<double>(r.points[j] - r.points[j - 1]));
    }
    backward.assign(forward.rbegin(), forward.rend());
    CHECK(ks_two_sample(forward, backward) <= 0.02);

    // Distances to the two window edges share one law.
    std::vector<double> left, right;
    const std::int64_t n = 1000;
    for (std::uint64_t i = 0; left.size() < 20000; ++i) {
      RandomStream t(5, i);
      const RenewalProcess w = stationary_renewal(n, t, model);
      if (w.points.empty()) continue;
      left.push_back(static_cast<double>(w.points.front() - 1));
      right.push_back(static_cast<double>(n + 1 - w.points.back()));
    }
    CHECK(ks_two_sample(left, right) < ks_critical_value(20000, 20000, 0.01));
  }

  TEST_CASE("renewal occupancy is alpha - 1") {
    const Model model(make_alpha_params(1.5));
    const double occ = renewal_occupancy(100, 10000, 300, 17, model);
    CHECK(occ == doctest::Approx(0.5).epsilon(0.02));
    CHECK_THROWS_AS(renewal_occupancy(1, 10, 5, 1, model), std::invalid_argument);
  }

  TEST_CASE("block coupling boundary cases") {
    const Model model(make_alpha_params(1.5));
    RandomStream s(5, 0);
    const BlockCouplingResult idle = big_coupling_block(10, 300, 300, s, model);
    CHECK(idle.steps_x == 0);
    CHECK(idle.steps_y == 0);
    CHECK(idle.mu_atoms.empty());
    CHECK(idle.nu_atoms.empty());
    CHECK(idle.d_r == 0);
    CHECK(idle.end_x == 300);
    CHECK_THROWS_AS(big_coupling_block(10, 1025, 3, s, model), std::invalid_argument);
    CHECK_THROWS_AS(big_coupling_block(10, 3, 0, s, model), std::invalid_argument);
    CHECK_THROWS_AS(big_coupling_block(0, 1, 1, s, model), std::invalid_argument);
  }

  TEST_CASE("block coupling invariants") {
    const Model model(make_alpha_params(1.5));
    const int r = 8;
    const std::int64_t top = 256, half = 128;
    for (std::uint64_t i = 0; i < 3000; ++i) {
      RandomStream s(6, i);
      const std::int64_t m = 1 + static_cast<std::int64_t>(s.uniform() * top);
      const std::int64_t mp = 1 + static_cast<std::int64_t>(s.uniform() * top);
      const BlockCouplingResult res = big_coupling_block(r, m, mp, s, model);
      REQUIRE(std::abs(res.steps_x - res.steps_y) <= res.d_r);
      REQUIRE(res.end_x <= half);
      REQUIRE(res.end_y <= half);
      REQUIRE(res.end_y >= 1);
      REQUIRE(res.mu_atoms.size() == static_cast<std::size_t>(res.steps_x));
      REQUIRE(res.nu_atoms.size() == static_cast<std::size_t>(res.steps_y));
      for (const auto x : res.mu_atoms) REQUIRE((x > half && x <= top));
      for (const auto y : res.nu_atoms) REQUIRE((y > half && y <= top));
    }
  }

  TEST_CASE("the coupling shrinks the discrepancy") {
    const Model model(make_alpha_params(1.5));
    std::vector<double> coupled, independent;
    for (std::uint64_t i = 0; i < 2000; ++i) {
      RandomStream a(7, i), b(8, i);
      coupled.push_back(
          static_cast<double>(big_coupling_block(10, 1024, 1000, a, model).d_r));
      independent.push_back(static_cast<double>(
          big_coupling_block(10, 1024, 1000, b, model, CouplingMode::independent).d_r));
    }
    CHECK(median(coupled) < median(independent));
  }

  TEST_CASE("empirical law") {
    CHECK_THROWS_AS(EmpiricalLaw(std::vector<std::int64_t>{}), std::invalid_argument);
    const EmpiricalLaw law({5, 1, 3, 3});
    CHECK(law.values() == std::vector<std::int64_t>{1, 3, 3, 5});
    CHECK(law.survival(0) == 1.0);
    CHECK(law.survival(3) == 0.25);
    CHECK(law.survival(5) == 0.0);
    CHECK(law.max() == 5);
    RandomStream s(9, 0);
    for (int i = 0; i < 100; ++i) {
      const auto x = law.sample(s);
      CHECK((x == 1 || x == 3 || x == 5));
    }
  }

  TEST_CASE("window maximum laws stay below b") {
    const Model model(make_alpha_params(1.5));
    const WindowMaxLaws laws = window_max_laws(64, 300, 10, model);
    CHECK(laws.cpp_max.size() == 300);
    CHECK(laws.cpp_max.max() <= 64);
    CHECK(laws.renewal_max.max() <= 64);
    CHECK(laws.renewal_max.values().front() >= 1);
    CHECK_THROWS_AS(window_max_laws(1, 10, 1, model), std::invalid_argument);
    CHECK_THROWS_AS(window_max_laws(64, 10, 1, model, 1, 64), std::invalid_argument);
  }

  TEST_CASE("renewal window maximum follows the delay law") {
    const AlphaParams p = make_alpha_params(1.5);
    const Model model(p);
    const std::int64_t b = 64, trials = 5000;
    const WindowMaxLaws laws = window_max_laws(b, trials, 11, model);
    // b - M' > t  iff  R_1 - 2 > t, with P(R_1 >= r) = (r-1) P(V >= r-1).
    for (const std::int64_t t : {0, 1, 5, 20}) {
      const double expected = static_cast<double>(t + 2) * v_tail(t + 2, p);
      const double observed = 1.0 - laws.renewal_max.survival(b - t - 1);
      CAPTURE(t);
      CHECK(std::abs(observed - expected) <=
            4.0 * std::sqrt(expected * (1.0 - expected) / trials));
    }
    // Chain side: P(b - M > t) <= sum_{k >= t} P(V >= k), sum truncated at 10^6.
    for (const std::int64_t t : {2, 5, 20}) {
      double bound = 0.0;
      for (std::int64_t k = t; k <= 1000000; ++k) bound += v_tail(k, p);
      CHECK(1.0 - laws.cpp_max.survival(b - t - 1) <= bound);
    }
  }

  TEST_CASE("mismatch rate") {
    const Model model(make_alpha_params(1.5));
    CHECK_THROWS_AS(mismatch_rate(10, 999, 1, model), std::invalid_argument);
    const MismatchEstimate small = mismatch_rate(10, 100000, 1, model);
    const double exact = mismatch_probability(10, model.params());
    CHECK(std::abs(small.rate - exact) <= 4.0 / 3.0 * small.ci_halfwidth);
    CHECK(small.rate <= 0.2 + small.ci_halfwidth);
    const MismatchEstimate large = mismatch_rate(1000, 200000, 2, model);
    CHECK(large.rate <= 0.002 + large.ci_halfwidth);
    CHECK(small.rate - small.ci_halfwidth > large.rate + large.ci_halfwidth);
  }

  TEST_CASE("conditional tail given a mismatch") {
    const Model model(make_alpha_params(1.5));
    const MismatchTailCurve curve = conditional_tail_given_mismatch(100, 1000000, 3, model);
    REQUIRE_FALSE(curve.insufficient_data);
    CHECK(curve.k.front() == 1);
    CHECK(curve.tail.front() == 1.0);
    for (std::size_t i = 1; i < curve.tail.size(); ++i) CHECK(curve.tail[i] <= curve.tail[i - 1]);
    CHECK(curve.fitted_exponent >= 1.0 - 1.5 - 0.3);
    CHECK(curve.fitted_exponent <= 1.0 - 1.5 + 0.3);
    const MismatchTailCurve thin = conditional_tail_given_mismatch(1000, 1000, 3, model);
    CHECK(thin.insufficient_data);
  }

  TEST_CASE("log-log slope fit") {
    std::vector<std::int64_t> k = {1, 2, 4, 8, 16};
    std::vector<double> t;
    for (const auto x : k) t.push_back(3.0 * std::pow(static_cast<double>(x), -0.5));
    CHECK(fit_log_log_slope(k, t, 1, 16) == doctest::Approx(-0.5));
    CHECK(std::isnan(fit_log_log_slope(k, t, 100, 200)));
  }
}
