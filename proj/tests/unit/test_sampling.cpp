#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "betacoal/sampling.hpp"
#include "betacoal/stats.hpp"

using namespace betacoal;

namespace {

// |empirical - p| within four binomial standard errors.
void check_frequency(std::int64_t hits, std::int64_t n, double p) {
  const double freq = static_cast<double>(hits) / static_cast<double>(n);
  CHECK(std::abs(freq - p) <= 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n)));
}

}  // namespace

TEST_SUITE("sampling") {
  TEST_CASE("streams are reproducible and distinct") {
    RandomStream a(42, 0), b(42, 0), c(42, 1), d(43, 0);
    bool differs_c = false, differs_d = false;
    for (int i = 0; i < 100; ++i) {
      const auto x = a.next_u64();
      CHECK(x == b.next_u64());
      differs_c = differs_c || x != c.next_u64();
      differs_d = differs_d || x != d.next_u64();
    }
    CHECK(differs_c);
    CHECK(differs_d);
    CHECK(derive_seed(1, "a") != derive_seed(1, "b"));
    CHECK(derive_seed(1, "a") == derive_seed(1, "a"));
    CHECK(derive_seed(1, "a") != derive_seed(2, "a"));
  }

  TEST_CASE("uniform lies in the open unit interval") {
    RandomStream s(7, 3);
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
      const double u = s.uniform();
      REQUIRE(u > 0.0);
      REQUIRE(u < 1.0);
      sum += u;
    }
    CHECK(sum / 100000.0 == doctest::Approx(0.5).epsilon(0.01));
  }

  TEST_CASE("V sampler frequencies") {
    const Model model(make_alpha_params(1.5));
    RandomStream s(1, 0);
    const std::int64_t n = 200000;
    std::int64_t ones = 0, twos = 0, big = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      const auto v = sample_v(s, model);
      REQUIRE(v >= 1);
      ones += v == 1;
      twos += v == 2;
      big += v >= 100;
    }
    check_frequency(ones, n, 0.75);
    check_frequency(twos, n, v_pmf(2, model.params()));
    check_frequency(big, n, v_tail(100, model.params()));
  }

  TEST_CASE("coupled pairs satisfy U <= V and the jump law") {
    const Model model(make_alpha_params(1.5));
    for (const std::int64_t m : {2, 3, 10, 200}) {
      RandomStream s(5, static_cast<std::uint64_t>(m));
      JumpDiagnostics diag;
      const std::int64_t n = 100000;
      std::int64_t ones = 0, mismatches = 0;
      for (std::int64_t i = 0; i < n; ++i) {
        const UVPair pair = sample_uv_pair(m, s, model, &diag);
        REQUIRE(pair.u >= 1);
        REQUIRE(pair.u <= m - 1);
        REQUIRE(pair.u <= pair.v);
        ones += pair.u == 1;
        mismatches += pair.u != pair.v;
      }
      CHECK(diag.calls == n);
      CHECK(diag.rejections == mismatches);
      check_frequency(ones, n, jump_law(m, model.params()).pmf(1));
      check_frequency(mismatches, n, mismatch_probability(m, model.params()));
    }
    RandomStream s(0, 0);
    CHECK_THROWS_AS(sample_uv_pair(1, s, model), std::invalid_argument);
  }

  TEST_CASE("inversion sampler") {
    const AlphaParams p = make_alpha_params(1.5);
    const JumpInversionSampler sampler(3, p);
    RandomStream s(9, 9);
    std::int64_t ones = 0;
    for (int i = 0; i < 100000; ++i) {
      const auto u = sampler(s);
      REQUIRE((u == 1 || u == 2));
      ones += u == 1;
    }
    check_frequency(ones, 100000, 0.9);
  }

  TEST_CASE("exponential, normal and Poisson") {
    RandomStream s(11, 0);
    std::vector<double> e, z;
    for (int i = 0; i < 100000; ++i) {
      e.push_back(sample_exponential(2.0, s));
      z.push_back(sample_normal(s));
    }
    CHECK(mean(e) == doctest::Approx(0.5).epsilon(0.02));
    CHECK(std::abs(mean(z)) < 0.015);
    CHECK(sample_variance(z) == doctest::Approx(1.0).epsilon(0.02));
    CHECK_THROWS_AS(sample_exponential(0.0, s), std::domain_error);

    for (const double mu : {0.0, 0.3, 4.0, 29.0, 31.0, 500.0, 1e6}) {
      std::vector<double> k;
      for (int i = 0; i < 20000; ++i) k.push_back(static_cast<double>(sample_poisson(mu, s)));
      CAPTURE(mu);
      const double se = std::sqrt(std::max(mu, 1e-12) / 20000.0);
      CHECK(std::abs(mean(k) - mu) <= 4.0 * se + 1e-12);
      if (mu > 0.0) CHECK(sample_variance(k) == doctest::Approx(mu).epsilon(0.05));
    }
    CHECK_THROWS_AS(sample_poisson(-1.0, s), std::domain_error);
    CHECK_THROWS_AS(sample_poisson(std::nan(""), s), std::domain_error);
  }

  TEST_CASE("stable sampler characteristic function and left tail") {
    const AlphaParams p = make_alpha_params(1.5);
    RandomStream s(13, 0);
    std::vector<double> x;
    for (int i = 0; i < 100000; ++i) x.push_back(sample_stable(s, p));
    for (const double u : {0.5, 1.0, 2.0}) {
      CHECK(std::abs(empirical_cf(x, u) - std::exp(stable_cf_exponent(u, p))) < 0.02);
    }
    const double left = empirical_cdf_below(x, -10.0) * std::pow(10.0, 1.5);
    CHECK(left > 0.8);
    CHECK(left < 1.2);
    CHECK(std::abs(median_of_batch_means(x)) < 0.1);
  }
}
