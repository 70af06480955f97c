#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "betacoal/limits.hpp"
#include "betacoal/stats.hpp"

using namespace betacoal;

TEST_SUITE("limits") {
  TEST_CASE("regime classification") {
    auto r = classify_regime(make_alpha_params(1.4));
    CHECK(r.theorem1_case == Regime::I);
    CHECK(r.corollary_case == Regime::I);
    r = classify_regime(make_alpha_params(1.5));
    CHECK(r.theorem1_case == Regime::I);
    CHECK(r.corollary_case == Regime::III);
    r = classify_regime(make_alpha_params(AlphaTag::golden));
    CHECK(r.theorem1_case == Regime::II);
    CHECK(r.corollary_case == Regime::III);
    CHECK(r.length_log_power == doctest::Approx(1.0 / kGoldenRatio));
    r = classify_regime(make_alpha_params(AlphaTag::sqrt2));
    CHECK(r.theorem1_case == Regime::I);
    CHECK(r.corollary_case == Regime::II);
    r = classify_regime(make_alpha_params(1.7));
    CHECK(r.theorem1_case == Regime::III);
    CHECK(r.corollary_case == Regime::III);
    CHECK(r.length_scale_exponent == 0.0);
    CHECK(r.sites_scale_exponent == doctest::Approx(0.15));
  }

  TEST_CASE("sites case I implies length case I") {
    for (double a = 1.01; a < 2.0; a += 0.01) {
      const auto r = classify_regime(make_alpha_params(a));
      if (r.corollary_case == Regime::I) CHECK(r.theorem1_case == Regime::I);
    }
  }

  TEST_CASE("normalize_length") {
    for (const double a : {1.3, 1.5, 1.8}) {
      const AlphaParams p = make_alpha_params(a);
      CHECK(normalize_length(length_centering(1000, p), 1000, p) == doctest::Approx(0.0));
    }
    const AlphaParams p = make_alpha_params(1.5);
    const double c = length_centering(10000, p);
    CHECK(normalize_length(c + 1.0, 10000, p) ==
          doctest::Approx(1.0 / std::pow(10.0, 4.0 / 6.0)).epsilon(1e-12));
    CHECK(std::pow(10.0, 4.0 / 6.0) == doctest::Approx(4.6416).epsilon(1e-4));
    const AlphaParams q = make_alpha_params(1.8);
    CHECK(normalize_length(7.5, 500, q) - normalize_length(5.0, 500, q) == doctest::Approx(2.5));
    const AlphaParams g = make_alpha_params(AlphaTag::golden);
    CHECK(normalize_length(length_centering(100, g) + 1.0, 100, g) ==
          doctest::Approx(std::pow(std::log(100.0), -1.0 / kGoldenRatio)));
    CHECK_THROWS_AS(normalize_length(1.0, 1, p), std::invalid_argument);
    // Monotone in the statistic.
    double prev = -INFINITY;
    for (double x = 0.0; x < 300.0; x += 7.0) {
      const double y = normalize_length(x, 1000, p);
      CHECK(y > prev);
      prev = y;
    }
  }

  TEST_CASE("normalize_sites") {
    const AlphaParams p = make_alpha_params(1.7);
    const double center = length_centering(10000, p);
    CHECK(normalize_sites(0, 10000, 1.0, p) ==
          doctest::Approx(-center / std::pow(10.0, 0.6)).epsilon(1e-12));
    CHECK(std::pow(10.0, 0.6) == doctest::Approx(3.9811).epsilon(1e-4));
    CHECK_THROWS_AS(normalize_sites(3, 100, 0.0, p), std::invalid_argument);
    // Case I scale exceeds the normal scale below sqrt 2.
    const auto r = classify_regime(make_alpha_params(1.3));
    CHECK(r.sites_scale_exponent > 1.0 - 1.3 / 2.0);
    double prev = -INFINITY;
    for (std::int64_t s = 0; s < 100; s += 3) {
      const double y = normalize_sites(s, 1000, 2.0, p);
      CHECK(y > prev);
      prev = y;
    }
  }

  TEST_CASE("reference samples") {
    RandomStream s(1, 0);
    const AlphaParams p17 = make_alpha_params(1.7);
    const auto r17 = classify_regime(p17);
    CHECK(reference_sample(r17, LimitQuantity::sites, 1.0, 0, s, p17).empty());
    CHECK_THROWS_AS(reference_sample(r17, LimitQuantity::length, 1.0, 10, s, p17),
                    std::invalid_argument);
    const auto normal = reference_sample(r17, LimitQuantity::sites, 1.0, 100000, s, p17);
    CHECK(sample_variance(normal) == doctest::Approx(p17.c1).epsilon(0.03));

    const AlphaParams ps = make_alpha_params(AlphaTag::sqrt2);
    const auto mixed =
        reference_sample(classify_regime(ps), LimitQuantity::sites, 1.0, 100000, s, ps);
    CHECK(sample_variance(mixed) >= ps.c1 * (1.0 - 3.0 * std::sqrt(2.0 / 100000.0)));

    // Left tail index of the stable reference.
    const AlphaParams p14 = make_alpha_params(1.4);
    const auto len =
        reference_sample(classify_regime(p14), LimitQuantity::length, 1.0, 100000, s, p14);
    const double h = hill_tail_index(len, hill_default_k(len.size()), TailSide::left);
    CHECK(h == doctest::Approx(1.4).epsilon(0.15));
  }

  TEST_CASE("weighted V-sum statistic") {
    const AlphaParams p = make_alpha_params(1.5);
    const std::vector<double> centered = {p.gamma_const};
    CHECK(lemma52_statistic_from(centered, p) == 0.0);
    const std::vector<double> v = {1.0, 3.0, 2.0};
    const double expected = ((1.0 - 2.0) + std::pow(2.0, -0.5) * 1.0 + 0.0) *
                            std::pow(3.0, 1.5 - 1.0 - 1.0 / 1.5);
    CHECK(lemma52_statistic_from(v, p) == doctest::Approx(expected));
    CHECK_THROWS_AS(lemma52_statistic_from(v, make_alpha_params(1.8)), std::invalid_argument);
    CHECK_NOTHROW(lemma52_statistic_from(v, make_alpha_params(AlphaTag::golden)));

    const Model model(p);
    std::vector<double> stats;
    for (std::uint64_t r = 0; r < 2000; ++r) {
      RandomStream s(2, r);
      stats.push_back(lemma52_statistic(10000, s, model));
    }
    CHECK(std::abs(median_of_batch_means(stats)) <= 0.15);
  }

  TEST_CASE("weighted partial sums") {
    const AlphaParams p = make_alpha_params(1.5);
    const std::vector<double> flat(50, p.gamma_const);
    const auto zero = lemma51_partial_sums_from(1.0, flat, p);
    CHECK(zero.size() == 50);
    for (const double z : zero) CHECK(z == 0.0);
    CHECK(tail_oscillation(std::vector<double>{}) == 0.0);
    CHECK(tail_oscillation(std::vector<double>{5.0, 1.0, 2.0, 4.0}) == doctest::Approx(2.0));

    // beta > 1/alpha: the oscillation over the second half shrinks.
    const Model model(p);
    std::vector<double> osc_small, osc_large;
    for (std::uint64_t r = 0; r < 50; ++r) {
      RandomStream s(3, r), t(6, r);
      osc_small.push_back(tail_oscillation(lemma51_partial_sums(1.0, 1000, s, model)));
      osc_large.push_back(tail_oscillation(lemma51_partial_sums(1.0, 100000, t, model)));
    }
    CHECK(median(osc_large) < 0.5 * median(osc_small));

    // beta <= 1/alpha: growth no faster than n^(1/alpha - beta + 0.1).
    const double beta = 0.5;
    std::vector<double> small, large;
    for (std::uint64_t r = 0; r < 200; ++r) {
      RandomStream s(4, r), t(5, r);
      small.push_back(std::abs(lemma51_partial_sums(beta, 1000, s, model).back()));
      large.push_back(std::abs(lemma51_partial_sums(beta, 100000, t, model).back()));
    }
    const double exponent = std::log(median(large) / median(small)) / std::log(100.0);
    CHECK(exponent <= 1.0 / 1.5 - beta + 0.1);
  }
}
