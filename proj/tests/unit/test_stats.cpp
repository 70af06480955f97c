#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "betacoal/sampling.hpp"
#include "betacoal/stats.hpp"

using namespace betacoal;

TEST_SUITE("stats") {
  TEST_CASE("two-sample KS examples") {
    const std::vector<double> a = {1.0, 2.0, 3.0};
    CHECK(ks_two_sample(a, a) == 0.0);
    const std::vector<double> neg = {-3.0, -2.0, -0.5};
    const std::vector<double> pos = {1.5, 2.0};
    CHECK(ks_two_sample(neg, pos) == 1.0);
    const std::vector<double> x = {1.0, 2.0};
    const std::vector<double> y = {1.5};
    CHECK(ks_two_sample(x, y) == doctest::Approx(0.5));
    const std::vector<double> empty;
    CHECK_THROWS_AS(ks_two_sample(empty, a), std::invalid_argument);
    CHECK_THROWS_AS(ks_two_sample(a, empty), std::invalid_argument);
  }

  TEST_CASE("KS handles ties") {
    const std::vector<double> a = {1.0, 1.0, 2.0, 2.0};
    const std::vector<double> b = {1.0, 2.0, 2.0, 2.0};
    CHECK(ks_two_sample(a, b) == doctest::Approx(0.25));
  }

  TEST_CASE("KS is symmetric and invariant under increasing maps") {
    RandomStream s(1, 0);
    std::vector<double> a, b, ea, eb;
    for (int i = 0; i < 500; ++i) a.push_back(sample_normal(s));
    for (int i = 0; i < 300; ++i) b.push_back(0.2 + sample_normal(s));
    for (const double v : a) ea.push_back(std::exp(v));
    for (const double v : b) eb.push_back(std::exp(v));
    CHECK(ks_two_sample(a, b) == ks_two_sample(b, a));
    CHECK(ks_two_sample(a, b) == ks_two_sample(ea, eb));
  }

  TEST_CASE("KS critical value") {
    CHECK(ks_critical_value(1000, 1000, 0.01) == doctest::Approx(0.0728).epsilon(1e-3));
    CHECK(ks_critical_value(2000, 2000, 0.01) == doctest::Approx(0.0515).epsilon(1e-3));
    CHECK_THROWS(ks_critical_value(0, 10, 0.01));
    CHECK_THROWS(ks_critical_value(10, 10, 1.5));
  }

  TEST_CASE("Hill estimator on Pareto data") {
    RandomStream s(2, 0);
    std::vector<double> x;
    for (int i = 0; i < 100000; ++i) x.push_back(std::pow(s.uniform(), -1.0 / 1.5));
    const double h = hill_tail_index(x, 1000, TailSide::right);
    CHECK(h >= 1.35);
    CHECK(h <= 1.65);
    std::vector<double> scaled;
    for (const double v : x) scaled.push_back(7.0 * v);
    CHECK(hill_tail_index(scaled, 1000, TailSide::right) == doctest::Approx(h).epsilon(1e-12));
    std::vector<double> mirrored;
    for (const double v : x) mirrored.push_back(-v);
    CHECK(hill_tail_index(mirrored, 1000, TailSide::left) == doctest::Approx(h));
    CHECK_THROWS_AS(hill_tail_index(x, 0, TailSide::right), std::invalid_argument);
    CHECK_THROWS_AS(hill_tail_index(x, 100000, TailSide::right), std::invalid_argument);
    CHECK_THROWS_AS(hill_tail_index(x, 10, TailSide::left), std::invalid_argument);
    const auto sweep = hill_sensitivity(x, TailSide::right);
    REQUIRE(sweep.size() == 3);
    CHECK(sweep[1].k_order == hill_default_k(x.size()));
  }

  TEST_CASE("Hill estimator on model samples") {
    const Model model(make_alpha_params(1.5));
    RandomStream s(3, 0);
    std::vector<double> v, st;
    for (int i = 0; i < 100000; ++i) {
      v.push_back(static_cast<double>(sample_v(s, model)));
      st.push_back(sample_stable(s, model.params()));
    }
    const double hv = hill_tail_index(v, hill_default_k(v.size()), TailSide::right);
    const double hs = hill_tail_index(st, hill_default_k(st.size()), TailSide::left);
    CHECK(hv >= 1.2);
    CHECK(hv <= 1.8);
    CHECK(hs >= 1.2);
    CHECK(hs <= 1.8);
  }

  TEST_CASE("location summaries") {
    const std::vector<double> x = {3.0, 1.0, 2.0, 10.0};
    CHECK(mean(x) == 4.0);
    CHECK(median(x) == 2.5);
    CHECK(sample_variance(x) == doctest::Approx(50.0 / 3.0));
    std::vector<double> batches;
    for (int b = 0; b < 10; ++b) {
      for (int i = 0; i < 5; ++i) batches.push_back(b);
    }
    CHECK(median_of_batch_means(batches) == 4.5);
    CHECK_THROWS(median_of_batch_means(x));
    CHECK_THROWS(mean(std::vector<double>{}));
    CHECK(empirical_cdf_below(x, 2.5) == 0.5);
    const auto cf = empirical_cf(std::vector<double>{0.0, 0.0}, 3.0);
    CHECK(cf.real() == 1.0);
    CHECK(cf.imag() == 0.0);
  }
}
