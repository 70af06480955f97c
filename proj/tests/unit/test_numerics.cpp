#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "betacoal/numerics.hpp"

using namespace betacoal;

namespace {

// ln Gamma reference values from a 30-digit evaluation.
struct LogGammaCase {
  double x;
  double value;
};

constexpr LogGammaCase kLogGamma[] = {
    {0.05, 2.968879201051730825},   {0.5, 0.5723649429247000871},
    {1.5, -0.1207822376352452223},  {2.5, 0.2846828704729191596},
    {7.2, 6.956848079888339973},    {100.5, 361.4355404677776216},
    {12345.678, 103959.9199055460609}, {1e7, 151180949.3694739139},
};

}  // namespace

TEST_SUITE("numerics") {
  TEST_CASE("log_gamma matches reference values") {
    for (const auto& c : kLogGamma) {
      CAPTURE(c.x);
      CHECK(log_gamma(c.x) == doctest::Approx(c.value).epsilon(1e-14));
    }
    CHECK(log_gamma(1.0001) == doctest::Approx(-5.771334222047762e-5).epsilon(1e-12));
  }

  TEST_CASE("log_gamma is exactly zero at 1 and 2") {
    CHECK(log_gamma(1.0) == 0.0);
    CHECK(log_gamma(2.0) == 0.0);
  }

  TEST_CASE("log_gamma agrees with the C library on a grid") {
    for (double x = 0.01; x < 300.0; x *= 1.07) {
      CAPTURE(x);
      const double ref = std::lgamma(x);
      CHECK(log_gamma(x) == doctest::Approx(ref).epsilon(1e-13).scale(1.0));
    }
  }

  TEST_CASE("log_gamma rejects nonpositive and nonfinite input") {
    CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
    CHECK_THROWS_AS(log_gamma(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
    CHECK_THROWS_AS(log_gamma(std::numeric_limits<double>::infinity()), std::domain_error);
  }

  TEST_CASE("log_gamma_ratio") {
    // Gamma(x+1)/Gamma(x) = x.
    for (const double x : {0.7, 3.0, 15.5, 1e4, 1e9}) {
      CAPTURE(x);
      CHECK(log_gamma_ratio(x, 1.0) == doctest::Approx(std::log(x)).epsilon(1e-13));
    }
    for (const double x : {2.0, 20.0, 200.0}) {
      for (const double a : {-0.5, 0.3, 1.5}) {
        CHECK(log_gamma_ratio(x, a) ==
              doctest::Approx(log_gamma(x + a) - log_gamma(x)).epsilon(1e-12).scale(1.0));
      }
    }
  }

  TEST_CASE("gamma_fn") {
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-15));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-13));
  }

  TEST_CASE("constants at alpha = 1.5") {
    const AlphaParams p = make_alpha_params(1.5);
    CHECK(p.gamma_const == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(p.c1 == doctest::Approx(1.329340388179137).epsilon(1e-14));
    CHECK(p.c2 == doctest::Approx(0.2858926011687267).epsilon(1e-14));
    REQUIRE(p.c_l52.has_value());
    CHECK(*p.c_l52 == doctest::Approx(1.720508027656199).epsilon(1e-14));
    CHECK(p.d_norm == doctest::Approx(0.8462843753216344).epsilon(1e-14));
    CHECK(p.sigma_alpha == doctest::Approx(std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-14));
    CHECK(std::pow(p.sigma(), 1.5) == doctest::Approx(p.sigma_alpha).epsilon(1e-14));
  }

  TEST_CASE("make_alpha_params validates the range") {
    for (const double bad : {1.0, 2.0, 0.5, 2.5, std::numeric_limits<double>::quiet_NaN()}) {
      CHECK_THROWS_AS(make_alpha_params(bad), std::invalid_argument);
    }
    CHECK_THROWS_AS(make_alpha_params(AlphaTag::none), std::invalid_argument);
  }

  TEST_CASE("symbolic tags") {
    const AlphaParams g = make_alpha_params(AlphaTag::golden);
    CHECK(g.tag == AlphaTag::golden);
    CHECK(g.alpha == kGoldenRatio);
    CHECK_FALSE(g.c_l52.has_value());
    const AlphaParams s = make_alpha_params(AlphaTag::sqrt2);
    CHECK(s.tag == AlphaTag::sqrt2);
    CHECK(s.alpha == kSqrt2);
    CHECK(s.c_l52.has_value());
    CHECK_FALSE(make_alpha_params(1.7).c_l52.has_value());
  }

  TEST_CASE("stable characteristic exponent") {
    const AlphaParams p = make_alpha_params(1.5);
    CHECK(std::abs(stable_cf_exponent(0.0, p)) == 0.0);
    for (const double u : {0.3, 1.0, 4.0}) {
      const auto psi = stable_cf_exponent(u, p);
      CHECK(psi.real() < 0.0);
      CHECK(psi.real() == doctest::Approx(-p.sigma_alpha * std::pow(u, 1.5)).epsilon(1e-14));
      const auto mirrored = stable_cf_exponent(-u, p);
      CHECK(mirrored.real() == doctest::Approx(psi.real()));
      CHECK(mirrored.imag() == doctest::Approx(-psi.imag()));
    }
  }
}
