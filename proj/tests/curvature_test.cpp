#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "bd/curvature.hpp"
#include "bd/errors.hpp"
#include "bd/pmf.hpp"
#include "bd/random_inputs.hpp"

using namespace bd;

TEST_CASE("Poisson curvature profile is constant 1/lambda") {
  for (double lambda : {0.5, 1.0, 2.0, 10.0}) {
    TruncatedPmf v = pmf_poisson(lambda);
    std::vector<double> profile = curvature_profile(v);
    REQUIRE(profile.size() == size_t(v.max_index()));
    for (double e : profile) CHECK(std::abs(e - 1.0 / lambda) <= 1e-10);
    CHECK(std::abs(c_log_concave_constant(v) - 1.0 / lambda) <= 1e-10);
  }
}

TEST_CASE("profile matches a direct ratio computation on a rough pmf") {
  TruncatedPmf v = random_pmf(12, 99);
  std::vector<double> profile = curvature_profile(v);
  for (int x = 0; x < v.max_index(); ++x) {
    double down = (x == 0) ? 0.0 : v.at(x - 1) / v.at(x);
    double ref = v.at(x) / v.at(x + 1) - down;
    CHECK(profile[size_t(x)] == doctest::Approx(ref).epsilon(1e-14));
  }
}

TEST_CASE("ULC detection: Poisson-binomial yes, geometric no") {
  CHECK(is_ulc(pmf_bernoulli_sum({0.2, 0.4, 0.6})));
  CHECK(is_ulc(pmf_poisson(2.0)));
  // Geometric weights: x V(x)^2 < (x+1) V(x-1) V(x+1) at every interior site.
  CHECK_FALSE(is_ulc(pmf_negative_binomial(1.0, 0.5)));
  // A two-point pmf with a spread-out hole is not ULC.
  CHECK_FALSE(is_ulc(pmf_from_weights({1.0, 0.0, 1.0})));
}

TEST_CASE("for ULC pmfs the profile infimum sits at the origin") {
  for (unsigned long long seed = 0; seed < 30; ++seed) {
    TruncatedPmf v = random_ulc_pmf(seed);
    REQUIRE(is_ulc(v));
    double c = c_log_concave_constant(v);
    double bound = ulc_c_bound(v);
    CHECK(bound == doctest::Approx(v.at(0) / v.at(1)).epsilon(1e-15));
    CHECK(c >= bound - 1e-12 * std::max(1.0, bound));
    CHECK(c <= bound + 1e-10 * std::max(1.0, bound));
  }
}

TEST_CASE("curvature infimum never exceeds one over the mean") {
  for (unsigned long long seed = 100; seed < 140; ++seed) {
    TruncatedPmf v = random_ulc_pmf(seed);
    CHECK(mean_bound_check(v));
    CHECK(c_log_concave_constant(v) <= 1.0 / v.mean() + 1e-10);
  }
  // Equality for Poisson: c_inf = 1/lambda = 1/mean up to the tail deficit.
  for (double lambda : {0.5, 2.0}) {
    TruncatedPmf v = pmf_poisson(lambda);
    CHECK(std::abs(c_log_concave_constant(v) - 1.0 / v.mean()) <= 1e-10);
  }
}

TEST_CASE("nondecreasing-profile certificate") {
  // Constant profile (Poisson) passes.
  CHECK(curvature_increasing_check(pmf_poisson(1.5)));
  // A pmf whose profile dips after the origin fails. weights 1,8,1,4:
  // E(0)=1/8, E(1)=8-1/8, E(2)=1/4-8 < E(1).
  CHECK_FALSE(curvature_increasing_check(pmf_from_weights({1.0, 8.0, 1.0, 4.0})));
}

TEST_CASE("report aggregates the individual checks coherently") {
  TruncatedPmf v = pmf_poisson(2.0);
  CurvatureReport rep = curvature_report(v);
  CHECK(rep.ulc);
  REQUIRE(rep.ulc_c.has_value());
  CHECK(*rep.ulc_c == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rep.c_inf == doctest::Approx(0.5).epsilon(1e-10));
  // The profile is constant up to rounding, so only consistency of the argmin
  // with the reported infimum is meaningful.
  CHECK(rep.profile[size_t(rep.argmin)] == rep.c_inf);
  CHECK(rep.mean_bound_ok);
  CHECK(rep.increasing);

  // Truncated geometric: profile minimum is pinned to the window end.
  CurvatureReport geo = curvature_report(pmf_negative_binomial(1.0, 0.5));
  CHECK_FALSE(geo.ulc);
}

TEST_CASE("full support is required for a profile") {
  TruncatedPmf v = pmf_from_weights({1.0, 0.0, 1.0});
  CHECK_THROWS_AS(curvature_profile(v), NotFullSupport);
  CHECK_THROWS_AS(ulc_c_bound(v), InvalidParameter);
}

TEST_CASE("convolution probe reports well-formed exploratory statistics") {
  ConvolutionProbeResult res = convolution_conjecture_probe(8, 42);
  CHECK(res.samples == 8);
  CHECK(res.min_product <= res.max_product);
  CHECK(res.min_product > 0.0);
  // Deterministic in the seed.
  ConvolutionProbeResult res2 = convolution_conjecture_probe(8, 42);
  CHECK(res.min_product == res2.min_product);
  CHECK(res.max_product == res2.max_product);
}
