#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "bd/curvature.hpp"
#include "bd/errors.hpp"
#include "bd/gamma.hpp"
#include "bd/numerics.hpp"
#include "bd/pmf.hpp"
#include "bd/random_inputs.hpp"
#include "bd/semigroup.hpp"

using namespace bd;

namespace {

double weighted_sum(const TruncatedPmf& v, const GridFunction& h) {
  KahanSum acc;
  for (int x = 0; x <= v.max_index(); ++x) acc.add(v.at(x) * h[x]);
  return acc.value();
}

}  // namespace

TEST_CASE("carre du champ has the squared-increment form at interior sites") {
  TruncatedPmf v = random_pmf(14, 7);
  GridFunction f = random_walk_function(14, 8);
  GridFunction g1 = gamma1_pointwise(v, f, f);
  // 2 Gamma1(f,f)(x) = (f(x+1)-f(x))^2 + (V(x-1)/V(x))(f(x)-f(x-1))^2.
  for (int x = 1; x < 13; ++x) {
    double up = f[x + 1] - f[x];
    double down = f[x] - f[x - 1];
    double ref = 0.5 * (up * up + v.at(x - 1) / v.at(x) * down * down);
    CHECK(g1[x] == doctest::Approx(ref).epsilon(1e-12));
  }
  for (int x = 0; x < 14; ++x) CHECK(g1[x] >= -1e-15);
}

TEST_CASE("closed forms match the definition-level sums on random cases") {
  for (unsigned long long seed = 0; seed < 40; ++seed) {
    TruncatedPmf v = random_pmf(13, 1000 + seed);
    GridFunction f = random_interior_function(13, 2000 + seed);
    GridFunction g = random_interior_function(13, 3000 + seed);

    double s1_closed = gamma1_mean(v, f, g);
    double s1_def = weighted_sum(v, gamma1_pointwise(v, f, g));
    double sc1 = std::max(1.0, std::abs(s1_closed));
    CHECK(std::abs(s1_closed - s1_def) <= 1e-9 * sc1);

    double s2_closed = gamma2_mean(v, f, g);
    double s2_def = weighted_sum(v, gamma2_pointwise(v, f, g));
    double sc2 = std::max(1.0, std::abs(s2_closed));
    CHECK(std::abs(s2_closed - s2_def) <= 1e-9 * sc2);
  }
}

TEST_CASE("closed Gamma2 form requires interior support") {
  TruncatedPmf v = random_pmf(10, 4);
  GridFunction f = random_walk_function(10, 5);  // generically not flat on top
  CHECK_THROWS_AS(gamma2_mean(v, f, f), WindowError);
}

TEST_CASE("one-step commutation identity holds to rounding for any pair") {
  for (unsigned long long seed = 0; seed < 25; ++seed) {
    TruncatedPmf v = random_pmf(15, 5000 + seed);
    GridFunction f = random_walk_function(15, 6000 + seed);
    GridFunction res = one_step_commutation_residual(v, f);
    GridFunction lf = apply_L(v, f);
    double scale = 1.0;
    for (int x = 0; x < 15; ++x) scale = std::max(scale, std::abs(lf[x]));
    for (int x = 0; x <= res.max_index(); ++x) CHECK(std::abs(res[x]) <= 1e-12 * scale);
  }
}

TEST_CASE("Poisson: integrated Gamma2 dominates Gamma1 over lambda") {
  for (double lambda : {0.5, 2.0}) {
    TruncatedPmf v = pmf_poisson(lambda);
    BeCheckReport rep = integrated_be_check(v, 1.0 / lambda, 40, 9);
    CHECK(rep.trials == 40);
    CHECK(rep.violations == 0);
  }
}

TEST_CASE("linear observables saturate the Poisson curvature bound") {
  // For f(x) = x the second difference vanishes, so the integrated Gamma2
  // equals (1/lambda) Gamma1 exactly; any larger constant must fail.
  TruncatedPmf v = pmf_poisson(2.0);
  int n = v.max_index() + 1;
  GridFunction f(n, 0.0);
  for (int x = 0; x < n; ++x) f[x] = double(std::min(x, n - 3));
  double g2 = weighted_sum(v, gamma2_pointwise(v, f, f));
  double g1 = gamma1_mean(v, f, f);
  // Boundary sites carry weight ~ eps_tail but Gamma2 values ~ N^2 there,
  // so equality holds to ~1e-8 rather than full precision.
  CHECK(g2 == doctest::Approx(0.5 * g1).epsilon(1e-7));
  double c_too_big = 1.2 * c_log_concave_constant(v);
  CHECK(g2 - c_too_big * g1 < -1e-3);
}

TEST_CASE("randomized integrated check is deterministic in the seed") {
  TruncatedPmf v = random_ulc_pmf(77);
  double c = c_log_concave_constant(v);
  BeCheckReport a = integrated_be_check(v, c, 15, 123);
  BeCheckReport b = integrated_be_check(v, c, 15, 123);
  CHECK(a.worst_margin == b.worst_margin);
  CHECK(a.worst_trial == b.worst_trial);
  CHECK(a.violations == 0);
}
