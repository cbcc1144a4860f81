#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "bd/curvature.hpp"
#include "bd/errors.hpp"
#include "bd/gamma.hpp"
#include "bd/multidim.hpp"
#include "bd/numerics.hpp"
#include "bd/pmf.hpp"
#include "bd/random_inputs.hpp"
#include "bd/semigroup.hpp"

using namespace bd;

namespace {

std::vector<TruncatedPmf> poisson_factors(std::vector<double> lambdas, double eps) {
  std::vector<TruncatedPmf> out;
  for (double l : lambdas) out.push_back(pmf_poisson(l, eps));
  return out;
}

}  // namespace

TEST_CASE("product pmf has the right marginals and mass") {
  TruncatedPmf a = pmf_poisson(1.0);
  TruncatedPmf b = pmf_bernoulli_sum({0.3, 0.7});
  GridPmfD v = product_pmf({a, b});
  REQUIRE(v.dims() == 2);
  REQUIRE(v.shape[0] == a.max_index() + 1);
  REQUIRE(v.shape[1] == 3);
  // Marginal over the second axis returns the first factor.
  for (int x0 = 0; x0 < v.shape[0]; ++x0) {
    KahanSum m;
    for (int x1 = 0; x1 < v.shape[1]; ++x1) {
      std::array<int, 2> x{x0, x1};
      m.add(v.at(x));
    }
    CHECK(m.value() == doctest::Approx(a.at(x0)).epsilon(1e-12));
  }
  CHECK_NOTHROW(v.validate());
}

TEST_CASE("flat indexing round-trips through next_site") {
  GridPmfD v = product_pmf(poisson_factors({0.8, 1.2}, 1e-6));
  std::vector<int> x(2, 0);
  size_t count = 0;
  do {
    CHECK(v.flat_index(x) == count);
    ++count;
  } while (next_site(v.shape, x));
  CHECK(count == v.flat_size());
}

TEST_CASE("one-dimensional curvature matrix reduces to the scalar profile") {
  TruncatedPmf a = pmf_poisson(2.0);
  GridPmfD v = product_pmf({a});
  std::vector<double> profile = curvature_profile(a);
  for (int x0 = 0; x0 + 1 < v.shape[0]; ++x0) {
    std::array<int, 1> x{x0};
    CHECK(eeij(v, x, 0, 0) == doctest::Approx(profile[size_t(x0)]).epsilon(1e-12));
  }
}

TEST_CASE("product measures have diagonal symmetrized curvature") {
  GridPmfD v = product_pmf(poisson_factors({1.0, 2.0}, 1e-10));
  std::array<int, 2> y{3, 4};
  std::vector<double> m = esym_matrix(v, y, 0.5);
  CHECK(std::abs(m[1]) <= 1e-15 * std::max({1.0, std::abs(m[0]), std::abs(m[3])}));
  CHECK(std::abs(m[2]) <= 1e-15 * std::max({1.0, std::abs(m[0]), std::abs(m[3])}));
}

TEST_CASE("PSD certificate: passes at the product curvature, fails above it") {
  for (auto lambdas : std::vector<std::vector<double>>{{1.0, 2.0}, {0.7, 1.3, 2.2}}) {
    double eps = lambdas.size() == 2 ? 1e-10 : 1e-6;
    GridPmfD v = product_pmf(poisson_factors(lambdas, eps));
    double c = 1e300;
    for (double l : lambdas) c = std::min(c, 1.0 / l);
    PsdCertifyReport ok = esym_psd_certify(v, c);
    CHECK(ok.certified);
    CHECK(ok.min_eigenvalue >= -1e-12);
    PsdCertifyReport bad = esym_psd_certify(v, 1.2 * c);
    CHECK_FALSE(bad.certified);
    CHECK(bad.min_eigenvalue < -1e-12);
    CHECK(bad.worst_site.size() == lambdas.size());
  }
}

TEST_CASE("grid generator on a product of sums reduces to per-axis action") {
  TruncatedPmf a = random_pmf(7, 1);
  TruncatedPmf b = random_pmf(6, 2);
  GridPmfD v = product_pmf({a, b});
  GridFunction fa = random_walk_function(7, 3);
  GridFunction fb = random_walk_function(6, 4);
  GridFunctionD f{{7, 6}, std::vector<double>(42, 0.0)};
  std::vector<int> x(2, 0);
  do {
    f.values[v.flat_index(x)] = fa[x[0]] + fb[x[1]];
  } while (next_site(v.shape, x));
  GridFunctionD lf = apply_L_d(v, f);
  GridFunction la = apply_L(a, fa);
  GridFunction lb = apply_L(b, fb);
  x.assign(2, 0);
  do {
    double ref = la[x[0]] + lb[x[1]];
    CHECK(lf.values[v.flat_index(x)] == doctest::Approx(ref).epsilon(1e-12));
  } while (next_site(v.shape, x));
}

TEST_CASE("grid Gamma sums reduce to the scalar closed forms in one dimension") {
  TruncatedPmf a = random_pmf(12, 9);
  GridPmfD v = product_pmf({a});
  GridFunction f1 = random_interior_function(12, 10);
  GridFunction g1 = random_interior_function(12, 11);
  GridFunctionD f{{12}, f1.values};
  GridFunctionD g{{12}, g1.values};
  GammaSumsD s = gamma_sums_d(v, f, g);
  CHECK(s.gamma1 == doctest::Approx(gamma1_mean(a, f1, g1)).epsilon(1e-11));
  CHECK(s.gamma2_exact == doctest::Approx(gamma2_mean(a, f1, g1)).epsilon(1e-9));
  CHECK(s.gamma2_exact >= s.gamma2_lower - 1e-10 * std::max(1.0, std::abs(s.gamma2_exact)));
}

TEST_CASE("randomized integrated curvature and spectral checks pass on products") {
  for (auto lambdas : std::vector<std::vector<double>>{{1.0, 1.5}, {0.8, 1.1, 1.6}}) {
    double eps = lambdas.size() == 2 ? 1e-8 : 1e-5;
    GridPmfD v = product_pmf(poisson_factors(lambdas, eps));
    double c = 1e300;
    for (double l : lambdas) c = std::min(c, 1.0 / l);
    BeCheckReportD rep = integrated_be_check_d(v, c, 10, 31);
    CHECK(rep.trials == 10);
    CHECK(rep.violations == 0);
    CHECK(rep.poincare_violations == 0);
  }
}

TEST_CASE("entropy gap term is nonnegative for positive functions on products") {
  GridPmfD v = product_pmf(poisson_factors({1.0, 2.0}, 1e-8));
  for (unsigned long long seed = 0; seed < 15; ++seed) {
    GridFunctionD f = random_function_d(v.shape, 40 + seed, /*interior=*/true);
    double term = logsob_gap_term(v, f, 0.5);
    CHECK(term >= -1e-12 * (1.0 + std::abs(term)));
  }
}

TEST_CASE("multi-axis commutation identity holds to rounding") {
  GridPmfD v = product_pmf(poisson_factors({1.0, 1.5}, 1e-8));
  for (unsigned long long seed = 0; seed < 10; ++seed) {
    GridFunctionD f = random_function_d(v.shape, 70 + seed, /*interior=*/false);
    CHECK(commutation_residual_d(v, f) <= 1e-12);
  }
}

TEST_CASE("box limits and window guards are enforced") {
  TruncatedPmf big = pmf_poisson_window(1.0, 1e-12, 70);
  CHECK_THROWS_AS(product_pmf({big, big}), InvalidParameter);
  TruncatedPmf a = pmf_poisson(1.0);
  CHECK_THROWS_AS(product_pmf({a, a, a, a, a}), InvalidParameter);

  GridPmfD v = product_pmf({a, a});
  std::array<int, 2> top{v.shape[0] - 1, v.shape[1] - 1};
  CHECK_THROWS_AS(eeij(v, top, 0, 1), WindowError);
}
