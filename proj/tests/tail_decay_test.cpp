#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bd/curvature.hpp"
#include "bd/errors.hpp"
#include "bd/pmf.hpp"
#include "bd/random_inputs.hpp"
#include "bd/tail_decay.hpp"

using namespace bd;

namespace {

double poisson_kl(double mu, double lambda) {
  return mu * std::log(mu / lambda) + lambda - mu;
}

}  // namespace

TEST_CASE("scalar building blocks match their closed forms") {
  CHECK(bennett_h(0.0) == 0.0);
  CHECK(bennett_h(std::exp(1.0) - 1.0) ==
        doctest::Approx(std::exp(1.0) - std::exp(1.0) + 1.0).epsilon(1e-12));
  CHECK(chernoff_k(1.0) == doctest::Approx(std::log(2.0) / 4.0).epsilon(1e-14));
  CHECK(phi_function(0.0) == doctest::Approx(0.0));
  CHECK(phi_function(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(w_lemma(1.0, 2.0) == doctest::Approx(0.0));
  CHECK(concentration_bound(0.5, 2.0) ==
        doctest::Approx(std::exp(-bennett_h(1.0) / 0.5)).epsilon(1e-13));
}

TEST_CASE("phi is nonnegative on a wide grid") {
  for (int i = -400; i <= 400; ++i) CHECK(phi_function(0.05 * i) >= -1e-15);
}

TEST_CASE("h dominates 2k on a fine positive grid") {
  for (int i = 1; i <= 10000; ++i) {
    double u = 100.0 * double(i) / 10000.0;
    CHECK(bennett_h(u) >= 2.0 * chernoff_k(u) - 1e-12);
  }
}

TEST_CASE("w is nonpositive and vanishes only on the diagonal U = 1") {
  for (int i = 1; i <= 200; ++i) {
    double u = 10.0 * double(i) / 200.0;
    for (int j = 1; j <= 200; ++j) {
      double s = 10.0 * double(j) / 200.0;
      double w = w_lemma(u, s);
      CHECK(w <= 1e-15);
      if (std::abs(w) <= 1e-12) CHECK(std::abs(u - 1.0) <= 1e-6);
    }
  }
}

TEST_CASE("Poisson identity observable: exact tails below the Bennett bound") {
  for (double lambda : {1.0, 2.0}) {
    TruncatedPmf v = pmf_poisson(lambda);
    int n = v.max_index() + 1;
    GridFunction id(n, 0.0);
    for (int x = 0; x < n; ++x) id[x] = double(x);
    for (int t = 1; t <= 10; ++t) {
      double tail = exact_tail(v, id, double(t));
      double bound = std::exp(-bennett_h(double(t) / lambda) * lambda);
      CHECK(tail <= bound + 1e-15);
    }
  }
}

TEST_CASE("moment-generating scan is tight for the Poisson identity observable") {
  TruncatedPmf v = pmf_poisson_window(2.0, 1e-12, 45);
  int n = v.max_index() + 1;
  GridFunction id(n, 0.0);
  for (int x = 0; x < n; ++x) id[x] = double(x);
  std::vector<double> sigmas = {0.25, 0.5, 1.0, 1.5, 2.0};
  auto rows = chernoff_scan(v, id, sigmas, 0.5);
  REQUIRE(rows.size() == sigmas.size());
  for (const auto& r : rows) {
    CHECK(r.ok);
    // log E e^{sigma X} = lambda(e^sigma - 1) makes the bound an identity.
    CHECK(std::abs(r.margin) <= 1e-8);
  }
}

TEST_CASE("scan rejects observables with increments above one") {
  TruncatedPmf v = pmf_poisson(1.0);
  int n = v.max_index() + 1;
  GridFunction g(n, 0.0);
  for (int x = 0; x < n; ++x) g[x] = 2.0 * x;
  CHECK_THROWS_AS(chernoff_scan(v, g, {0.5}, 1.0), InvalidParameter);
}

TEST_CASE("bounded Lipschitz observables satisfy the scan inequality") {
  TruncatedPmf v = random_ulc_pmf(17);
  int n = v.max_index() + 1;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  GridFunction g(n, 0.0);
  for (int x = 1; x < n; ++x) g[x] = g[x - 1] + unif(rng);
  double c = c_log_concave_constant(v);
  for (const auto& r : chernoff_scan(v, g, {0.3, 0.7, 1.2}, c)) CHECK(r.ok);
}

TEST_CASE("thinning trace reproduces the Poisson closed form exactly") {
  double lambda = 2.0, mu = 1.0;
  TruncatedPmf p0 = pmf_poisson_window(mu, 1e-12, pmf_poisson(lambda).max_index() + 1);
  std::vector<double> grid = {0.0, 0.125, 0.25, 0.5, 1.0, 2.0};
  auto rows = thinning_decay_trace(p0, lambda, grid, 1e-10);
  REQUIRE(rows.size() == grid.size());
  double d0 = poisson_kl(mu, lambda);
  for (const auto& r : rows) {
    double closed = poisson_kl(mu * std::exp(-r.t), lambda * std::exp(-r.t));
    CHECK(std::abs(r.d - closed) <= 1e-8);
    CHECK(std::abs(r.bound - d0 * std::exp(-r.t)) <= 1e-12 * (1.0 + d0));
    // The Poisson initial condition achieves the decay bound exactly.
    CHECK(std::abs(r.d - r.bound) <= 1e-8);
  }
}

TEST_CASE("thinning trace bounds entropy decay for a non-Poisson start") {
  TruncatedPmf base = pmf_bernoulli_sum({0.3, 0.6, 0.8});
  TruncatedPmf p0 = base;
  p0.values.resize(size_t(pmf_poisson(1.5).max_index() + 1), 0.0);
  std::vector<double> grid;
  for (int k = 0; k < 7; ++k) grid.push_back(0.02 * std::pow(2.0, k));
  auto rows = thinning_decay_trace(p0, 1.5, grid, 1e-10);
  for (const auto& r : rows) CHECK(r.d <= r.bound + 1e-8);
  for (size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].d <= rows[i - 1].d + 1e-10);
}

TEST_CASE("normalized log-moment is constant on the degree-one Charlier family") {
  double lambda = 2.0, p = 2.0;
  double cc = 1.0 + lambda / p - (lambda / p) * std::exp(p / lambda);
  int len = hyper_window_length(lambda, p, 1.0 / lambda);
  GridFunction g0(len, 0.0);
  for (int x = 0; x < len; ++x) g0[x] = (double(x) - lambda) / lambda;
  std::vector<double> grid = {0.0, 0.25, 0.5, 0.75, 1.0};
  auto rows = hypercontractivity_trace(lambda, g0, p, grid, 1e-10);
  REQUIRE(rows.size() == grid.size());
  for (const auto& r : rows) {
    CHECK(std::abs(r.u + cc) <= 1e-8);
    CHECK(r.q == doctest::Approx(p * std::exp(-r.t)).epsilon(1e-14));
  }
}

TEST_CASE("normalized log-moment increases for concave quadratic observables") {
  std::vector<double> grid = {0.15, 0.3, 0.45, 0.6};
  for (int i = 0; i < 8; ++i) {
    std::mt19937_64 rng(3000 + i);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    double lambda = 1.0 + 0.75 * (unif(rng) + 1.0);
    double a1 = 0.3 * unif(rng);
    double a2 = -0.01 - 0.045 * (unif(rng) + 1.0);
    int len = hyper_window_length(lambda, 2.0, std::max(std::abs(a1), 1e-3));
    GridFunction g0(len, 0.0);
    for (int x = 0; x < len; ++x) g0[x] = a1 * x + a2 * double(x) * x;
    auto rows = hypercontractivity_trace(lambda, g0, 2.0, grid, 1e-10);
    for (size_t k = 1; k < rows.size(); ++k) CHECK(rows[k].u >= rows[k - 1].u - 1e-8);
  }
}

TEST_CASE("trace refuses horizons it cannot certify") {
  // Deconvolving a rough bounded observable amplifies high-site error like
  // exp(x t); the windowed sum then diverges from the lattice functional and
  // the trace must fail loudly rather than return a plausible number.
  double lambda = 1.5, p = 2.0;
  int len = hyper_window_length(lambda, p, 0.3);
  GridFunction g0 = random_walk_function(len, 5, 0.3);
  for (int x = 0; x < len; ++x) g0[x] = std::log(g0[x]);
  CHECK_THROWS_AS(hypercontractivity_trace(lambda, g0, p, {0.5, 1.0}, 1e-10), AccuracyError);
}

TEST_CASE("parameter guards") {
  GridFunction g0(30, 0.0);
  CHECK_THROWS_AS(hypercontractivity_trace(0.0, g0, 2.0, {0.1}, 1e-10), InvalidParameter);
  CHECK_THROWS_AS(hypercontractivity_trace(1.0, g0, 1.0, {0.1}, 1e-10), InvalidParameter);
  CHECK_THROWS_AS(hypercontractivity_trace(1.0, g0, 2.0, {0.2, 0.1}, 1e-10), InvalidParameter);
  TruncatedPmf p0 = pmf_poisson(1.0);
  CHECK_THROWS_AS(thinning_decay_trace(p0, 1.0, {0.1}, -1.0), InvalidParameter);
}
