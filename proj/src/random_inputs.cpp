#include "bd/random_inputs.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace bd {

GridFunction random_walk_function(int len, unsigned long long seed, double bound) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> step(-0.7, 0.7);
  std::uniform_real_distribution<double> start(-1.0, 1.0);
  GridFunction f(len, 0.0);
  double u = start(rng);
  for (int x = 0; x < len; ++x) {
    u = std::clamp(u + step(rng), -bound, bound);
    f[x] = std::exp(u);
  }
  return f;
}

GridFunction random_interior_function(int len, unsigned long long seed, double bound) {
  GridFunction f = random_walk_function(len, seed, bound);
  if (len >= 3) {
    f[len - 1] = f[len - 3];
    f[len - 2] = f[len - 3];
  }
  return f;
}

TruncatedPmf random_pmf(int len, unsigned long long seed) {
  GridFunction f = random_walk_function(len, seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<double> w(f.values.begin(), f.values.end());
  TruncatedPmf out = pmf_from_weights(w);
  out.label = "random(" + std::to_string(seed) + ")";
  return out;
}

TruncatedPmf random_ulc_pmf(unsigned long long seed) {
  std::mt19937_64 rng(seed ^ 0xd1b54a32d192ed03ULL);
  std::uniform_int_distribution<int> count(1, 8);
  std::uniform_real_distribution<double> prob(0.1, 0.9);
  std::uniform_real_distribution<double> eps(0.05, 0.5);
  int n = count(rng);
  std::vector<double> ps(static_cast<size_t>(n));
  for (double& p : ps) p = prob(rng);
  TruncatedPmf base = pmf_bernoulli_sum(ps);
  TruncatedPmf out = pmf_perturb(base, eps(rng));
  out.label = "random_ulc(" + std::to_string(seed) + ")";
  return out;
}

}  // namespace bd
