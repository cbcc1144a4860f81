#pragma once

#include <string>
#include <vector>

namespace bd {

// Probability mass function on {0,...,N} with a tracked bound on the mass
// beyond N. Immutable after construction.
struct TruncatedPmf {
  std::vector<double> values;  // indexed 0..N
  double tail_mass = 0.0;      // upper bound on mass beyond N
  std::string label;
  bool full_support = false;  // every entry on 0..N strictly positive

  int max_index() const { return static_cast<int>(values.size()) - 1; }

  // 0 outside the window (and for x < 0, matching the V(-1)=0 convention).
  double at(int x) const {
    return (x >= 0 && x < static_cast<int>(values.size())) ? values[size_t(x)]
                                                           : 0.0;
  }

  double mean() const;
  double sum() const;

  // Throws if a type invariant fails.
  void validate() const;
};

// Poisson(lambda) truncated where the analytic tail drops below eps_tail.
TruncatedPmf pmf_poisson(double lambda, double eps_tail = 1e-12);

// Poisson(lambda) on a window of at least min_len entries. Wide windows are
// needed whenever an exponentially tilted sum against V must stay accurate.
TruncatedPmf pmf_poisson_window(double lambda, double eps_tail, int min_len);

// Exact Poisson-binomial pmf of a sum of independent Bernoulli(p_i).
TruncatedPmf pmf_bernoulli_sum(const std::vector<double>& probs);

// Negative binomial: values proportional to binom(n+x-1, x) p^x (1-p)^n.
TruncatedPmf pmf_negative_binomial(double n, double p, double eps_tail = 1e-12);

// Normalized pmf from nonnegative weights; tail_mass = 0.
TruncatedPmf pmf_from_weights(const std::vector<double>& weights);

// Exact discrete convolution on 0..(N_U + N_V).
TruncatedPmf pmf_convolve(const TruncatedPmf& u, const TruncatedPmf& v);

// V * Pi_eps; strictly positive above the lowest support point of V.
TruncatedPmf pmf_perturb(const TruncatedPmf& v, double eps);

// Point mass at x0 on a window of size len.
TruncatedPmf pmf_delta(int x0, int len);

}  // namespace bd
