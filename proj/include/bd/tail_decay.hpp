#pragma once

#include <functional>
#include <vector>

#include "bd/grid_function.hpp"
#include "bd/pmf.hpp"

namespace bd {

// h(s) = (1+s) log(1+s) - s.
double bennett_h(double s);

// k(u) = u log(1+u)/4.
double chernoff_k(double u);

// exp(-h(ct)/c).
double concentration_bound(double c, double t);

// phi(u) = u e^u - e^u + 1 >= 0.
double phi_function(double u);

// w(U; s) = -(U/s - 1) log U + (1-U)(1 - 1/s) <= 0, zero only at U = 1.
double w_lemma(double u, double s);

// V({g >= E_V g + t}).
double exact_tail(const TruncatedPmf& v, const GridFunction& g, double t);

struct ChernoffRow {
  double sigma = 0.0;
  double log_g = 0.0;  // log sum V e^{sigma g}
  double h = 0.0;      // log G / sigma (E_V g at sigma = 0)
  double bound = 0.0;  // H(0) + (1/c)(e^sigma - sigma - 1)/sigma
  double margin = 0.0; // bound - h
  bool ok = false;
};

// Scan of the moment generating functional against the integrated bound
//   H(sigma) - H(0) <= (1/c)(e^sigma - sigma - 1)/sigma.
// Requires sup |g(x+1)-g(x)| <= 1.
std::vector<ChernoffRow> chernoff_scan(const TruncatedPmf& v, const GridFunction& g,
                                       const std::vector<double>& sigmas, double c);

// Time-dependent reference family for the pure-death dynamics. log_v must be
// a certified closed form; alpha and c are the rate and curvature profiles
// of the family.
struct DecayFamily {
  std::function<double(double t, int x)> log_v;
  std::function<double(double t)> alpha;
  std::function<double(double t)> c;
};

// V_t = Pi_{lambda e^{-t}}: alpha_t = lambda(t), c_t = 1/lambda(t).
DecayFamily poisson_thinning_family(double lambda);

struct DecayRow {
  double t = 0.0;
  double d = 0.0;       // D(p_t || V_t)
  double bound = 0.0;   // D(p_0 || V_0) exp(-int alpha c)
};

// Integrates the death dynamics for p_t and reports D(p_t||V_t) on the grid.
// exponent_rate is int_0^t alpha_s c_s ds as a function of t (identity for
// the Poisson family).
std::vector<DecayRow> thinning_decay_trace(const TruncatedPmf& p0, const DecayFamily& fam,
                                           const std::vector<double>& t_grid, double tol,
                                           int window_len,
                                           const std::function<double(double)>& exponent_rate);

// Convenience wrapper for the Poisson family on a shared window.
std::vector<DecayRow> thinning_decay_trace(const TruncatedPmf& p0, double lambda,
                                           const std::vector<double>& t_grid, double tol);

struct HyperRow {
  double t = 0.0;
  double q = 0.0;
  double u = 0.0;  // log Lambda(q(t), t) / q(t)
};

// Co-evolves V_t and g_t for the Poisson thinning family and traces the
// normalized log-moment u(t), which is nondecreasing.
std::vector<HyperRow> hypercontractivity_trace(double lambda, const GridFunction& g0,
                                               double p, const std::vector<double>& t_grid,
                                               double tol);

// Window wide enough that sums tilted by exp(p * max_increment * x) stay
// accurate for Pi_lambda.
int hyper_window_length(double lambda, double p, double max_increment);

}  // namespace bd
