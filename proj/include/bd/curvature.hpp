#pragma once

#include <optional>
#include <vector>

#include "bd/pmf.hpp"

namespace bd {

// Site curvature profile and the structural flags derived from it.
struct CurvatureReport {
  std::vector<double> profile;  // E(x), x = 0..N-1
  double c_inf = 0.0;           // infimum of the profile over the window
  int argmin = 0;
  bool boundary_infimum = false;  // infimum attained at x = N-1 (window artifact)
  bool ulc = false;
  std::optional<double> ulc_c;  // V(0)/V(1) when ulc
  bool mean_bound_ok = false;   // c_inf <= 1/mean + tol
  bool increasing = false;      // E nondecreasing on the window
};

// E(x) = V(x)/V(x+1) - V(x-1)/V(x), with V(-1) = 0, for x = 0..N-1.
std::vector<double> curvature_profile(const TruncatedPmf& v);

// inf over the truncation window of E(x).
double c_log_concave_constant(const TruncatedPmf& v);

// x V(x)^2 >= (x+1) V(x-1) V(x+1) at every interior site, i.e. V/Pi_lambda
// is a log-concave sequence (the lambda factor cancels).
bool is_ulc(const TruncatedPmf& v);

// V(0)/V(1); valid lower bound on the c-log-concavity constant for ULC V.
double ulc_c_bound(const TruncatedPmf& v);

// c_inf <= 1/mean + 1e-10.
bool mean_bound_check(const TruncatedPmf& v);

// V(x)^2 V(x-1) - 2 V(x-1)^2 V(x+1) + V(x+1) V(x) V(x-2) >= -1e-14 at every
// window site; equivalent to E nondecreasing.
bool curvature_increasing_check(const TruncatedPmf& v);

CurvatureReport curvature_report(const TruncatedPmf& v);

// Exploratory: min over sampled ULC pairs of c_{U*V} (1/c_U + 1/c_V).
// Evidence for the convolution conjecture only, never asserted.
struct ConvolutionProbeResult {
  int samples = 0;
  double min_product = 0.0;
  double max_product = 0.0;
};
ConvolutionProbeResult convolution_conjecture_probe(int trials, unsigned long long seed);

}  // namespace bd
