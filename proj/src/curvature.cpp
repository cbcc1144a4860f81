#include "bd/curvature.hpp"

#include <cmath>
#include <limits>

#include "bd/errors.hpp"
#include "bd/random_inputs.hpp"

namespace bd {

namespace {

void require_full_support(const TruncatedPmf& v, const char* op) {
  if (!v.full_support)
    throw NotFullSupport(std::string(op) + ": V must be strictly positive on its window");
}

}  // namespace

std::vector<double> curvature_profile(const TruncatedPmf& v) {
  require_full_support(v, "curvature_profile");
  int n = v.max_index();
  std::vector<double> profile(static_cast<size_t>(n));
  for (int x = 0; x < n; ++x) {
    double down = (x == 0) ? 0.0 : v.values[size_t(x - 1)] / v.values[size_t(x)];
    profile[size_t(x)] = v.values[size_t(x)] / v.values[size_t(x + 1)] - down;
  }
  return profile;
}

double c_log_concave_constant(const TruncatedPmf& v) {
  auto profile = curvature_profile(v);
  double c = std::numeric_limits<double>::infinity();
  for (double e : profile) c = std::min(c, e);
  return c;
}

bool is_ulc(const TruncatedPmf& v) {
  int n = v.max_index();
  for (int x = 1; x < n; ++x) {
    double vm = v.at(x - 1), v0 = v.at(x), vp = v.at(x + 1);
    if (v0 == 0.0) {
      if (vm * vp > 0.0) return false;
      continue;
    }
    if (vm == 0.0 || vp == 0.0) continue;
    // Compare in the log domain; raw products underflow for wide windows.
    double lhs = std::log(double(x)) + 2.0 * std::log(v0);
    double rhs = std::log(double(x) + 1.0) + std::log(vm) + std::log(vp);
    if (lhs < rhs - 1e-12 * std::max(1.0, std::abs(rhs))) return false;
  }
  return true;
}

double ulc_c_bound(const TruncatedPmf& v) {
  if (!is_ulc(v)) throw InvalidParameter("ulc_c_bound: V is not ULC");
  if (v.values.size() < 2 || v.values[1] == 0.0)
    throw DegenerateInput("ulc_c_bound: V(1) must be positive");
  return v.values[0] / v.values[1];
}

bool mean_bound_check(const TruncatedPmf& v) {
  double mean = v.mean();
  if (mean <= 0.0) throw DegenerateInput("mean_bound_check: zero mean");
  return c_log_concave_constant(v) <= 1.0 / mean + 1e-10;
}

bool curvature_increasing_check(const TruncatedPmf& v) {
  require_full_support(v, "curvature_increasing_check");
  int n = v.max_index();
  for (int x = 0; x <= n; ++x) {
    double poly = v.at(x) * v.at(x) * v.at(x - 1) -
                  2.0 * v.at(x - 1) * v.at(x - 1) * v.at(x + 1) +
                  v.at(x + 1) * v.at(x) * v.at(x - 2);
    if (poly < -1e-14) return false;
  }
  return true;
}

CurvatureReport curvature_report(const TruncatedPmf& v) {
  CurvatureReport rep;
  rep.profile = curvature_profile(v);
  rep.c_inf = std::numeric_limits<double>::infinity();
  for (size_t x = 0; x < rep.profile.size(); ++x) {
    if (rep.profile[x] < rep.c_inf) {
      rep.c_inf = rep.profile[x];
      rep.argmin = static_cast<int>(x);
    }
  }
  rep.boundary_infimum = (rep.argmin == static_cast<int>(rep.profile.size()) - 1);
  rep.ulc = is_ulc(v);
  if (rep.ulc) rep.ulc_c = v.values[0] / v.values[1];
  rep.mean_bound_ok = mean_bound_check(v);
  rep.increasing = curvature_increasing_check(v);
  return rep;
}

ConvolutionProbeResult convolution_conjecture_probe(int trials, unsigned long long seed) {
  ConvolutionProbeResult res;
  res.min_product = std::numeric_limits<double>::infinity();
  res.max_product = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < trials; ++i) {
    TruncatedPmf u = random_ulc_pmf(seed * 1000003ULL + 2ULL * i);
    TruncatedPmf v = random_ulc_pmf(seed * 1000003ULL + 2ULL * i + 1ULL);
    double cu = c_log_concave_constant(u);
    double cv = c_log_concave_constant(v);
    if (cu <= 0.0 || cv <= 0.0) continue;
    double cw = c_log_concave_constant(pmf_convolve(u, v));
    double product = cw * (1.0 / cu + 1.0 / cv);
    res.min_product = std::min(res.min_product, product);
    res.max_product = std::max(res.max_product, product);
    ++res.samples;
  }
  return res;
}

}  // namespace bd
