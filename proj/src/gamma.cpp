#include "bd/gamma.hpp"

#include <cmath>

#include "bd/curvature.hpp"
#include "bd/errors.hpp"
#include "bd/numerics.hpp"
#include "bd/random_inputs.hpp"
#include "bd/semigroup.hpp"

namespace bd {

namespace {

void check_windows(const TruncatedPmf& v, const GridFunction& f, const GridFunction& g,
                   const char* op) {
  int n = static_cast<int>(v.values.size());
  require_same_window(f, n, op);
  require_same_window(g, n, op);
}

GridFunction pointwise_product(const GridFunction& f, const GridFunction& g) {
  GridFunction h(static_cast<int>(f.values.size()), 0.0);
  for (size_t x = 0; x < f.values.size(); ++x) h.values[x] = f.values[x] * g.values[x];
  return h;
}

// Plain second difference under constant extension past the window top.
double second_difference(const GridFunction& f, int x) {
  int n = f.max_index();
  double fp = (x + 1 <= n) ? f[x + 1] : f[n];
  double fm = (x - 1 >= 0) ? f[x - 1] : 0.0;  // callers keep x >= 1
  return fp - 2.0 * f[x] + fm;
}

}  // namespace

GridFunction gamma1_pointwise(const TruncatedPmf& v, const GridFunction& f,
                              const GridFunction& g) {
  check_windows(v, f, g, "gamma1_pointwise");
  GridFunction lfg = apply_L(v, pointwise_product(f, g));
  GridFunction lf = apply_L(v, f);
  GridFunction lg = apply_L(v, g);
  GridFunction out(static_cast<int>(v.values.size()), 0.0);
  for (int x = 0; x <= out.max_index(); ++x)
    out[x] = 0.5 * (lfg[x] - f[x] * lg[x] - g[x] * lf[x]);
  return out;
}

GridFunction gamma2_pointwise(const TruncatedPmf& v, const GridFunction& f,
                              const GridFunction& g) {
  check_windows(v, f, g, "gamma2_pointwise");
  GridFunction g1 = gamma1_pointwise(v, f, g);
  GridFunction lg1 = apply_L(v, g1);
  GridFunction g1_f_lg = gamma1_pointwise(v, f, apply_L(v, g));
  GridFunction g1_g_lf = gamma1_pointwise(v, g, apply_L(v, f));
  GridFunction out(static_cast<int>(v.values.size()), 0.0);
  for (int x = 0; x <= out.max_index(); ++x)
    out[x] = 0.5 * (lg1[x] - g1_f_lg[x] - g1_g_lf[x]);
  return out;
}

double gamma1_mean(const TruncatedPmf& v, const GridFunction& f, const GridFunction& g) {
  check_windows(v, f, g, "gamma1_mean");
  int n = static_cast<int>(v.values.size());
  KahanSum acc;
  for (int x = 0; x + 1 < n; ++x)
    acc.add(v.values[size_t(x)] * (f[x + 1] - f[x]) * (g[x + 1] - g[x]));
  return acc.value();
}

double gamma2_mean(const TruncatedPmf& v, const GridFunction& f, const GridFunction& g) {
  check_windows(v, f, g, "gamma2_mean");
  if (!f.interior_supported() || !g.interior_supported())
    throw WindowError("gamma2_mean: f and g must have zero increments on the top two sites");
  std::vector<double> profile = curvature_profile(v);
  int n = static_cast<int>(v.values.size());
  KahanSum acc;
  for (int x = 0; x + 1 < n; ++x) {
    double vx = v.values[size_t(x)];
    acc.add(vx * second_difference(f, x + 1) * second_difference(g, x + 1));
    acc.add(vx * profile[size_t(x)] * (f[x + 1] - f[x]) * (g[x + 1] - g[x]));
  }
  return acc.value();
}

BeCheckReport integrated_be_check(const TruncatedPmf& v, double c, int trials,
                                  unsigned long long seed) {
  if (!v.full_support)
    throw NotFullSupport("integrated_be_check: V must be strictly positive on its window");
  int n = static_cast<int>(v.values.size());
  BeCheckReport rep;
  rep.c = c;
  rep.trials = trials;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < trials; ++i) {
    GridFunction f = random_interior_function(n, seed + 0x51ULL * i);
    GridFunction g2 = gamma2_pointwise(v, f, f);
    KahanSum g2sum;
    for (int x = 0; x < n; ++x) g2sum.add(v.values[size_t(x)] * g2[x]);
    double g1 = gamma1_mean(v, f, f);
    double margin = g2sum.value() - c * g1;
    double scale = std::max({1.0, std::abs(g2sum.value()), std::abs(c * g1)});
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.worst_trial = i;
    }
    if (margin < -1e-10 * scale) ++rep.violations;
  }
  return rep;
}

GridFunction one_step_commutation_residual(const TruncatedPmf& v, const GridFunction& f) {
  int n = static_cast<int>(v.values.size());
  require_same_window(f, n, "one_step_commutation_residual");
  GridFunction lvf = apply_L(v, f);
  std::vector<double> profile = curvature_profile(v);
  GridFunction out(std::max(0, n - 2), 0.0);
  for (int x = 0; x + 2 < n; ++x) {
    double lf_next = f[x + 2] - 2.0 * f[x + 1] + f[x];
    double lf_here = (x > 0) ? (f[x + 1] - 2.0 * f[x] + f[x - 1]) : 0.0;
    double ratio = (x > 0) ? v.values[size_t(x - 1)] / v.values[size_t(x)] : 0.0;
    double rhs = lf_next - lf_here * ratio - profile[size_t(x)] * (f[x + 1] - f[x]);
    out[x] = (lvf[x + 1] - lvf[x]) - rhs;
  }
  return out;
}

}  // namespace bd
