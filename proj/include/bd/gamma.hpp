#pragma once

#include <vector>

#include "bd/grid_function.hpp"
#include "bd/pmf.hpp"

namespace bd {

// Carre du champ: (1/2)[L_V(fg) - f L_V g - g L_V f] per site.
GridFunction gamma1_pointwise(const TruncatedPmf& v, const GridFunction& f,
                              const GridFunction& g);

// Iterated form: (1/2)[L_V Gamma1(f,g) - Gamma1(f, L_V g) - Gamma1(g, L_V f)].
GridFunction gamma2_pointwise(const TruncatedPmf& v, const GridFunction& f,
                              const GridFunction& g);

// sum_x V(x) (Delta f)(Delta g), the closed form of the V-average of Gamma1.
double gamma1_mean(const TruncatedPmf& v, const GridFunction& f, const GridFunction& g);

// sum_x V(x) [Lf(x+1) Lg(x+1) + E(x) (Delta f)(Delta g)], with
// Lf(x) = f(x+1) - 2f(x) + f(x-1). Requires interior-supported f, g.
double gamma2_mean(const TruncatedPmf& v, const GridFunction& f, const GridFunction& g);

struct BeCheckReport {
  int trials = 0;
  int violations = 0;
  double worst_margin = 0.0;  // min over trials of (sum V Gamma2 - c sum V Gamma1)
  int worst_trial = -1;
  double c = 0.0;
};

// Randomized integrated BE(c) check over interior-supported test functions;
// Gamma2 is evaluated from its pointwise definition, not the closed form.
BeCheckReport integrated_be_check(const TruncatedPmf& v, double c, int trials,
                                  unsigned long long seed);

// Residual of the one-step commutation identity
//   L_V f(x+1) - L_V f(x) = Lf(x+1) - Lf(x) V(x-1)/V(x) - E(x) Delta f(x)
// per interior site x = 0..N-2. Zero up to rounding for every (V, f).
GridFunction one_step_commutation_residual(const TruncatedPmf& v, const GridFunction& f);

}  // namespace bd
