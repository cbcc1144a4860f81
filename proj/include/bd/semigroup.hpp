#pragma once

#include <vector>

#include "bd/grid_function.hpp"
#include "bd/pmf.hpp"

namespace bd {

// Truncated Q-matrix of the birth-death chain: unit birth rates (zero at the
// top state, which keeps the renormalized restriction of V exactly
// stationary) and death rate V(x-1)/V(x).
struct GeneratorMatrix {
  std::vector<double> down;  // death rate at x, index 0..N (down[0] = 0)
  std::vector<double> up;    // birth rate at x (1, except 0 at x = N)
  std::vector<double> diag;  // -(up + down)

  int size() const { return static_cast<int>(diag.size()); }

  static GeneratorMatrix from_pmf(const TruncatedPmf& v);

  // Q f (column action).
  std::vector<double> apply(const std::vector<double>& f) const;
  // p Q (row action), i.e. L_V^* on the window.
  std::vector<double> apply_adjoint(const std::vector<double>& p) const;
};

// L_V f with the V(-1) = 0 convention; the forward term is dropped at x = N.
GridFunction apply_L(const TruncatedPmf& v, const GridFunction& f);

// L_V^* p = p Q componentwise on the window.
std::vector<double> apply_L_adjoint(const TruncatedPmf& v, const TruncatedPmf& p);

// p exp(tQ) via uniformization with a certified series tail <= tol, plus a
// step-doubling self-check.
TruncatedPmf evolve_pmf(const TruncatedPmf& v, const TruncatedPmf& p0, double t,
                        double tol = 1e-10);

// exp(tQ) f, same integrator contract.
GridFunction evolve_function(const TruncatedPmf& v, const GridFunction& f0, double t,
                             double tol = 1e-10);

struct SelfAdjointTriple {
  double f_Lg = 0.0;        // sum V f L_V g
  double Lf_g = 0.0;        // sum V (L_V f) g
  double dirichlet = 0.0;   // -sum V (Delta f)(Delta g)
};

// The three routes of the summation-by-parts identity; all agree on the
// truncated window by detailed balance.
SelfAdjointTriple verify_self_adjoint(const TruncatedPmf& v, const GridFunction& f,
                                      const GridFunction& g);

}  // namespace bd
