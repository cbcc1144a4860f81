#pragma once

#include <span>
#include <string>
#include <vector>

#include "bd/pmf.hpp"

namespace bd {

// Dense pmf on the box {0..N_1} x ... x {0..N_d}. Dense storage keeps the
// oracle-equivalence sums exact; d <= 4 and per-axis N <= 64.
struct GridPmfD {
  std::vector<int> shape;        // per-axis window sizes N_k + 1
  std::vector<double> values;    // flat, row-major (last axis fastest)
  std::vector<double> tail_mass; // per axis
  bool full_support = false;
  std::string label;

  int dims() const { return static_cast<int>(shape.size()); }
  size_t flat_size() const { return values.size(); }

  size_t flat_index(std::span<const int> x) const;
  bool in_box(std::span<const int> x) const;

  // 0 outside the box (the V = 0 convention for negative coordinates).
  double at(std::span<const int> x) const;

  void validate() const;
};

struct GridFunctionD {
  std::vector<int> shape;
  std::vector<double> values;

  int dims() const { return static_cast<int>(shape.size()); }
  double at_flat(size_t i) const { return values[i]; }
};

// Advance a multi-index through the box; returns false after the last site.
bool next_site(std::span<const int> shape, std::vector<int>& x);

// V(x) = prod_k V_k(x_k).
GridPmfD product_pmf(const std::vector<TruncatedPmf>& factors);

// E_ij(x) = V(x+e_j-e_i)/V(x+e_j) - V(x-e_i)/V(x).
double eeij(const GridPmfD& v, std::span<const int> x, int i, int j);

// E^sym_ij(y) = V(y-e_i)V(y-e_j)/V(y) - V(y-e_i-e_j) - c 1{i=j} V(y-e_j),
// returned as a dense d x d row-major matrix.
std::vector<double> esym_matrix(const GridPmfD& v, std::span<const int> y, double c);

struct PsdCertifyReport {
  bool certified = false;
  double min_eigenvalue = 0.0;
  std::vector<int> worst_site;
  double c = 0.0;
};

// Min eigenvalue of E^sym(y) over the box; certified iff min >= -1e-12.
PsdCertifyReport esym_psd_certify(const GridPmfD& v, double c);

// L_V f with per-axis truncation closure (forward term dropped at each top face).
GridFunctionD apply_L_d(const GridPmfD& v, const GridFunctionD& f);

struct GammaSumsD {
  double gamma1 = 0.0;        // sum_x V sum_j (Delta_j f)(Delta_j g)
  double gamma2_lower = 0.0;  // curvature sum after dropping the L_ij square term
  double gamma2_exact = 0.0;  // brute-force V-average of the iterated form
};

// Requires f, g interior-supported (zero increments within two cells of every
// top face).
GammaSumsD gamma_sums_d(const GridPmfD& v, const GridFunctionD& f, const GridFunctionD& g);

struct BeCheckReportD {
  int trials = 0;
  int violations = 0;
  double worst_margin = 0.0;
  int poincare_violations = 0;
  double worst_poincare_slack = 0.0;  // min over trials of dirichlet/c - var
  double c = 0.0;
};

// Randomized integrated BE(c) and Poincare checks on the box.
BeCheckReportD integrated_be_check_d(const GridPmfD& v, double c, int trials,
                                     unsigned long long seed);

// sum_y sum_ij E^sym_ij(y)(f(y) - f(y-e_j))(log f(y) - log f(y-e_i)).
double logsob_gap_term(const GridPmfD& v, const GridFunctionD& f, double c);

// Max residual of the d-dimensional one-step commutation identity over
// interior sites, relative to the local scale.
double commutation_residual_d(const GridPmfD& v, const GridFunctionD& f);

// Random positive function on the box with interior support.
GridFunctionD random_function_d(const std::vector<int>& shape, unsigned long long seed,
                                bool interior, double bound = 3.0);

}  // namespace bd
