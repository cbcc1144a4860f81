#include "bd/multidim.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "bd/errors.hpp"
#include "bd/numerics.hpp"

namespace bd {

namespace {

constexpr int kMaxDims = 4;
constexpr int kMaxAxisLen = 65;

std::vector<int> offset(std::span<const int> x, int axis, int delta) {
  std::vector<int> y(x.begin(), x.end());
  y[size_t(axis)] += delta;
  return y;
}

void require_full_support(const GridPmfD& v, const char* op) {
  if (!v.full_support)
    throw NotFullSupport(std::string(op) + ": V must be strictly positive on its box");
}

void check_shape(const GridPmfD& v, const GridFunctionD& f, const char* op) {
  if (f.shape != v.shape) throw ShapeError(std::string(op) + ": box shape mismatch");
}

}  // namespace

size_t GridPmfD::flat_index(std::span<const int> x) const {
  size_t idx = 0;
  for (int k = 0; k < dims(); ++k) idx = idx * size_t(shape[size_t(k)]) + size_t(x[size_t(k)]);
  return idx;
}

bool GridPmfD::in_box(std::span<const int> x) const {
  for (int k = 0; k < dims(); ++k)
    if (x[size_t(k)] < 0 || x[size_t(k)] >= shape[size_t(k)]) return false;
  return true;
}

double GridPmfD::at(std::span<const int> x) const {
  return in_box(x) ? values[flat_index(x)] : 0.0;
}

void GridPmfD::validate() const {
  if (shape.empty() || dims() > kMaxDims)
    throw InvalidParameter("GridPmfD: dimension must lie in 1..4");
  size_t expect = 1;
  for (int s : shape) {
    if (s < 1 || s > kMaxAxisLen)
      throw InvalidParameter("GridPmfD: per-axis window must lie in 1..65");
    expect *= size_t(s);
  }
  if (values.size() != expect) throw ShapeError("GridPmfD: storage/shape mismatch");
  for (double x : values)
    if (!(x >= 0.0) || !std::isfinite(x))
      throw InvalidParameter("GridPmfD: entry not a finite nonnegative real");
  double total = compensated_sum(values);
  // The box carries the product of the per-axis retained masses; comparing
  // against 1 directly would reject wide per-axis tails whose cross terms are
  // second order but real.
  double retained = 1.0;
  for (double t : tail_mass) {
    if (!(t >= 0.0)) throw InvalidParameter("GridPmfD: negative tail mass");
    retained *= 1.0 - t;
  }
  if (std::abs(total - retained) > 1e-12)
    throw InvalidParameter("GridPmfD: box mass deviates from the retained product mass");
}

bool next_site(std::span<const int> shape, std::vector<int>& x) {
  for (int k = static_cast<int>(shape.size()) - 1; k >= 0; --k) {
    if (++x[size_t(k)] < shape[size_t(k)]) return true;
    x[size_t(k)] = 0;
  }
  return false;
}

GridPmfD product_pmf(const std::vector<TruncatedPmf>& factors) {
  if (factors.empty() || static_cast<int>(factors.size()) > kMaxDims)
    throw InvalidParameter("product_pmf: need 1..4 factors");
  GridPmfD out;
  out.label = "product";
  for (const auto& f : factors) {
    if (!f.full_support)
      throw NotFullSupport("product_pmf: every factor must be full-support");
    out.shape.push_back(static_cast<int>(f.values.size()));
    out.tail_mass.push_back(f.tail_mass);
    out.label += ":" + f.label;
  }
  size_t total = 1;
  for (int s : out.shape) total *= size_t(s);
  out.values.assign(total, 1.0);
  std::vector<int> x(out.shape.size(), 0);
  do {
    double p = 1.0;
    for (size_t k = 0; k < factors.size(); ++k) p *= factors[k].values[size_t(x[k])];
    out.values[out.flat_index(x)] = p;
  } while (next_site(out.shape, x));
  out.full_support = true;
  out.validate();
  return out;
}

double eeij(const GridPmfD& v, std::span<const int> x, int i, int j) {
  require_full_support(v, "eeij");
  std::vector<int> xj = offset(x, j, 1);
  if (!v.in_box(xj)) throw WindowError("eeij: x + e_j outside the box");
  std::vector<int> xj_mi = offset(xj, i, -1);
  std::vector<int> x_mi = offset(x, i, -1);
  return v.at(xj_mi) / v.at(xj) - v.at(x_mi) / v.at(std::span<const int>(x));
}

std::vector<double> esym_matrix(const GridPmfD& v, std::span<const int> y, double c) {
  require_full_support(v, "esym_matrix");
  int d = v.dims();
  std::vector<double> m(size_t(d) * size_t(d), 0.0);
  double vy = v.at(y);
  for (int i = 0; i < d; ++i) {
    std::vector<int> ymi = offset(y, i, -1);
    for (int j = 0; j < d; ++j) {
      std::vector<int> ymj = offset(y, j, -1);
      std::vector<int> ymij = offset(ymi, j, -1);
      double e = v.at(ymi) * v.at(ymj) / vy - v.at(ymij);
      if (i == j) e -= c * v.at(ymj);
      m[size_t(i) * size_t(d) + size_t(j)] = e;
    }
  }
  return m;
}

PsdCertifyReport esym_psd_certify(const GridPmfD& v, double c) {
  require_full_support(v, "esym_psd_certify");
  int d = v.dims();
  PsdCertifyReport rep;
  rep.c = c;
  rep.min_eigenvalue = std::numeric_limits<double>::infinity();
  std::vector<int> y(size_t(d), 0);
  Eigen::MatrixXd m(d, d);
  do {
    std::vector<double> e = esym_matrix(v, y, c);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = e[size_t(i) * size_t(d) + size_t(j)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    double lo = solver.eigenvalues()(0);
    if (lo < rep.min_eigenvalue) {
      rep.min_eigenvalue = lo;
      rep.worst_site = y;
    }
  } while (next_site(v.shape, y));
  rep.certified = rep.min_eigenvalue >= -1e-12;
  return rep;
}

GridFunctionD apply_L_d(const GridPmfD& v, const GridFunctionD& f) {
  require_full_support(v, "apply_L_d");
  check_shape(v, f, "apply_L_d");
  GridFunctionD out;
  out.shape = f.shape;
  out.values.assign(f.values.size(), 0.0);
  int d = v.dims();
  std::vector<int> x(size_t(d), 0);
  do {
    size_t idx = v.flat_index(x);
    double acc = 0.0;
    double vx = v.values[idx];
    for (int i = 0; i < d; ++i) {
      if (x[size_t(i)] + 1 < v.shape[size_t(i)]) {
        std::vector<int> xp = offset(x, i, 1);
        acc += f.values[v.flat_index(xp)] - f.values[idx];
      }
      if (x[size_t(i)] > 0) {
        std::vector<int> xm = offset(x, i, -1);
        acc -= v.values[v.flat_index(xm)] / vx * (f.values[idx] - f.values[v.flat_index(xm)]);
      }
    }
    out.values[idx] = acc;
  } while (next_site(v.shape, x));
  return out;
}

namespace {

GridFunctionD gamma1_pointwise_d(const GridPmfD& v, const GridFunctionD& f,
                                 const GridFunctionD& g) {
  GridFunctionD fg;
  fg.shape = f.shape;
  fg.values.resize(f.values.size());
  for (size_t i = 0; i < f.values.size(); ++i) fg.values[i] = f.values[i] * g.values[i];
  GridFunctionD lfg = apply_L_d(v, fg);
  GridFunctionD lf = apply_L_d(v, f);
  GridFunctionD lg = apply_L_d(v, g);
  GridFunctionD out;
  out.shape = f.shape;
  out.values.resize(f.values.size());
  for (size_t i = 0; i < f.values.size(); ++i)
    out.values[i] = 0.5 * (lfg.values[i] - f.values[i] * lg.values[i] -
                           g.values[i] * lf.values[i]);
  return out;
}

GridFunctionD gamma2_pointwise_d(const GridPmfD& v, const GridFunctionD& f,
                                 const GridFunctionD& g) {
  GridFunctionD g1 = gamma1_pointwise_d(v, f, g);
  GridFunctionD lg1 = apply_L_d(v, g1);
  GridFunctionD a = gamma1_pointwise_d(v, f, apply_L_d(v, g));
  GridFunctionD b = gamma1_pointwise_d(v, g, apply_L_d(v, f));
  GridFunctionD out;
  out.shape = f.shape;
  out.values.resize(f.values.size());
  for (size_t i = 0; i < f.values.size(); ++i)
    out.values[i] = 0.5 * (lg1.values[i] - a.values[i] - b.values[i]);
  return out;
}

bool interior_supported_d(const GridPmfD& v, const GridFunctionD& f) {
  int d = v.dims();
  std::vector<int> x(size_t(d), 0);
  do {
    for (int j = 0; j < d; ++j) {
      if (x[size_t(j)] < v.shape[size_t(j)] - 3) continue;
      if (x[size_t(j)] + 1 >= v.shape[size_t(j)]) continue;
      std::vector<int> xp = offset(x, j, 1);
      if (f.values[v.flat_index(xp)] != f.values[v.flat_index(x)]) return false;
    }
  } while (next_site(v.shape, x));
  return true;
}

}  // namespace

GammaSumsD gamma_sums_d(const GridPmfD& v, const GridFunctionD& f, const GridFunctionD& g) {
  require_full_support(v, "gamma_sums_d");
  check_shape(v, f, "gamma_sums_d");
  check_shape(v, g, "gamma_sums_d");
  if (!interior_supported_d(v, f) || !interior_supported_d(v, g))
    throw WindowError("gamma_sums_d: f and g must have zero increments near every top face");
  int d = v.dims();
  GammaSumsD out;

  KahanSum g1;
  std::vector<int> x(size_t(d), 0);
  do {
    size_t idx = v.flat_index(x);
    for (int j = 0; j < d; ++j) {
      if (x[size_t(j)] + 1 >= v.shape[size_t(j)]) continue;
      std::vector<int> xp = offset(x, j, 1);
      size_t idxp = v.flat_index(xp);
      g1.add(v.values[idx] * (f.values[idxp] - f.values[idx]) *
             (g.values[idxp] - g.values[idx]));
    }
  } while (next_site(v.shape, x));
  out.gamma1 = g1.value();

  KahanSum lower;
  std::fill(x.begin(), x.end(), 0);
  do {
    for (int j = 0; j < d; ++j) {
      if (x[size_t(j)] == 0) continue;
      std::vector<int> ymj = offset(x, j, -1);
      double vymj = v.values[v.flat_index(ymj)];
      double gdiff = g.values[v.flat_index(x)] - g.values[v.flat_index(ymj)];
      if (gdiff == 0.0 && vymj == 0.0) continue;
      for (int i = 0; i < d; ++i) {
        if (x[size_t(i)] == 0) continue;
        std::vector<int> ymi = offset(x, i, -1);
        double fdiff = f.values[v.flat_index(x)] - f.values[v.flat_index(ymi)];
        lower.add(vymj * eeij(v, ymj, i, j) * fdiff * gdiff);
      }
    }
  } while (next_site(v.shape, x));
  out.gamma2_lower = lower.value();

  GridFunctionD g2 = gamma2_pointwise_d(v, f, g);
  KahanSum exact;
  for (size_t i = 0; i < v.values.size(); ++i) exact.add(v.values[i] * g2.values[i]);
  out.gamma2_exact = exact.value();
  return out;
}

BeCheckReportD integrated_be_check_d(const GridPmfD& v, double c, int trials,
                                     unsigned long long seed) {
  require_full_support(v, "integrated_be_check_d");
  BeCheckReportD rep;
  rep.c = c;
  rep.trials = trials;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  rep.worst_poincare_slack = std::numeric_limits<double>::infinity();
  for (int tr = 0; tr < trials; ++tr) {
    GridFunctionD f = random_function_d(v.shape, seed + 0x71ULL * tr, /*interior=*/true);
    GammaSumsD sums = gamma_sums_d(v, f, f);
    double margin = sums.gamma2_exact - c * sums.gamma1;
    double scale = std::max({1.0, std::abs(sums.gamma2_exact), std::abs(c * sums.gamma1)});
    rep.worst_margin = std::min(rep.worst_margin, margin);
    if (margin < -1e-10 * scale) ++rep.violations;

    KahanSum mu, sq;
    for (size_t i = 0; i < v.values.size(); ++i) mu.add(v.values[i] * f.values[i]);
    double m = mu.value();
    for (size_t i = 0; i < v.values.size(); ++i) {
      double dd = f.values[i] - m;
      sq.add(v.values[i] * dd * dd);
    }
    double slack = sums.gamma1 / c - sq.value();
    rep.worst_poincare_slack = std::min(rep.worst_poincare_slack, slack);
    if (slack < -1e-10 * std::max(1.0, sq.value())) ++rep.poincare_violations;
  }
  return rep;
}

double logsob_gap_term(const GridPmfD& v, const GridFunctionD& f, double c) {
  require_full_support(v, "logsob_gap_term");
  check_shape(v, f, "logsob_gap_term");
  for (double x : f.values)
    if (!(x > 0.0)) throw DomainError("logsob_gap_term: f must be strictly positive");
  if (!interior_supported_d(v, f))
    throw WindowError("logsob_gap_term: f must have zero increments near every top face");
  int d = v.dims();
  KahanSum acc;
  std::vector<int> y(size_t(d), 0);
  do {
    std::vector<double> e = esym_matrix(v, y, c);
    size_t idx = v.flat_index(y);
    for (int i = 0; i < d; ++i) {
      if (y[size_t(i)] == 0) continue;
      std::vector<int> ymi = offset(y, i, -1);
      double logdiff = std::log(f.values[idx]) - std::log(f.values[v.flat_index(ymi)]);
      for (int j = 0; j < d; ++j) {
        if (y[size_t(j)] == 0) continue;
        std::vector<int> ymj = offset(y, j, -1);
        double fdiff = f.values[idx] - f.values[v.flat_index(ymj)];
        acc.add(e[size_t(i) * size_t(d) + size_t(j)] * fdiff * logdiff);
      }
    }
  } while (next_site(v.shape, y));
  return acc.value();
}

double commutation_residual_d(const GridPmfD& v, const GridFunctionD& f) {
  require_full_support(v, "commutation_residual_d");
  check_shape(v, f, "commutation_residual_d");
  int d = v.dims();
  auto fat = [&](std::span<const int> x) { return f.values[v.flat_index(x)]; };
  auto lv = [&](std::span<const int> x) {
    double acc = 0.0;
    for (int i = 0; i < d; ++i) {
      std::vector<int> xp = offset(x, i, 1);
      std::vector<int> xm = offset(x, i, -1);
      acc += fat(xp) - fat(std::span<const int>(x));
      double vm = v.at(xm);
      if (vm > 0.0)
        acc -= vm / v.at(std::span<const int>(x)) * (fat(std::span<const int>(x)) - fat(xm));
    }
    return acc;
  };
  auto lij = [&](std::span<const int> x, int i, int j) {
    std::vector<int> xj = offset(x, j, 1);
    std::vector<int> xjmi = offset(xj, i, -1);
    std::vector<int> xmi = offset(x, i, -1);
    return fat(xj) - fat(xjmi) - fat(std::span<const int>(x)) + fat(xmi);
  };

  double worst = 0.0;
  std::vector<int> x(size_t(d), 0);
  do {
    bool interior = true;
    for (int k = 0; k < d; ++k)
      if (x[size_t(k)] < 1 || x[size_t(k)] > v.shape[size_t(k)] - 3) interior = false;
    if (!interior) continue;
    for (int j = 0; j < d; ++j) {
      std::vector<int> xj = offset(x, j, 1);
      double lhs = lv(xj) - lv(x);
      double rhs = 0.0;
      double scale = std::abs(lhs);
      for (int i = 0; i < d; ++i) {
        std::vector<int> xi = offset(x, i, 1);
        std::vector<int> xmi = offset(x, i, -1);
        std::vector<int> xjmi = offset(xj, i, -1);
        double term = lij(xi, i, j) -
                      lij(x, i, j) * v.at(xmi) / v.at(std::span<const int>(x)) -
                      eeij(v, x, i, j) * (fat(xj) - fat(xjmi));
        rhs += term;
        scale += std::abs(term);
      }
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, scale));
    }
  } while (next_site(v.shape, x));
  return worst;
}

GridFunctionD random_function_d(const std::vector<int>& shape, unsigned long long seed,
                                bool interior, double bound) {
  std::mt19937_64 rng(seed ^ 0xa0761d6478bd642fULL);
  std::uniform_real_distribution<double> unif(-bound, bound);
  GridFunctionD f;
  f.shape = shape;
  size_t total = 1;
  for (int s : shape) total *= size_t(s);
  f.values.resize(total);
  // Draw on the clamped interior and extend constantly across the 2-cell
  // margin at each top face.
  std::vector<double> base(total);
  for (double& x : base) x = std::exp(unif(rng));
  GridPmfD idx;  // reuse the flat-index helper
  idx.shape = shape;
  idx.values.assign(total, 0.0);
  std::vector<int> x(shape.size(), 0);
  do {
    std::vector<int> src = x;
    if (interior) {
      for (size_t k = 0; k < shape.size(); ++k)
        src[k] = std::min(src[k], shape[k] - 3);
    }
    f.values[idx.flat_index(x)] = base[idx.flat_index(src)];
  } while (next_site(shape, x));
  return f;
}

}  // namespace bd
