#include "bd/semigroup.hpp"

#include <cmath>

#include "bd/errors.hpp"
#include "bd/numerics.hpp"

namespace bd {

namespace {

void require_full_support(const TruncatedPmf& v, const char* op) {
  if (!v.full_support)
    throw NotFullSupport(std::string(op) + ": V must be strictly positive on its window");
}

// result = v P^0 w_0 + v P^1 w_1 + ... with P = I + Q/eta, w_k the Poisson(eta t)
// weights. Series truncated once the remaining Poisson mass is <= tol.
std::vector<double> uniformized_expm(const GeneratorMatrix& q, std::vector<double> vec,
                                     double t, double tol, bool adjoint) {
  int n = q.size();
  if (t == 0.0) return vec;
  double eta = 0.0;
  for (double d : q.diag) eta = std::max(eta, -d);
  eta *= 1.0001;  // keep P strictly substochastic on the diagonal
  double mu = eta * t;

  std::vector<double> result(size_t(n), 0.0);
  std::vector<double> cur = std::move(vec);
  std::vector<double> next(static_cast<size_t>(n));
  KahanSum weight_sum;
  int k = 0;
  for (;; ++k) {
    double w = std::exp(-mu + double(k) * std::log(mu) - std::lgamma(double(k) + 1.0));
    for (int i = 0; i < n; ++i) result[size_t(i)] += w * cur[size_t(i)];
    weight_sum.add(w);
    if (double(k) >= mu && 1.0 - weight_sum.value() <= 0.5 * tol) break;
    if (k > 20000000)
      throw AccuracyError("uniformized_expm: series did not converge (eta t = " +
                          std::to_string(mu) + ")");
    const std::vector<double>& qv = adjoint ? q.apply_adjoint(cur) : q.apply(cur);
    for (int i = 0; i < n; ++i) next[size_t(i)] = cur[size_t(i)] + qv[size_t(i)] / eta;
    std::swap(cur, next);
  }
  return result;
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<double> evolve_checked(const GeneratorMatrix& q, std::vector<double> v0,
                                   double t, double tol, bool adjoint, const char* op) {
  // The certified series tail is a bound on dropped Poisson weight, so the
  // value error scales with the sup norm of the input.
  double scale = 1.0;
  for (double x : v0) scale = std::max(scale, std::abs(x));
  std::vector<double> full = uniformized_expm(q, v0, t, tol, adjoint);
  std::vector<double> half = uniformized_expm(q, std::move(v0), t / 2.0, tol, adjoint);
  half = uniformized_expm(q, std::move(half), t / 2.0, tol, adjoint);
  double diff = sup_diff(full, half);
  if (diff > (2.0 * tol + 1e-13) * scale)
    throw AccuracyError(std::string(op) + ": step-doubling check failed, sup diff " +
                        std::to_string(diff) + " exceeds 2 tol at the input scale");
  return full;
}

}  // namespace

GeneratorMatrix GeneratorMatrix::from_pmf(const TruncatedPmf& v) {
  require_full_support(v, "GeneratorMatrix");
  int n = static_cast<int>(v.values.size());
  GeneratorMatrix q;
  q.down.assign(size_t(n), 0.0);
  q.up.assign(size_t(n), 1.0);
  q.diag.assign(size_t(n), 0.0);
  q.up[size_t(n - 1)] = 0.0;
  for (int x = 1; x < n; ++x) q.down[size_t(x)] = v.values[size_t(x - 1)] / v.values[size_t(x)];
  for (int x = 0; x < n; ++x) q.diag[size_t(x)] = -(q.up[size_t(x)] + q.down[size_t(x)]);
  return q;
}

std::vector<double> GeneratorMatrix::apply(const std::vector<double>& f) const {
  int n = size();
  if (static_cast<int>(f.size()) != n) throw ShapeError("GeneratorMatrix::apply: size mismatch");
  std::vector<double> out(static_cast<size_t>(n));
  for (int x = 0; x < n; ++x) {
    double acc = diag[size_t(x)] * f[size_t(x)];
    if (x + 1 < n) acc += up[size_t(x)] * f[size_t(x + 1)];
    if (x > 0) acc += down[size_t(x)] * f[size_t(x - 1)];
    out[size_t(x)] = acc;
  }
  return out;
}

std::vector<double> GeneratorMatrix::apply_adjoint(const std::vector<double>& p) const {
  int n = size();
  if (static_cast<int>(p.size()) != n)
    throw ShapeError("GeneratorMatrix::apply_adjoint: size mismatch");
  std::vector<double> out(static_cast<size_t>(n));
  for (int x = 0; x < n; ++x) {
    double acc = diag[size_t(x)] * p[size_t(x)];
    if (x > 0) acc += up[size_t(x - 1)] * p[size_t(x - 1)];
    if (x + 1 < n) acc += down[size_t(x + 1)] * p[size_t(x + 1)];
    out[size_t(x)] = acc;
  }
  return out;
}

GridFunction apply_L(const TruncatedPmf& v, const GridFunction& f) {
  require_full_support(v, "apply_L");
  int n = static_cast<int>(v.values.size());
  require_same_window(f, n, "apply_L");
  GridFunction out(n, 0.0);
  for (int x = 0; x < n; ++x) {
    double acc = 0.0;
    if (x + 1 < n) acc += f[x + 1] - f[x];
    if (x > 0) acc -= v.values[size_t(x - 1)] / v.values[size_t(x)] * (f[x] - f[x - 1]);
    out[x] = acc;
  }
  return out;
}

std::vector<double> apply_L_adjoint(const TruncatedPmf& v, const TruncatedPmf& p) {
  GeneratorMatrix q = GeneratorMatrix::from_pmf(v);
  if (p.values.size() != v.values.size())
    throw ShapeError("apply_L_adjoint: p and V must share a window");
  return q.apply_adjoint(p.values);
}

TruncatedPmf evolve_pmf(const TruncatedPmf& v, const TruncatedPmf& p0, double t, double tol) {
  if (t < 0.0) throw InvalidParameter("evolve_pmf: t must be nonnegative");
  if (!(tol > 0.0)) throw InvalidParameter("evolve_pmf: tol must be positive");
  GeneratorMatrix q = GeneratorMatrix::from_pmf(v);
  if (p0.values.size() != v.values.size())
    throw ShapeError("evolve_pmf: p0 and V must share a window");
  TruncatedPmf out = p0;
  out.values = evolve_checked(q, p0.values, t, tol, /*adjoint=*/true, "evolve_pmf");
  for (double& x : out.values) x = std::max(x, 0.0);
  out.tail_mass = std::max(0.0, 1.0 - out.sum());
  out.label = p0.label + "@t=" + std::to_string(t);
  out.full_support = true;
  for (double x : out.values)
    if (!(x > 0.0)) out.full_support = false;
  return out;
}

GridFunction evolve_function(const TruncatedPmf& v, const GridFunction& f0, double t,
                             double tol) {
  if (t < 0.0) throw InvalidParameter("evolve_function: t must be nonnegative");
  if (!(tol > 0.0)) throw InvalidParameter("evolve_function: tol must be positive");
  GeneratorMatrix q = GeneratorMatrix::from_pmf(v);
  require_same_window(f0, q.size(), "evolve_function");
  return GridFunction(
      evolve_checked(q, f0.values, t, tol, /*adjoint=*/false, "evolve_function"));
}

SelfAdjointTriple verify_self_adjoint(const TruncatedPmf& v, const GridFunction& f,
                                      const GridFunction& g) {
  require_full_support(v, "verify_self_adjoint");
  int n = static_cast<int>(v.values.size());
  require_same_window(f, n, "verify_self_adjoint");
  require_same_window(g, n, "verify_self_adjoint");
  GridFunction lf = apply_L(v, f);
  GridFunction lg = apply_L(v, g);
  KahanSum a, b, c;
  for (int x = 0; x < n; ++x) {
    a.add(v.values[size_t(x)] * f[x] * lg[x]);
    b.add(v.values[size_t(x)] * lf[x] * g[x]);
    if (x + 1 < n)
      c.add(-v.values[size_t(x)] * (f[x + 1] - f[x]) * (g[x + 1] - g[x]));
  }
  return {a.value(), b.value(), c.value()};
}

}  // namespace bd
