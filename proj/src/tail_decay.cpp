#include "bd/tail_decay.hpp"

#include <algorithm>
#include <cmath>

#include "bd/errors.hpp"
#include "bd/numerics.hpp"

namespace bd {

double bennett_h(double s) {
  if (s < 0.0) throw DomainError("bennett_h: s must be nonnegative");
  return (1.0 + s) * std::log1p(s) - s;
}

double chernoff_k(double u) {
  if (u < 0.0) throw DomainError("chernoff_k: u must be nonnegative");
  return u * std::log1p(u) / 4.0;
}

double concentration_bound(double c, double t) {
  if (!(c > 0.0) || !(t > 0.0))
    throw InvalidParameter("concentration_bound: c and t must be positive");
  return std::exp(-bennett_h(c * t) / c);
}

double phi_function(double u) { return u * std::exp(u) - std::expm1(u); }

double w_lemma(double u, double s) {
  return -(u / s - 1.0) * std::log(u) + (1.0 - u) * (1.0 - 1.0 / s);
}

double exact_tail(const TruncatedPmf& v, const GridFunction& g, double t) {
  require_same_window(g, static_cast<int>(v.values.size()), "exact_tail");
  KahanSum mu;
  for (size_t x = 0; x < v.values.size(); ++x) mu.add(v.values[x] * g.values[x]);
  double threshold = mu.value() + t;
  KahanSum tail;
  for (size_t x = 0; x < v.values.size(); ++x)
    if (g.values[x] >= threshold) tail.add(v.values[x]);
  return tail.value();
}

std::vector<ChernoffRow> chernoff_scan(const TruncatedPmf& v, const GridFunction& g,
                                       const std::vector<double>& sigmas, double c) {
  int n = static_cast<int>(v.values.size());
  require_same_window(g, n, "chernoff_scan");
  if (!(c > 0.0)) throw InvalidParameter("chernoff_scan: c must be positive");
  for (int x = 0; x + 1 < n; ++x)
    if (std::abs(g[x + 1] - g[x]) > 1.0 + 1e-12)
      throw InvalidParameter("chernoff_scan: g must satisfy sup |Delta g| <= 1");

  KahanSum mu;
  for (int x = 0; x < n; ++x) mu.add(v.values[size_t(x)] * g[x]);
  double h0 = mu.value();

  std::vector<ChernoffRow> rows;
  std::vector<double> logs(static_cast<size_t>(n));
  for (double sigma : sigmas) {
    ChernoffRow row;
    row.sigma = sigma;
    if (sigma == 0.0) {
      row.h = h0;
      row.log_g = 0.0;
      row.bound = h0;
    } else {
      for (int x = 0; x < n; ++x)
        logs[size_t(x)] = std::log(v.values[size_t(x)]) + sigma * g[x];
      row.log_g = logsumexp(logs);
      row.h = row.log_g / sigma;
      row.bound = h0 + (std::exp(sigma) - sigma - 1.0) / (c * sigma);
    }
    row.margin = row.bound - row.h;
    row.ok = row.margin >= -1e-10 * std::max(1.0, std::abs(row.bound));
    rows.push_back(row);
  }
  return rows;
}

DecayFamily poisson_thinning_family(double lambda) {
  if (!(lambda > 0.0))
    throw InvalidParameter("poisson_thinning_family: lambda must be positive");
  DecayFamily fam;
  fam.log_v = [lambda](double t, int x) {
    return log_poisson_pmf(lambda * std::exp(-t), x);
  };
  fam.alpha = [lambda](double t) { return lambda * std::exp(-t); };
  fam.c = [lambda](double t) { return std::exp(t) / lambda; };
  return fam;
}

namespace {

// dp(x)/dt = alpha_t (r_t(x) p(x+1) - r_t(x-1) p(x)), r_t(x) = V_t(x)/V_t(x+1).
std::vector<double> death_derivative(const DecayFamily& fam, double t,
                                     const std::vector<double>& p) {
  int n = static_cast<int>(p.size());
  double a = fam.alpha(t);
  std::vector<double> r(size_t(n), 0.0);  // r[x] = V(x)/V(x+1)
  for (int x = 0; x < n; ++x) r[size_t(x)] = std::exp(fam.log_v(t, x) - fam.log_v(t, x + 1));
  std::vector<double> dp(size_t(n), 0.0);
  for (int x = 0; x < n; ++x) {
    double acc = 0.0;
    if (x + 1 < n) acc += r[size_t(x)] * p[size_t(x + 1)];
    if (x > 0) acc -= r[size_t(x - 1)] * p[size_t(x)];
    dp[size_t(x)] = a * acc;
  }
  return dp;
}

template <typename Deriv>
void rk4_span(std::vector<double>& state, double t0, double t1, int steps, Deriv deriv) {
  double dt = (t1 - t0) / double(steps);
  int n = static_cast<int>(state.size());
  for (int s = 0; s < steps; ++s) {
    double t = t0 + dt * double(s);
    std::vector<double> k1 = deriv(t, state);
    std::vector<double> tmp(state);
    for (int i = 0; i < n; ++i) tmp[size_t(i)] = state[size_t(i)] + 0.5 * dt * k1[size_t(i)];
    std::vector<double> k2 = deriv(t + 0.5 * dt, tmp);
    for (int i = 0; i < n; ++i) tmp[size_t(i)] = state[size_t(i)] + 0.5 * dt * k2[size_t(i)];
    std::vector<double> k3 = deriv(t + 0.5 * dt, tmp);
    for (int i = 0; i < n; ++i) tmp[size_t(i)] = state[size_t(i)] + dt * k3[size_t(i)];
    std::vector<double> k4 = deriv(t + dt, tmp);
    for (int i = 0; i < n; ++i)
      state[size_t(i)] += dt / 6.0 *
                          (k1[size_t(i)] + 2.0 * k2[size_t(i)] + 2.0 * k3[size_t(i)] +
                           k4[size_t(i)]);
  }
}

double sup_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Integrate one grid interval with Richardson refinement until the
// step-doubled solutions agree to tol.
template <typename Deriv>
void integrate_interval(std::vector<double>& state, double t0, double t1, double tol,
                        int base_steps, Deriv deriv, const char* op) {
  if (t1 == t0) return;
  int steps = std::max(2, base_steps);
  for (int attempt = 0; attempt < 12; ++attempt) {
    std::vector<double> coarse(state);
    rk4_span(coarse, t0, t1, steps, deriv);
    std::vector<double> fine(state);
    rk4_span(fine, t0, t1, 2 * steps, deriv);
    if (sup_abs_diff(coarse, fine) <= tol) {
      state = std::move(fine);
      return;
    }
    steps *= 2;
  }
  throw AccuracyError(std::string(op) + ": step-doubling did not reach tol on [" +
                      std::to_string(t0) + ", " + std::to_string(t1) + "]");
}

double relative_entropy_vs_family(const std::vector<double>& p, const DecayFamily& fam,
                                  double t) {
  KahanSum acc;
  for (int x = 0; x < static_cast<int>(p.size()); ++x) {
    double px = p[size_t(x)];
    if (px <= 0.0) continue;  // integrator round-off may leave tiny negatives
    acc.add(px * (std::log(px) - fam.log_v(t, x)));
  }
  return acc.value();
}

}  // namespace

std::vector<DecayRow> thinning_decay_trace(const TruncatedPmf& p0, const DecayFamily& fam,
                                           const std::vector<double>& t_grid, double tol,
                                           int window_len,
                                           const std::function<double(double)>& exponent_rate) {
  if (!(tol > 0.0)) throw InvalidParameter("thinning_decay_trace: tol must be positive");
  std::vector<double> p(size_t(window_len), 0.0);
  for (int x = 0; x < window_len; ++x) p[size_t(x)] = p0.at(x);

  double d0 = relative_entropy_vs_family(p, fam, 0.0);
  auto deriv = [&fam](double t, const std::vector<double>& state) {
    return death_derivative(fam, t, state);
  };

  // Base substep count from the largest jump rate on the window; for the
  // Poisson family alpha_t r_t(x) = x+1.
  double rate = double(window_len) + 1.0;

  std::vector<DecayRow> rows;
  double t_prev = 0.0;
  if (!t_grid.empty() && t_grid.front() == 0.0) {
    rows.push_back({0.0, d0, d0});
  }
  for (double t : t_grid) {
    if (t < t_prev) throw InvalidParameter("thinning_decay_trace: t_grid must be nondecreasing");
    if (t == 0.0) continue;
    int base = std::max(4, static_cast<int>(std::ceil((t - t_prev) * rate * 0.5)));
    integrate_interval(p, t_prev, t, tol, base, deriv, "thinning_decay_trace");
    t_prev = t;
    DecayRow row;
    row.t = t;
    row.d = relative_entropy_vs_family(p, fam, t);
    row.bound = d0 * std::exp(-exponent_rate(t));
    rows.push_back(row);
  }
  return rows;
}

std::vector<DecayRow> thinning_decay_trace(const TruncatedPmf& p0, double lambda,
                                           const std::vector<double>& t_grid, double tol) {
  TruncatedPmf v0 = pmf_poisson(lambda, 1e-12);
  int window_len = std::max(static_cast<int>(v0.values.size()),
                            static_cast<int>(p0.values.size()));
  DecayFamily fam = poisson_thinning_family(lambda);
  return thinning_decay_trace(p0, fam, t_grid, tol, window_len,
                              [](double t) { return t; });
}

int hyper_window_length(double lambda, double p, double max_increment) {
  double lambda_eff = lambda * std::exp(1.05 * std::max(0.0, p) * std::max(0.0, max_increment));
  lambda_eff = std::max(lambda_eff, lambda);
  TruncatedPmf probe = pmf_poisson(lambda_eff, 1e-13);
  return static_cast<int>(probe.values.size()) + 5;
}

std::vector<HyperRow> hypercontractivity_trace(double lambda, const GridFunction& g0,
                                               double p, const std::vector<double>& t_grid,
                                               double tol) {
  if (!(lambda > 0.0)) throw InvalidParameter("hypercontractivity_trace: lambda must be positive");
  if (!(p > 1.0)) throw InvalidParameter("hypercontractivity_trace: p must exceed 1");
  if (!g0.finite()) throw InvalidParameter("hypercontractivity_trace: g0 must be finite");
  if (!(tol > 0.0)) throw InvalidParameter("hypercontractivity_trace: tol must be positive");
  int n = static_cast<int>(g0.values.size());
  DecayFamily fam = poisson_thinning_family(lambda);

  // Evolve w = q(t) g_t instead of g_t: dw = -alpha c w + alpha rho(x)(w(x) - w(x-1))
  // with rho(x) = V(x-1)/V(x); for the Poisson family alpha rho(x) = x and
  // alpha c = 1, so the tilted exponents stay directly comparable in size.
  auto deriv = [&fam](double t, const std::vector<double>& w) {
    int m = static_cast<int>(w.size());
    double a = fam.alpha(t);
    double ac = fam.alpha(t) * fam.c(t);
    std::vector<double> dw(size_t(m), 0.0);
    for (int x = 0; x < m; ++x) dw[size_t(x)] = -ac * w[size_t(x)];
    for (int x = 1; x < m; ++x) {
      double rho = std::exp(fam.log_v(t, x - 1) - fam.log_v(t, x));
      dw[size_t(x)] += a * rho * (w[size_t(x)] - w[size_t(x - 1)]);
    }
    return dw;
  };

  auto eval_u = [&](const std::vector<double>& w, double t, double q, int len) {
    std::vector<double> logs(static_cast<size_t>(len));
    for (int x = 0; x < len; ++x) logs[size_t(x)] = fam.log_v(t, x) + w[size_t(x)];
    return logsumexp(logs) / q;
  };

  std::vector<double> w(static_cast<size_t>(n));
  for (int x = 0; x < n; ++x) w[size_t(x)] = p * g0[x];

  std::vector<HyperRow> rows;
  double t_prev = 0.0;
  auto window_check = [&](double u_full, double u_short, double q) {
    // Shrinking the window must not move log Lambda.
    if (std::abs(u_short - u_full) * std::abs(q) >
        std::max(2e-8, 0.01 * tol) * (1.0 + std::abs(u_full)))
      throw AccuracyError("hypercontractivity_trace: window too narrow for the tilted sum");
  };
  {
    HyperRow row{0.0, p, eval_u(w, 0.0, p, n)};
    window_check(row.u, eval_u(w, 0.0, p, n - 3), p);
    if (!t_grid.empty() && t_grid.front() == 0.0) rows.push_back(row);
  }
  for (double t : t_grid) {
    if (t < t_prev)
      throw InvalidParameter("hypercontractivity_trace: t_grid must be nondecreasing");
    if (t == 0.0) continue;
    double q = p * std::exp(-t);
    // Each site x carries a growing mode of rate x-1, so integration error at
    // the highest sites is amplified by exp((x-1)t) and eventually dominates
    // the tilted sum. The coupling runs strictly downward, so those sites can
    // be truncated exactly; their tilted weight shrinks with lambda(t) while
    // the amplification grows, so drop sites once the amplification horizon
    // or their current contribution makes them useless.
    int m = static_cast<int>(w.size());
    double top = -std::numeric_limits<double>::infinity();
    for (int x = 0; x < m; ++x)
      top = std::max(top, fam.log_v(t_prev, x) + w[size_t(x)]);
    while (m > 8 && (double(m - 2) * t > 18.0 ||
                     fam.log_v(t_prev, m - 1) + w[size_t(m - 1)] < top - 40.0))
      --m;
    w.resize(size_t(m));

    // The same growing modes rule out a sup-norm Richardson test on w;
    // measure the step-doubling error in the functional u itself, and keep
    // the base step count high enough that the per-interval truncation error
    // of the fastest retained mode stays tiny (the system is small, so this
    // is cheap).
    int steps = std::max(4, static_cast<int>(std::ceil(40.0 * (m - 2) * (t - t_prev))));
    bool converged = false;
    for (int attempt = 0; attempt < 12 && !converged; ++attempt) {
      std::vector<double> coarse(w);
      rk4_span(coarse, t_prev, t, steps, deriv);
      std::vector<double> fine(w);
      rk4_span(fine, t_prev, t, 2 * steps, deriv);
      double uc = eval_u(coarse, t, q, m);
      double uf = eval_u(fine, t, q, m);
      if (std::abs(uc - uf) <= 0.1 * tol * (1.0 + std::abs(uf))) {
        w = std::move(fine);
        converged = true;
      }
      steps *= 2;
    }
    if (!converged)
      throw AccuracyError("hypercontractivity_trace: step-doubling did not reach tol on [" +
                          std::to_string(t_prev) + ", " + std::to_string(t) + "]");
    t_prev = t;
    HyperRow row{t, q, eval_u(w, t, q, m)};
    window_check(row.u, eval_u(w, t, q, m - 3), q);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace bd
