#include "bd/pmf.hpp"

#include <algorithm>
#include <cmath>

#include "bd/errors.hpp"
#include "bd/numerics.hpp"

namespace bd {

namespace {

bool all_positive(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x > 0.0; });
}

TruncatedPmf finish(std::vector<double> values, double tail, std::string label) {
  TruncatedPmf out;
  out.values = std::move(values);
  out.tail_mass = tail;
  out.label = std::move(label);
  out.full_support = all_positive(out.values);
  out.validate();
  return out;
}

}  // namespace

double TruncatedPmf::sum() const { return compensated_sum(values); }

double TruncatedPmf::mean() const {
  KahanSum acc;
  for (size_t x = 0; x < values.size(); ++x) acc.add(double(x) * values[x]);
  return acc.value();
}

void TruncatedPmf::validate() const {
  if (values.empty()) throw InvalidParameter("pmf: empty window");
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw InvalidParameter("pmf: entry not a finite nonnegative real");
  }
  if (!(tail_mass >= 0.0)) throw InvalidParameter("pmf: negative tail mass");
  double total = sum() + tail_mass;
  if (std::abs(total - 1.0) > 1e-12)
    throw InvalidParameter("pmf: sum + tail_mass deviates from 1 by more than 1e-12");
}

TruncatedPmf pmf_poisson_window(double lambda, double eps_tail, int min_len) {
  if (!std::isfinite(lambda) || lambda <= 0.0)
    throw InvalidParameter("pmf_poisson: lambda must be a finite positive real");
  if (!(eps_tail > 0.0) || eps_tail > 1e-3)
    throw InvalidParameter("pmf_poisson: eps_tail must lie in (0, 1e-3]");

  // Smallest N with a certified geometric tail bound <= eps_tail. The bound
  // requires the term ratio lambda/(N+2) < 1, so start above lambda.
  int n = std::max(1, static_cast<int>(std::ceil(lambda)));
  for (;; ++n) {
    double r = lambda / (double(n) + 2.0);
    if (r >= 1.0) continue;
    double bound = std::exp(log_poisson_pmf(lambda, n + 1)) / (1.0 - r);
    if (bound <= eps_tail) break;
    if (n > 200000) throw NumericError("pmf_poisson: window search did not terminate");
  }
  n = std::max(n, min_len - 1);

  std::vector<double> values(size_t(n) + 1);
  for (int x = 0; x <= n; ++x)
    values[size_t(x)] = std::exp(log_poisson_pmf(lambda, x));
  double tail = std::max(0.0, 1.0 - compensated_sum(values));
  return finish(std::move(values), tail, "poisson(" + std::to_string(lambda) + ")");
}

TruncatedPmf pmf_poisson(double lambda, double eps_tail) {
  return pmf_poisson_window(lambda, eps_tail, 0);
}

TruncatedPmf pmf_bernoulli_sum(const std::vector<double>& probs) {
  if (probs.empty()) throw InvalidParameter("pmf_bernoulli_sum: empty probability list");
  for (double p : probs) {
    if (!std::isfinite(p) || p <= 0.0 || p >= 1.0)
      throw InvalidParameter("pmf_bernoulli_sum: each p must lie in (0,1)");
  }
  std::vector<double> values{1.0};
  for (double p : probs) {
    std::vector<double> next(values.size() + 1, 0.0);
    for (size_t x = 0; x < values.size(); ++x) {
      next[x] += values[x] * (1.0 - p);
      next[x + 1] += values[x] * p;
    }
    values = std::move(next);
  }
  return finish(std::move(values), 0.0, "bernoullisum(n=" + std::to_string(probs.size()) + ")");
}

TruncatedPmf pmf_negative_binomial(double n, double p, double eps_tail) {
  if (!std::isfinite(n) || n <= 0.0)
    throw InvalidParameter("pmf_negative_binomial: n must be a finite positive real");
  if (!std::isfinite(p) || p <= 0.0 || p >= 1.0)
    throw InvalidParameter("pmf_negative_binomial: p must lie in (0,1)");
  if (!(eps_tail > 0.0) || eps_tail > 1e-3)
    throw InvalidParameter("pmf_negative_binomial: eps_tail must lie in (0, 1e-3]");

  auto log_pmf = [&](int x) {
    return std::lgamma(n + x) - std::lgamma(double(x) + 1.0) - std::lgamma(n) +
           double(x) * std::log(p) + n * std::log1p(-p);
  };
  // Successive term ratio is p (n+x)/(x+1) <= p max(1, (n+N+1)/(N+2)) beyond N.
  int nn = std::max(1, static_cast<int>(std::ceil(n * p / (1.0 - p))));
  for (;; ++nn) {
    double r = p * std::max(1.0, (n + double(nn) + 1.0) / (double(nn) + 2.0));
    if (r >= 1.0) continue;
    double bound = std::exp(log_pmf(nn + 1)) / (1.0 - r);
    if (bound <= eps_tail) break;
    if (nn > 500000)
      throw NumericError("pmf_negative_binomial: window search did not terminate");
  }
  std::vector<double> values(size_t(nn) + 1);
  for (int x = 0; x <= nn; ++x) values[size_t(x)] = std::exp(log_pmf(x));
  double tail = std::max(0.0, 1.0 - compensated_sum(values));
  return finish(std::move(values), tail,
                "negbin(" + std::to_string(n) + "," + std::to_string(p) + ")");
}

TruncatedPmf pmf_from_weights(const std::vector<double>& weights) {
  if (weights.empty()) throw InvalidParameter("pmf_from_weights: empty weight list");
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0)
      throw InvalidParameter("pmf_from_weights: weights must be finite and nonnegative");
    total += w;
  }
  if (total <= 0.0)
    throw InvalidParameter("pmf_from_weights: at least one weight must be positive");
  std::vector<double> values(weights.size());
  for (size_t i = 0; i < weights.size(); ++i) values[i] = weights[i] / total;
  return finish(std::move(values), 0.0, "weights");
}

TruncatedPmf pmf_convolve(const TruncatedPmf& u, const TruncatedPmf& v) {
  std::vector<double> w(u.values.size() + v.values.size() - 1, 0.0);
  for (size_t i = 0; i < u.values.size(); ++i) {
    if (u.values[i] == 0.0) continue;
    for (size_t j = 0; j < v.values.size(); ++j)
      w[i + j] += u.values[i] * v.values[j];
  }
  double tail = std::max(0.0, 1.0 - compensated_sum(w));
  return finish(std::move(w), tail, u.label + "*" + v.label);
}

TruncatedPmf pmf_perturb(const TruncatedPmf& v, double eps) {
  if (!std::isfinite(eps) || eps <= 0.0)
    throw InvalidParameter("pmf_perturb: eps must be a finite positive real");
  TruncatedPmf noise = pmf_poisson(eps, std::min(1e-15, 1e-3));
  TruncatedPmf out = pmf_convolve(v, noise);
  out.label = v.label + "+poisson(" + std::to_string(eps) + ")";
  return out;
}

TruncatedPmf pmf_delta(int x0, int len) {
  if (x0 < 0 || x0 >= len) throw InvalidParameter("pmf_delta: x0 outside window");
  std::vector<double> values(size_t(len), 0.0);
  values[size_t(x0)] = 1.0;
  return finish(std::move(values), 0.0, "delta(" + std::to_string(x0) + ")");
}

}  // namespace bd
