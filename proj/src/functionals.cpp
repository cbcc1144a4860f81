#include "bd/functionals.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "bd/curvature.hpp"
#include "bd/errors.hpp"
#include "bd/numerics.hpp"
#include "bd/random_inputs.hpp"

namespace bd {

namespace {

void require_positive(const GridFunction& f, const char* op) {
  if (!f.positive())
    throw DomainError(std::string(op) + ": f must have strictly positive values");
}

void check_window(const TruncatedPmf& v, const GridFunction& f, const char* op) {
  require_same_window(f, static_cast<int>(v.values.size()), op);
}

}  // namespace

double entropy(const TruncatedPmf& v, const GridFunction& f) {
  check_window(v, f, "entropy");
  require_positive(f, "entropy");
  KahanSum mu, e;
  for (size_t x = 0; x < v.values.size(); ++x) mu.add(v.values[x] * f.values[x]);
  for (size_t x = 0; x < v.values.size(); ++x)
    e.add(v.values[x] * f.values[x] * std::log(f.values[x]));
  double m = mu.value();
  return e.value() - m * std::log(m);
}

double variance(const TruncatedPmf& v, const GridFunction& f) {
  check_window(v, f, "variance");
  KahanSum mu;
  for (size_t x = 0; x < v.values.size(); ++x) mu.add(v.values[x] * f.values[x]);
  double m = mu.value();
  KahanSum var;
  for (size_t x = 0; x < v.values.size(); ++x) {
    double d = f.values[x] - m;
    var.add(v.values[x] * d * d);
  }
  return var.value();
}

double relative_entropy(const TruncatedPmf& p, const TruncatedPmf& q) {
  KahanSum acc;
  for (int x = 0; x <= p.max_index(); ++x) {
    double px = p.at(x);
    if (px == 0.0) continue;
    double qx = q.at(x);
    if (qx <= 0.0)
      throw DomainError("relative_entropy: p is not absolutely continuous w.r.t. q");
    acc.add(px * std::log(px / qx));
  }
  return acc.value();
}

SizeBiasResult size_bias_transform(const TruncatedPmf& p, const TruncatedPmf& v) {
  if (!v.full_support)
    throw NotFullSupport("size_bias_transform: V must be strictly positive on its window");
  int n = std::min(p.max_index(), v.max_index());
  std::vector<double> w(size_t(std::max(n, 1)), 0.0);
  KahanSum total;
  for (int x = 0; x < n; ++x) {
    w[size_t(x)] = p.at(x + 1) * v.values[size_t(x)] / v.values[size_t(x + 1)];
    total.add(w[size_t(x)]);
  }
  double z = total.value();
  if (z <= 0.0)
    throw DegenerateInput("size_bias_transform: p has no mass above 0; K undefined");
  SizeBiasResult out;
  out.k = 1.0 / z;
  for (double& x : w) x *= out.k;
  out.phat.values = std::move(w);
  out.phat.tail_mass = 0.0;
  out.phat.label = "sizebias(" + p.label + ")";
  out.phat.full_support =
      std::all_of(out.phat.values.begin(), out.phat.values.end(), [](double x) { return x > 0.0; });
  return out;
}

double mlsi_rhs_new(const TruncatedPmf& v, const GridFunction& f) {
  check_window(v, f, "mlsi_rhs_new");
  require_positive(f, "mlsi_rhs_new");
  int n = static_cast<int>(v.values.size());
  KahanSum acc;
  for (int x = 0; x + 1 < n; ++x) {
    double r = f[x] / f[x + 1];
    acc.add(v.values[size_t(x)] * f[x + 1] * (-std::log(r) - 1.0 + r));
  }
  return acc.value();
}

double mlsi_rhs_caputo(const TruncatedPmf& v, const GridFunction& f) {
  check_window(v, f, "mlsi_rhs_caputo");
  require_positive(f, "mlsi_rhs_caputo");
  int n = static_cast<int>(v.values.size());
  KahanSum acc;
  for (int x = 0; x + 1 < n; ++x)
    acc.add(v.values[size_t(x)] * (f[x + 1] - f[x]) * (std::log(f[x + 1]) - std::log(f[x])));
  return acc.value();
}

double mlsi_rhs_bl(const TruncatedPmf& v, const GridFunction& f) {
  check_window(v, f, "mlsi_rhs_bl");
  require_positive(f, "mlsi_rhs_bl");
  int n = static_cast<int>(v.values.size());
  KahanSum acc;
  for (int x = 0; x + 1 < n; ++x) {
    double d = f[x + 1] - f[x];
    acc.add(v.values[size_t(x)] * d * d / f[x]);
  }
  return acc.value();
}

double mlsi_rhs_diff(const TruncatedPmf& v, const GridFunction& f) {
  check_window(v, f, "mlsi_rhs_diff");
  require_positive(f, "mlsi_rhs_diff");
  int n = static_cast<int>(v.values.size());
  KahanSum acc;
  for (int x = 0; x + 1 < n; ++x) {
    double r = f[x + 1] / f[x];
    acc.add(v.values[size_t(x)] * f[x] * (-std::log(r) - 1.0 + r));
  }
  return acc.value();
}

LsiReport lsi_verify(const TruncatedPmf& v, const GridFunction& f, double c) {
  LsiReport rep;
  rep.ent = entropy(v, f);
  rep.rhs_new = mlsi_rhs_new(v, f);
  rep.rhs_caputo = mlsi_rhs_caputo(v, f);
  rep.rhs_diff = mlsi_rhs_diff(v, f);
  rep.rhs_bl = mlsi_rhs_bl(v, f);
  rep.c_used = c;
  double c_inf = c_log_concave_constant(v);
  rep.hypothesis_ok = (c > 0.0) && (c <= c_inf + 1e-12 * std::max(1.0, std::abs(c_inf)));
  if (c > 0.0) {
    rep.gap = rep.rhs_new / c - rep.ent;
    double scale = std::max({std::abs(rep.ent), std::abs(rep.rhs_new / c), 1.0});
    rep.inequality_ok = rep.gap >= -1e-10 * scale;
  }
  return rep;
}

LsiRestated lsi_restated(const TruncatedPmf& p, const TruncatedPmf& v, double c) {
  if (!(c > 0.0)) throw InvalidParameter("lsi_restated: c must be positive");
  SizeBiasResult sb = size_bias_transform(p, v);
  LsiRestated out;
  out.k = sb.k;
  out.lhs = relative_entropy(p, v);
  out.rhs = (relative_entropy(sb.phat, p) + std::log(1.0 / sb.k) - 1.0 + sb.k) / (c * sb.k);
  return out;
}

double poincare_constant(const TruncatedPmf& v) {
  if (!v.full_support)
    throw NotFullSupport("poincare_constant: V must be strictly positive on its window");
  int n = static_cast<int>(v.values.size());
  // D^{1/2} (-Q) D^{-1/2} with D = diag(V): symmetric tridiagonal by detailed
  // balance, off-diagonal -sqrt(V(x)/V(x+1)).
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    double up = (x + 1 < n) ? 1.0 : 0.0;
    double down = (x > 0) ? v.values[size_t(x - 1)] / v.values[size_t(x)] : 0.0;
    s(x, x) = up + down;
    if (x + 1 < n) {
      double off = -std::sqrt(v.values[size_t(x)] / v.values[size_t(x + 1)]);
      s(x, x + 1) = off;
      s(x + 1, x) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s);
  if (solver.info() != Eigen::Success)
    throw NumericError("poincare_constant: eigen decomposition failed");
  const auto& ev = solver.eigenvalues();
  if (n < 2 || !(ev(1) > 0.0))
    throw NumericError("poincare_constant: spectral gap not positive");
  return 1.0 / ev(1);
}

std::vector<double> entropy_gradient_u(const TruncatedPmf& v, const GridFunction& u) {
  check_window(v, u, "entropy_gradient_u");
  int n = static_cast<int>(v.values.size());
  KahanSum mu;
  for (int x = 0; x < n; ++x) mu.add(v.values[size_t(x)] * std::exp(u[x]));
  double logmu = std::log(mu.value());
  std::vector<double> grad(static_cast<size_t>(n));
  for (int x = 0; x < n; ++x)
    grad[size_t(x)] = v.values[size_t(x)] * std::exp(u[x]) * (u[x] - logmu);
  return grad;
}

std::vector<double> mlsi_rhs_new_gradient_u(const TruncatedPmf& v, const GridFunction& u) {
  check_window(v, u, "mlsi_rhs_new_gradient_u");
  int n = static_cast<int>(v.values.size());
  std::vector<double> grad(size_t(n), 0.0);
  for (int y = 0; y < n; ++y) {
    double g = 0.0;
    if (y > 0) g += v.values[size_t(y - 1)] * std::exp(u[y]) * (u[y] - u[y - 1]);
    if (y + 1 < n) g += v.values[size_t(y)] * (std::exp(u[y]) - std::exp(u[y + 1]));
    grad[size_t(y)] = g;
  }
  return grad;
}

double lsi_constant_estimate(const TruncatedPmf& v, int restarts, unsigned long long seed) {
  if (!v.full_support)
    throw NotFullSupport("lsi_constant_estimate: V must be strictly positive on its window");
  int n = static_cast<int>(v.values.size());

  auto ratio = [&](const GridFunction& u) {
    GridFunction f(n, 0.0);
    for (int x = 0; x < n; ++x) f[x] = std::exp(u[x]);
    double r = mlsi_rhs_new(v, f);
    if (r < 1e-13) return -1.0;  // degenerate (near-constant) direction
    return entropy(v, f) / r;
  };

  double best = 0.0;
  auto ascend = [&](GridFunction u) {
    double cur = ratio(u);
    if (cur > best) best = cur;
    if (cur < 0.0) return;
    double step = 0.5;
    for (int it = 0; it < 200 && step > 1e-10; ++it) {
      GridFunction f(n, 0.0);
      for (int x = 0; x < n; ++x) f[x] = std::exp(u[x]);
      double ent = entropy(v, f);
      double rhs = mlsi_rhs_new(v, f);
      std::vector<double> ge = entropy_gradient_u(v, u);
      std::vector<double> gr = mlsi_rhs_new_gradient_u(v, u);
      double gnorm = 0.0;
      std::vector<double> grad(static_cast<size_t>(n));
      for (int x = 0; x < n; ++x) {
        grad[size_t(x)] = (ge[size_t(x)] * rhs - ent * gr[size_t(x)]) / (rhs * rhs);
        gnorm = std::max(gnorm, std::abs(grad[size_t(x)]));
      }
      if (gnorm < 1e-14) break;
      GridFunction trial(n, 0.0);
      bool improved = false;
      while (step > 1e-10) {
        for (int x = 0; x < n; ++x)
          trial[x] = std::clamp(u[x] + step * grad[size_t(x)] / gnorm, -40.0, 40.0);
        double r = ratio(trial);
        if (r > cur) {
          u = trial;
          cur = r;
          improved = true;
          break;
        }
        step *= 0.5;
      }
      if (!improved) break;
      if (cur > best) best = cur;
    }
  };

  // Exponential starts attain the supremum exactly in the Poisson case.
  for (double a : {-1.0, -0.5, 0.3, 0.5, 1.0}) {
    GridFunction u(n, 0.0);
    for (int x = 0; x < n; ++x) u[x] = std::clamp(a * double(x), -40.0, 40.0);
    ascend(std::move(u));
  }
  for (int r = 0; r < restarts; ++r) {
    GridFunction f = random_walk_function(n, seed + 0x9dULL * r);
    GridFunction u(n, 0.0);
    for (int x = 0; x < n; ++x) u[x] = std::log(f[x]);
    ascend(std::move(u));
  }
  return best;
}

}  // namespace bd
