// Command-line front end: evaluates curvature reports, semigroup evolution,
// functional-inequality verifications, concentration and decay traces, and
// the multidimensional checks, emitting deterministic JSON (and optional CSV)
// reports. Exit codes: 0 all checks pass, 2 a checked inequality failed
// (report still written), 1 usage or domain error.

#include <CLI11.hpp>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <limits>
#include <string>
#include <vector>

#include "bd/curvature.hpp"
#include "bd/errors.hpp"
#include "bd/functionals.hpp"
#include "bd/gamma.hpp"
#include "bd/multidim.hpp"
#include "bd/pmf.hpp"
#include "bd/semigroup.hpp"
#include "bd/spec_parse.hpp"
#include "bd/tail_decay.hpp"

using json = nlohmann::ordered_json;

namespace {

struct Emitter {
  std::string out_path;
  std::string csv_path;
  json report;
  bool any_failed = false;

  json& check(const std::string& tag, bool ok) {
    json entry;
    entry["tag"] = tag;
    entry["ok"] = ok;
    if (!ok) any_failed = true;
    report["checks"].push_back(std::move(entry));
    return report["checks"].back();
  }

  int finish() {
    report["ok"] = !any_failed;
    std::string text = report.dump(2);
    text.push_back('\n');
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) {
        std::cerr << "cannot open output file " << out_path << "\n";
        return 1;
      }
      f << text;
    }
    return any_failed ? 2 : 0;
  }
};

std::string resolve_out(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* dir = std::getenv("BD_OUTPUT_DIR");
  if (dir && *dir) return std::string(dir) + "/" + path;
  return path;
}

void write_csv(const std::string& path, const std::vector<std::array<double, 4>>& rows) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw bd::InvalidParameter("cannot open CSV output file " + path);
  f << "t,value,bound,margin\n";
  f.precision(17);
  for (const auto& r : rows) f << r[0] << "," << r[1] << "," << r[2] << "," << r[3] << "\n";
}

bd::TruncatedPmf parse_p0(const std::string& spec, int window_len) {
  bd::ParsedSpec p = bd::split_spec(spec);
  if (p.name == "delta" && p.args.size() == 1)
    return bd::pmf_delta(static_cast<int>(p.args[0]), window_len);
  bd::TruncatedPmf q = bd::parse_distribution(spec);
  if (static_cast<int>(q.values.size()) == window_len) return q;
  // Restrict (or zero-pad) to the requested window and renormalize.
  std::vector<double> w(size_t(window_len), 0.0);
  for (int x = 0; x < window_len; ++x) w[size_t(x)] = q.at(x);
  bd::TruncatedPmf out = bd::pmf_from_weights(w);
  out.label = q.label;
  return out;
}

double resolve_c(const std::string& c_arg, const bd::TruncatedPmf& v) {
  if (c_arg == "auto") return bd::c_log_concave_constant(v);
  char* end = nullptr;
  double c = std::strtod(c_arg.c_str(), &end);
  if (c_arg.empty() || end != c_arg.c_str() + c_arg.size() || !(c > 0.0))
    throw bd::InvalidParameter("--c must be a positive real or 'auto'");
  return c;
}

int cmd_curvature(const std::string& dist, double eps_tail, Emitter& em) {
  bd::TruncatedPmf v = bd::parse_distribution(dist, eps_tail);
  bd::CurvatureReport rep = bd::curvature_report(v);
  json& profile = em.check("eq:ex", true);
  profile["c_inf"] = rep.c_inf;
  profile["argmin"] = rep.argmin;
  profile["boundary_infimum"] = rep.boundary_infimum;
  profile["profile"] = rep.profile;
  profile["increasing"] = rep.increasing;
  json& ulc = em.check("eq:ulc", true);
  ulc["ulc"] = rep.ulc;
  if (rep.ulc_c) ulc["ulc_c"] = *rep.ulc_c;
  if (rep.ulc) {
    json& mb = em.check("eq:meanbound", rep.mean_bound_ok);
    mb["mean"] = v.mean();
  }
  if (!em.csv_path.empty()) {
    std::vector<std::array<double, 4>> rows;
    for (size_t x = 0; x < rep.profile.size(); ++x)
      rows.push_back({double(x), rep.profile[x], rep.c_inf, rep.profile[x] - rep.c_inf});
    write_csv(em.csv_path, rows);
  }
  return em.finish();
}

int cmd_evolve(const std::string& dist, const std::string& p0_spec, double t, double tol,
               Emitter& em) {
  bd::TruncatedPmf v = bd::parse_distribution(dist);
  bd::TruncatedPmf p0 = parse_p0(p0_spec, static_cast<int>(v.values.size()));
  bd::TruncatedPmf pt = bd::evolve_pmf(v, p0, t, tol);
  double mass = pt.sum();
  json& c = em.check("eq:lvstar", std::abs(mass + pt.tail_mass - 1.0) <= 10.0 * tol + 1e-12);
  c["t"] = t;
  c["mass"] = mass;
  c["p_t"] = pt.values;
  c["d_start"] = bd::relative_entropy(p0, bd::pmf_from_weights(v.values));
  c["d_end"] = bd::relative_entropy(pt, bd::pmf_from_weights(v.values));
  return em.finish();
}

int cmd_verify_lsi(const std::string& dist, const std::string& f_spec, const std::string& c_arg,
                   Emitter& em) {
  bd::TruncatedPmf v = bd::parse_distribution(dist);
  if (!v.full_support)
    throw bd::NotFullSupport("verify lsi: distribution must be strictly positive on its window");
  bd::GridFunction f =
      bd::parse_function(f_spec, static_cast<int>(v.values.size()), v.mean());
  if (!f.positive()) throw bd::DomainError("verify lsi: f must be strictly positive");
  double c = resolve_c(c_arg, v);
  bd::LsiReport rep = bd::lsi_verify(v, f, c);
  json& lsi = em.check("eq:lsi", !rep.hypothesis_ok || rep.inequality_ok);
  lsi["hypothesis_ok"] = rep.hypothesis_ok;
  lsi["ent"] = rep.ent;
  lsi["rhs_new"] = rep.rhs_new;
  lsi["c"] = rep.c_used;
  lsi["gap"] = rep.gap;
  double scale = std::max({1.0, std::abs(rep.rhs_caputo), std::abs(rep.rhs_new)});
  json& dec = em.check(
      "eq:lsidiff",
      std::abs(rep.rhs_caputo - rep.rhs_new - rep.rhs_diff) <= 1e-12 * scale &&
          rep.rhs_diff >= -1e-15 * scale);
  dec["rhs_caputo"] = rep.rhs_caputo;
  dec["rhs_diff"] = rep.rhs_diff;
  json& bl = em.check("eq:bl", rep.rhs_new <= rep.rhs_bl + 1e-12 * std::abs(rep.rhs_bl));
  bl["rhs_bl"] = rep.rhs_bl;
  return em.finish();
}

int cmd_verify_poincare(const std::string& dist, Emitter& em) {
  bd::TruncatedPmf v = bd::parse_distribution(dist);
  double cp = bd::poincare_constant(v);
  double c_inf = bd::c_log_concave_constant(v);
  json& c = em.check("eq:poincare", c_inf <= 0.0 || cp <= 1.0 / c_inf + 1e-8);
  c["poincare_constant"] = cp;
  c["c_inf"] = c_inf;
  return em.finish();
}

int cmd_verify_be(const std::string& dist, const std::string& c_arg, int trials,
                  unsigned long long seed, Emitter& em) {
  bd::TruncatedPmf v = bd::parse_distribution(dist);
  double c = resolve_c(c_arg, v);
  bd::BeCheckReport rep = bd::integrated_be_check(v, c, trials, seed);
  json& e = em.check("eq:dbec", rep.violations == 0);
  e["c"] = c;
  e["trials"] = rep.trials;
  e["violations"] = rep.violations;
  e["worst_margin"] = rep.worst_margin;
  if (rep.worst_trial >= 0) e["worst_trial"] = rep.worst_trial;
  return em.finish();
}

int cmd_constants(const std::string& dist, int restarts, unsigned long long seed, Emitter& em) {
  bd::TruncatedPmf v = bd::parse_distribution(dist);
  double c_inf = bd::c_log_concave_constant(v);
  double cp = bd::poincare_constant(v);
  double lsi_lb = bd::lsi_constant_estimate(v, restarts, seed);
  json& c = em.check("eq:lsi", c_inf <= 0.0 || lsi_lb <= 1.0 / c_inf + 1e-8 * (1.0 + lsi_lb));
  c["c_inf"] = c_inf;
  c["lsi_lower_bound"] = lsi_lb;
  json& p = em.check("eq:poincare", c_inf <= 0.0 || cp <= 1.0 / c_inf + 1e-8);
  p["poincare_constant"] = cp;
  return em.finish();
}

int cmd_concentration(const std::string& dist, const std::string& g_spec, int tmax,
                      Emitter& em) {
  bd::TruncatedPmf v = bd::parse_distribution(dist);
  double c = bd::c_log_concave_constant(v);
  if (!(c > 0.0)) throw bd::DomainError("concentration: needs positive curvature constant");
  bd::GridFunction g =
      bd::parse_function(g_spec, static_cast<int>(v.values.size()), v.mean());
  std::vector<std::array<double, 4>> rows;
  bool ok = true;
  json& e = em.check("eq:conc", true);
  e["c"] = c;
  json table = json::array();
  for (int t = 1; t <= tmax; ++t) {
    double tail = bd::exact_tail(v, g, double(t));
    double bound = bd::concentration_bound(c, double(t));
    bool row_ok = tail <= bound + 1e-15;
    ok = ok && row_ok;
    json row;
    row["t"] = t;
    row["tail"] = tail;
    row["bound"] = bound;
    row["ok"] = row_ok;
    table.push_back(std::move(row));
    rows.push_back({double(t), tail, bound, bound - tail});
  }
  e["rows"] = std::move(table);
  e["ok"] = ok;
  if (!ok) em.any_failed = true;
  if (!em.csv_path.empty()) write_csv(em.csv_path, rows);
  return em.finish();
}

std::vector<double> geometric_grid(double tmax, int steps) {
  std::vector<double> grid;
  for (int k = steps; k >= 0; --k) grid.push_back(tmax * std::pow(0.5, k));
  return grid;
}

int cmd_decay(double lambda, const std::string& p0_spec, double tmax, int steps, double tol,
              Emitter& em) {
  bd::TruncatedPmf v0 = bd::pmf_poisson(lambda);
  bd::TruncatedPmf p0 = parse_p0(p0_spec, static_cast<int>(v0.values.size()));
  std::vector<double> grid = geometric_grid(tmax, steps);
  std::vector<bd::DecayRow> trace = bd::thinning_decay_trace(p0, lambda, grid, tol);
  json& e = em.check("eq:thind", true);
  e["lambda"] = lambda;
  bool ok = true;
  json table = json::array();
  std::vector<std::array<double, 4>> rows;
  for (const auto& r : trace) {
    bool row_ok = r.d <= r.bound + 1e-8;
    ok = ok && row_ok;
    json row;
    row["t"] = r.t;
    row["d"] = r.d;
    row["bound"] = r.bound;
    row["ok"] = row_ok;
    table.push_back(std::move(row));
    rows.push_back({r.t, r.d, r.bound, r.bound - r.d});
  }
  e["rows"] = std::move(table);
  e["ok"] = ok;
  if (!ok) em.any_failed = true;
  if (!em.csv_path.empty()) write_csv(em.csv_path, rows);
  return em.finish();
}

int cmd_hyper(double lambda, const std::string& g_spec, double p, double tmax, int steps,
              double tol, Emitter& em) {
  // Size the window from the observable's actual increments; sums tilted by
  // exp(p * increment * x) need far more sites than the stationary window.
  int probe_len = static_cast<int>(bd::pmf_poisson(lambda).values.size()) + 8;
  bd::GridFunction probe = bd::parse_function(g_spec, probe_len, lambda);
  double max_inc = 0.0;
  for (int x = 0; x + 1 < probe_len; ++x)
    max_inc = std::max(max_inc, std::abs(probe[x + 1] - probe[x]));
  if (lambda * std::exp(1.05 * p * max_inc) > 1000.0)
    throw bd::InvalidParameter(
        "hyper: the tilt p * max|increment of g| pushes the effective window "
        "beyond what double precision can certify; reduce --p or the "
        "increments of --g");
  int len = bd::hyper_window_length(lambda, p, std::max(max_inc, 1e-3));
  if (double(len) * tmax > 600.0)
    throw bd::InvalidParameter(
        "hyper: observable increments and horizon need a window too wide for "
        "double precision; reduce --p, --tmax, or the increments of --g");
  bd::GridFunction g0 = bd::parse_function(g_spec, len, lambda);
  std::vector<double> grid;
  for (int k = 0; k <= steps; ++k) grid.push_back(tmax * double(k) / double(steps));
  std::vector<bd::HyperRow> trace = bd::hypercontractivity_trace(lambda, g0, p, grid, tol);
  json& e = em.check("eq:hyper", true);
  e["lambda"] = lambda;
  e["p"] = p;
  bool ok = true;
  json table = json::array();
  std::vector<std::array<double, 4>> rows;
  for (size_t i = 0; i < trace.size(); ++i) {
    bool row_ok = i == 0 || trace[i].u >= trace[i - 1].u - 1e-8;
    ok = ok && row_ok;
    json row;
    row["t"] = trace[i].t;
    row["q"] = trace[i].q;
    row["u"] = trace[i].u;
    row["ok"] = row_ok;
    table.push_back(std::move(row));
    double prev = i == 0 ? trace[i].u : trace[i - 1].u;
    rows.push_back({trace[i].t, trace[i].u, prev, trace[i].u - prev});
  }
  e["rows"] = std::move(table);
  e["ok"] = ok;
  if (!ok) em.any_failed = true;
  if (!em.csv_path.empty()) write_csv(em.csv_path, rows);
  return em.finish();
}

bd::GridPmfD build_product(const std::vector<std::string>& dists, std::vector<double>* c_infs) {
  std::vector<bd::TruncatedPmf> factors;
  for (const auto& d : dists) {
    factors.push_back(bd::parse_distribution(d));
    if (c_infs) c_infs->push_back(bd::c_log_concave_constant(factors.back()));
  }
  return bd::product_pmf(factors);
}

int cmd_multidim_certify(const std::vector<std::string>& dists, const std::string& c_arg,
                         Emitter& em) {
  std::vector<double> c_infs;
  bd::GridPmfD v = build_product(dists, &c_infs);
  double c;
  if (c_arg == "auto") {
    c = c_infs.empty() ? 0.0 : *std::min_element(c_infs.begin(), c_infs.end());
  } else {
    char* end = nullptr;
    c = std::strtod(c_arg.c_str(), &end);
    if (c_arg.empty() || end != c_arg.c_str() + c_arg.size())
      throw bd::InvalidParameter("--c must be a real or 'auto'");
  }
  bd::PsdCertifyReport rep = bd::esym_psd_certify(v, c);
  json& e = em.check("eq:esym", rep.certified);
  e["c"] = c;
  e["min_eigenvalue"] = rep.min_eigenvalue;
  e["worst_site"] = rep.worst_site;
  return em.finish();
}

int cmd_multidim_verify(const std::vector<std::string>& dists, const std::string& c_arg,
                        int trials, unsigned long long seed, Emitter& em) {
  std::vector<double> c_infs;
  bd::GridPmfD v = build_product(dists, &c_infs);
  double c = (c_arg == "auto")
                 ? *std::min_element(c_infs.begin(), c_infs.end())
                 : std::strtod(c_arg.c_str(), nullptr);
  bd::BeCheckReportD rep = bd::integrated_be_check_d(v, c, trials, seed);
  json& be = em.check("eq:dbecd", rep.violations == 0);
  be["c"] = c;
  be["trials"] = rep.trials;
  be["violations"] = rep.violations;
  be["worst_margin"] = rep.worst_margin;
  json& po = em.check("eq:poincared", rep.poincare_violations == 0);
  po["poincare_violations"] = rep.poincare_violations;
  po["worst_poincare_slack"] = rep.worst_poincare_slack;

  double worst_gap = std::numeric_limits<double>::infinity();
  bool gap_ok = true;
  for (int tr = 0; tr < trials; ++tr) {
    bd::GridFunctionD f = bd::random_function_d(v.shape, seed + 0x515ULL * tr, true);
    double gap = bd::logsob_gap_term(v, f, c);
    worst_gap = std::min(worst_gap, gap);
    double scale = 1.0;
    for (double x : f.values) scale = std::max(scale, std::abs(x));
    gap_ok = gap_ok && gap >= -1e-12 * scale;
  }
  json& lg = em.check("eq:logsobdiff", gap_ok);
  lg["worst_gap_term"] = worst_gap;

  double worst_resid = 0.0;
  for (int tr = 0; tr < trials; ++tr) {
    bd::GridFunctionD f = bd::random_function_d(v.shape, seed + 0x9e7ULL * tr, false);
    worst_resid = std::max(worst_resid, bd::commutation_residual_d(v, f));
  }
  json& cr = em.check("eq:diffLVd", worst_resid <= 1e-12);
  cr["worst_residual"] = worst_resid;
  return em.finish();
}

int cmd_probe_convolution(int trials, unsigned long long seed, Emitter& em) {
  bd::ConvolutionProbeResult rep = bd::convolution_conjecture_probe(trials, seed);
  json& e = em.check("probe:convolution", true);  // exploratory, never asserted
  e["samples"] = rep.samples;
  e["min_product"] = rep.min_product;
  e["max_product"] = rep.max_product;
  return em.finish();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical workbench for birth-death curvature and entropy inequalities"};
  app.set_config("--config");
  app.require_subcommand(1);

  std::string out_path, csv_path;
  app.add_option("--out", out_path, "write the JSON report to this file");
  app.add_option("--csv", csv_path, "write a t,value,bound,margin CSV alongside the report");

  // curvature
  auto* sc_curv = app.add_subcommand("curvature", "site curvature profile and flags");
  std::string curv_dist;
  double curv_eps = 1e-12;
  sc_curv->add_option("dist", curv_dist, "distribution spec")->required();
  sc_curv->add_option("--eps-tail", curv_eps, "truncation tail budget");

  // evolve
  auto* sc_evolve = app.add_subcommand("evolve", "evolve a pmf under the birth-death semigroup");
  std::string ev_dist, ev_p0 = "delta:0";
  double ev_t = 1.0, ev_tol = 1e-10;
  sc_evolve->add_option("--dist", ev_dist, "stationary distribution spec")->required();
  sc_evolve->add_option("--p0", ev_p0, "initial pmf spec (or delta:x)");
  sc_evolve->add_option("--t", ev_t, "time horizon");
  sc_evolve->add_option("--tol", ev_tol, "integrator tolerance");

  // verify {lsi, poincare, be}
  auto* sc_verify = app.add_subcommand("verify", "functional-inequality verification");
  sc_verify->require_subcommand(1);
  auto* sc_lsi = sc_verify->add_subcommand("lsi", "modified log-Sobolev inequality");
  std::string lsi_dist, lsi_f = "randomwalk:1", lsi_c = "auto";
  sc_lsi->add_option("--dist", lsi_dist)->required();
  sc_lsi->add_option("--f", lsi_f, "test function spec");
  sc_lsi->add_option("--c", lsi_c, "curvature constant or 'auto'");
  auto* sc_poin = sc_verify->add_subcommand("poincare", "spectral-gap constant");
  std::string poin_dist;
  sc_poin->add_option("--dist", poin_dist)->required();
  auto* sc_be = sc_verify->add_subcommand("be", "integrated curvature condition");
  std::string be_dist, be_c = "auto";
  int be_trials = 50;
  unsigned long long be_seed = 1;
  sc_be->add_option("--dist", be_dist)->required();
  sc_be->add_option("--c", be_c);
  sc_be->add_option("--trials", be_trials);
  sc_be->add_option("--seed", be_seed);

  // constants
  auto* sc_const = app.add_subcommand("constants", "curvature, Poincare, and entropy constants");
  std::string const_dist;
  int const_restarts = 16;
  unsigned long long const_seed = 1;
  sc_const->add_option("--dist", const_dist)->required();
  sc_const->add_option("--restarts", const_restarts);
  sc_const->add_option("--seed", const_seed);

  // concentration
  auto* sc_conc = app.add_subcommand("concentration", "tail bounds for Lipschitz observables");
  std::string conc_dist, conc_g = "id";
  int conc_tmax = 10;
  sc_conc->add_option("--dist", conc_dist)->required();
  sc_conc->add_option("--g", conc_g, "observable spec (sup increment <= 1)");
  sc_conc->add_option("--tmax", conc_tmax);

  // decay
  auto* sc_decay = app.add_subcommand("decay", "entropy decay along the thinning family");
  std::string decay_p0 = "delta:0";
  double decay_lambda = 1.0, decay_tmax = 2.0, decay_tol = 1e-9;
  int decay_steps = 6;
  sc_decay->add_option("--lambda", decay_lambda)->required();
  sc_decay->add_option("--p0", decay_p0);
  sc_decay->add_option("--tmax", decay_tmax);
  sc_decay->add_option("--steps", decay_steps);
  sc_decay->add_option("--tol", decay_tol);

  // hyper
  auto* sc_hyper = app.add_subcommand("hyper", "normalized log-moment monotonicity trace");
  std::string hyper_g = "charlier1";
  double hyper_lambda = 1.0, hyper_p = 2.0, hyper_tmax = 1.0, hyper_tol = 1e-9;
  int hyper_steps = 8;
  sc_hyper->add_option("--lambda", hyper_lambda)->required();
  sc_hyper->add_option("--g", hyper_g);
  sc_hyper->add_option("--p", hyper_p);
  sc_hyper->add_option("--tmax", hyper_tmax);
  sc_hyper->add_option("--steps", hyper_steps);
  sc_hyper->add_option("--tol", hyper_tol);

  // multidim {certify, verify}
  auto* sc_md = app.add_subcommand("multidim", "product-measure checks on the grid");
  sc_md->require_subcommand(1);
  auto* sc_cert = sc_md->add_subcommand("certify", "positive semidefiniteness of the curvature matrix");
  std::vector<std::string> cert_dists;
  std::string cert_c = "auto";
  sc_cert->add_option("--dist", cert_dists, "factor distribution spec (repeatable)")->required();
  sc_cert->add_option("--c", cert_c);
  auto* sc_mdv = sc_md->add_subcommand("verify", "randomized grid inequalities");
  std::vector<std::string> mdv_dists;
  std::string mdv_c = "auto";
  int mdv_trials = 20;
  unsigned long long mdv_seed = 1;
  sc_mdv->add_option("--dist", mdv_dists, "factor distribution spec (repeatable)")->required();
  sc_mdv->add_option("--c", mdv_c);
  sc_mdv->add_option("--trials", mdv_trials);
  sc_mdv->add_option("--seed", mdv_seed);

  // probe-convolution
  auto* sc_probe = app.add_subcommand("probe-convolution",
                                      "exploratory scan of convolution curvature products");
  int probe_trials = 50;
  unsigned long long probe_seed = 1;
  sc_probe->add_option("--trials", probe_trials);
  sc_probe->add_option("--seed", probe_seed);

  CLI11_PARSE(app, argc, argv);

  Emitter em;
  em.out_path = resolve_out(out_path);
  em.csv_path = resolve_out(csv_path);
  em.report["checks"] = json::array();

  try {
    if (*sc_curv) {
      em.report["command"] = "curvature";
      em.report["config"] = {{"dist", curv_dist}, {"eps_tail", curv_eps}};
      return cmd_curvature(curv_dist, curv_eps, em);
    }
    if (*sc_evolve) {
      em.report["command"] = "evolve";
      em.report["config"] = {{"dist", ev_dist}, {"p0", ev_p0}, {"t", ev_t}, {"tol", ev_tol}};
      return cmd_evolve(ev_dist, ev_p0, ev_t, ev_tol, em);
    }
    if (*sc_lsi) {
      em.report["command"] = "verify lsi";
      em.report["config"] = {{"dist", lsi_dist}, {"f", lsi_f}, {"c", lsi_c}};
      return cmd_verify_lsi(lsi_dist, lsi_f, lsi_c, em);
    }
    if (*sc_poin) {
      em.report["command"] = "verify poincare";
      em.report["config"] = {{"dist", poin_dist}};
      return cmd_verify_poincare(poin_dist, em);
    }
    if (*sc_be) {
      em.report["command"] = "verify be";
      em.report["config"] = {{"dist", be_dist}, {"c", be_c}, {"trials", be_trials}, {"seed", be_seed}};
      return cmd_verify_be(be_dist, be_c, be_trials, be_seed, em);
    }
    if (*sc_const) {
      em.report["command"] = "constants";
      em.report["config"] = {{"dist", const_dist}, {"restarts", const_restarts}, {"seed", const_seed}};
      return cmd_constants(const_dist, const_restarts, const_seed, em);
    }
    if (*sc_conc) {
      em.report["command"] = "concentration";
      em.report["config"] = {{"dist", conc_dist}, {"g", conc_g}, {"tmax", conc_tmax}};
      return cmd_concentration(conc_dist, conc_g, conc_tmax, em);
    }
    if (*sc_decay) {
      em.report["command"] = "decay";
      em.report["config"] = {{"lambda", decay_lambda}, {"p0", decay_p0}, {"tmax", decay_tmax},
                             {"steps", decay_steps}, {"tol", decay_tol}};
      return cmd_decay(decay_lambda, decay_p0, decay_tmax, decay_steps, decay_tol, em);
    }
    if (*sc_hyper) {
      em.report["command"] = "hyper";
      em.report["config"] = {{"lambda", hyper_lambda}, {"g", hyper_g}, {"p", hyper_p},
                             {"tmax", hyper_tmax}, {"steps", hyper_steps}, {"tol", hyper_tol}};
      return cmd_hyper(hyper_lambda, hyper_g, hyper_p, hyper_tmax, hyper_steps, hyper_tol, em);
    }
    if (*sc_cert) {
      em.report["command"] = "multidim certify";
      em.report["config"] = {{"dist", cert_dists}, {"c", cert_c}};
      return cmd_multidim_certify(cert_dists, cert_c, em);
    }
    if (*sc_mdv) {
      em.report["command"] = "multidim verify";
      em.report["config"] = {{"dist", mdv_dists}, {"c", mdv_c}, {"trials", mdv_trials},
                             {"seed", mdv_seed}};
      return cmd_multidim_verify(mdv_dists, mdv_c, mdv_trials, mdv_seed, em);
    }
    if (*sc_probe) {
      em.report["command"] = "probe-convolution";
      em.report["config"] = {{"trials", probe_trials}, {"seed", probe_seed}};
      return cmd_probe_convolution(probe_trials, probe_seed, em);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand selected\n";
  return 1;
}
