#include "bd/spec_parse.hpp"

#include <cmath>
#include <cstdlib>

#include "bd/errors.hpp"
#include "bd/random_inputs.hpp"

namespace bd {

namespace {

const char* kDistGrammar =
    "distribution spec grammar: poisson:lambda[,eps_tail] | "
    "bernoullisum:p1,p2,... | negbin:n,p[,eps_tail] | weights:w1,w2,...";

const char* kFuncGrammar =
    "function spec grammar: exp:a[,b] | id | charlier1 | randomwalk:seed";

[[noreturn]] void bad(const std::string& spec, const char* grammar) {
  throw InvalidParameter("unrecognized spec '" + spec + "'; " + grammar);
}

}  // namespace

ParsedSpec split_spec(const std::string& spec) {
  ParsedSpec out;
  size_t colon = spec.find(':');
  out.name = spec.substr(0, colon);
  if (colon == std::string::npos) return out;
  std::string rest = spec.substr(colon + 1);
  size_t pos = 0;
  while (pos <= rest.size()) {
    size_t comma = rest.find(',', pos);
    std::string tok = rest.substr(pos, comma == std::string::npos ? comma : comma - pos);
    char* end = nullptr;
    double val = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size() || !std::isfinite(val))
      throw InvalidParameter("bad numeric argument '" + tok + "' in spec '" + spec + "'");
    out.args.push_back(val);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

TruncatedPmf parse_distribution(const std::string& spec, double default_eps_tail) {
  ParsedSpec p = split_spec(spec);
  if (p.name == "poisson") {
    if (p.args.size() == 1) return pmf_poisson(p.args[0], default_eps_tail);
    if (p.args.size() == 2) return pmf_poisson(p.args[0], p.args[1]);
  } else if (p.name == "bernoullisum") {
    if (!p.args.empty()) return pmf_bernoulli_sum(p.args);
  } else if (p.name == "negbin") {
    if (p.args.size() == 2) return pmf_negative_binomial(p.args[0], p.args[1], default_eps_tail);
    if (p.args.size() == 3) return pmf_negative_binomial(p.args[0], p.args[1], p.args[2]);
  } else if (p.name == "weights") {
    if (!p.args.empty()) return pmf_from_weights(p.args);
  }
  bad(spec, kDistGrammar);
}

GridFunction parse_function(const std::string& spec, int len, double mean) {
  if (len < 1) throw InvalidParameter("parse_function: window must be nonempty");
  ParsedSpec p = split_spec(spec);
  if (p.name == "exp" && (p.args.size() == 1 || p.args.size() == 2)) {
    double a = p.args[0];
    double b = p.args.size() == 2 ? p.args[1] : 0.0;
    GridFunction f(len, 0.0);
    for (int x = 0; x < len; ++x) f[x] = std::exp(a * x + b);
    return f;
  }
  if (p.name == "id" && p.args.empty()) {
    GridFunction f(len, 0.0);
    for (int x = 0; x < len; ++x) f[x] = double(x);
    return f;
  }
  if (p.name == "charlier1" && p.args.empty()) {
    if (!(mean > 0.0))
      throw InvalidParameter("charlier1 needs a distribution with positive mean");
    GridFunction f(len, 0.0);
    for (int x = 0; x < len; ++x) f[x] = (double(x) - mean) / mean;
    return f;
  }
  if (p.name == "randomwalk" && p.args.size() == 1) {
    return random_walk_function(len, static_cast<unsigned long long>(p.args[0]));
  }
  bad(spec, kFuncGrammar);
}

}  // namespace bd
