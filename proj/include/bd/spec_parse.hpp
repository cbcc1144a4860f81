#pragma once

#include <string>
#include <vector>

#include "bd/grid_function.hpp"
#include "bd/pmf.hpp"

namespace bd {

// Spec strings use the grammar name:arg1,arg2,...
//   distributions: poisson:lambda[,eps_tail]  bernoullisum:p1,p2,...
//                  negbin:n,p[,eps_tail]      weights:w1,w2,...
//   functions:     exp:a[,b]  id  charlier1  randomwalk:seed
// Parse failures throw InvalidParameter with the grammar echoed.

TruncatedPmf parse_distribution(const std::string& spec, double default_eps_tail = 1e-12);

// Builds f on a window of len sites; charlier1 is (x - mean)/mean.
GridFunction parse_function(const std::string& spec, int len, double mean);

// Split "name:a,b,c" into name and numeric args; exposed for CLI reuse.
struct ParsedSpec {
  std::string name;
  std::vector<double> args;
};
ParsedSpec split_spec(const std::string& spec);

}  // namespace bd
