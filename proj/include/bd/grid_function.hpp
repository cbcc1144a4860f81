#pragma once

#include <cmath>
#include <vector>

#include "bd/errors.hpp"

namespace bd {

// Real-valued function on the window {0,...,N}.
struct GridFunction {
  std::vector<double> values;

  GridFunction() = default;
  explicit GridFunction(std::vector<double> v) : values(std::move(v)) {}
  GridFunction(int len, double fill) : values(size_t(len), fill) {}

  int max_index() const { return static_cast<int>(values.size()) - 1; }
  double operator[](int x) const { return values[size_t(x)]; }
  double& operator[](int x) { return values[size_t(x)]; }

  bool positive() const {
    for (double v : values)
      if (!(v > 0.0)) return false;
    return true;
  }

  bool finite() const {
    for (double v : values)
      if (!std::isfinite(v)) return false;
    return true;
  }

  // Zero increments on the top two sites, so index-shift closed forms are
  // exact on the window.
  bool interior_supported() const {
    size_t n = values.size();
    if (n < 3) return false;
    return values[n - 1] == values[n - 2] && values[n - 2] == values[n - 3];
  }
};

inline void require_same_window(const GridFunction& f, int len, const char* op) {
  if (static_cast<int>(f.values.size()) != len)
    throw ShapeError(std::string(op) + ": window size mismatch");
}

}  // namespace bd
