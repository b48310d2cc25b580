#pragma once

#include <functional>

namespace isodist {

struct QuadratureTolerance {
  double relative = 1e-12;
  double absolute = 0.0;
  unsigned max_depth = 15;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

// Globally adaptive Gauss-Kronrod (7/15) on [a, b]: the panel with the
// largest error is bisected until the total error is below
// max(absolute, relative * L1, 256 eps L1). Infinite endpoints are mapped to
// [0, 1). If the panel budget runs out, tanh-sinh is tried before throwing
// NonConvergence. max_depth + 20 bounds the bisection depth of any panel.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureTolerance& tol = {});

}  // namespace isodist
