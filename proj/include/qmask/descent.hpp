// descent.hpp
// Damped Gauss-Newton (Levenberg-Marquardt) for small dense nonlinear
// least-squares problems. The Jacobian is taken by central differences, so a
// caller only supplies the residual map. Fully deterministic: no randomness
// and no threading inside a run.

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace qmask::descent {

// Fills r (already sized to the residual count) from x.
using ResidualFn = std::function<void(std::span<const double> x, std::span<double> r)>;

struct Options {
  int max_iters = 2000;
  // Stop once ||r||_2 drops to this value.
  double target_norm = 1e-14;
  // Stop when the infinity norm of J^T r falls below this value.
  double gradient_tol = 1e-13;
  double step_tol = 1e-14;
};

struct Result {
  std::vector<double> x;
  double residual_norm = 0.0;
  int iterations = 0;
};

double residual_norm(const ResidualFn& f, std::span<const double> x, int residual_count);

Result minimize(const ResidualFn& f, std::vector<double> x0, int residual_count, const Options& opts = {});

}  // namespace qmask::descent
