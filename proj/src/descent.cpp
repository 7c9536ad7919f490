#include "qmask/descent.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace qmask::descent {

namespace {

using Vec = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

Vec eval(const ResidualFn& f, const Vec& x, int m) {
  Vec r(m);
  f(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())),
    std::span<double>(r.data(), static_cast<std::size_t>(m)));
  return r;
}

MatX jacobian(const ResidualFn& f, Vec x, int m) {
  const Eigen::Index n = x.size();
  MatX jac(m, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double xj = x[j];
    const double h = 1e-7 * std::max(1.0, std::abs(xj));
    x[j] = xj + h;
    const Vec plus = eval(f, x, m);
    x[j] = xj - h;
    const Vec minus = eval(f, x, m);
    x[j] = xj;
    jac.col(j) = (plus - minus) / (2.0 * h);
  }
  return jac;
}

}  // namespace

double residual_norm(const ResidualFn& f, std::span<const double> x, int residual_count) {
  std::vector<double> r(static_cast<std::size_t>(residual_count));
  f(x, r);
  double s = 0.0;
  for (double v : r) s += v * v;
  return std::sqrt(s);
}

Result minimize(const ResidualFn& f, std::vector<double> x0, int residual_count, const Options& opts) {
  const int m = residual_count;
  Vec x = Eigen::Map<const Vec>(x0.data(), static_cast<Eigen::Index>(x0.size()));
  Vec r = eval(f, x, m);
  double cost = r.squaredNorm();
  double mu = 1e-3;
  int it = 0;

  for (; it < opts.max_iters; ++it) {
    if (std::sqrt(cost) <= opts.target_norm) break;
    const MatX jac = jacobian(f, x, m);
    const Vec grad = jac.transpose() * r;
    if (grad.lpNorm<Eigen::Infinity>() <= opts.gradient_tol) break;
    const MatX jtj = jac.transpose() * jac;

    bool accepted = false;
    while (mu < 1e16) {
      MatX lhs = jtj;
      for (Eigen::Index i = 0; i < lhs.rows(); ++i) lhs(i, i) += mu * (1.0 + jtj(i, i));
      const Vec step = lhs.ldlt().solve(-grad);
      const Vec trial = x + step;
      const Vec rt = eval(f, trial, m);
      const double ct = rt.squaredNorm();
      if (std::isfinite(ct) && ct < cost) {
        const bool tiny = step.norm() <= opts.step_tol * (1.0 + x.norm());
        x = trial;
        r = rt;
        cost = ct;
        mu = std::max(mu / 3.0, 1e-12);
        accepted = !tiny;
        break;
      }
      mu *= 4.0;
    }
    if (!accepted) break;
  }

  Result res;
  res.x.assign(x.data(), x.data() + x.size());
  res.residual_norm = std::sqrt(cost);
  res.iterations = it;
  return res;
}

}  // namespace qmask::descent
