#include "odeco/power_method.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace odeco {

IterationReport power_iterate(const SymTensor& t, const Eigen::Ref<const Eigen::VectorXd>& start, double tol,
                              int max_iter) {
  if (start.size() != t.n()) throw InvalidDimension("power_iterate: start vector length must equal n");
  if (std::abs(start.norm() - 1.0) > 1e-8) throw std::invalid_argument("power_iterate: start vector must be a unit vector");
  if (frobenius_norm(t) == 0.0) throw std::invalid_argument("power_iterate: tensor is zero");

  const bool even = t.d() % 2 == 0;
  IterationReport report;
  Eigen::VectorXd theta = start;
  for (int it = 1; it <= max_iter; ++it) {
    Eigen::VectorXd next = apply_power(t, theta);
    const double norm = next.norm();
    if (norm < 1e-14) throw DegenerateDirection("power_iterate: T theta^{d-1} vanished");
    next /= norm;
    report.iterations = it;
    const double same = (next - theta).norm();
    // For odd d, -theta and theta have the same image, so a flip means the
    // next iterate is already fixed; only even d can truly oscillate.
    const double flipped = even ? (next + theta).norm() : same;
    if (same < tol || flipped < tol) {
      report.converged = true;
      report.sign_oscillation = !(same < tol);
      report.limit = std::move(next);
      return report;
    }
    theta = std::move(next);
  }
  report.limit = std::move(theta);
  return report;
}

double rayleigh_eigenvalue(const SymTensor& t, const Eigen::Ref<const Eigen::VectorXd>& v) {
  if (std::abs(v.norm() - 1.0) > 1e-8) throw std::invalid_argument("rayleigh_eigenvalue: v must be a unit vector");
  return eval_form(t, v);
}

DecompositionReport decompose(const SymTensor& t, const DecomposeOptions& opts) {
  if (t.d() < 3) throw InvalidDimension("decompose: order must be at least 3");
  const int n = t.n();
  const int d = t.d();
  const int max_restarts = opts.max_restarts < 0 ? 50 * n : opts.max_restarts;
  const double norm0 = frobenius_norm(t);

  std::mt19937_64 gen(opts.seed);
  std::vector<double> lambdas;
  std::vector<Eigen::VectorXd> vectors;
  SymTensor remainder = t;
  DecompositionReport report;
  bool exhausted = false;
  if (norm0 == 0.0) {
    report.decomp.basis.resize(0, n);
    report.converged = true;
    return report;
  }

  while (static_cast<int>(vectors.size()) < n && frobenius_norm(remainder) >= opts.tol * norm0) {
    const Eigen::VectorXd start = random_unit_vector(n, gen);
    IterationReport it;
    try {
      it = power_iterate(remainder, start, opts.iteration_tol, opts.max_iter);
    } catch (const DegenerateDirection&) {
      it.converged = false;
    }
    if (!it.converged) {
      if (++report.restarts_used > max_restarts) {
        exhausted = true;
        break;
      }
      continue;
    }
    const double lambda = rayleigh_eigenvalue(remainder, it.limit);
    // What is left is numerically the zero tensor (fewer than n terms).
    if (std::abs(lambda) < 1e-10 * norm0) break;
    lambdas.push_back(lambda);
    vectors.push_back(it.limit);
    remainder -= rank_one(lambda, it.limit, d);
  }

  // |lambda| descending; first nonzero coordinate of each vector positive.
  std::vector<std::size_t> order(lambdas.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(lambdas[a]) > std::abs(lambdas[b]); });
  report.decomp.basis.resize(static_cast<Eigen::Index>(order.size()), n);
  for (std::size_t r = 0; r < order.size(); ++r) {
    Eigen::VectorXd v = vectors[order[r]];
    double lambda = lambdas[order[r]];
    for (int j = 0; j < n; ++j) {
      if (std::abs(v(j)) <= 1e-12) continue;
      if (v(j) < 0) {
        v = -v;
        if (d % 2 == 1) lambda = -lambda;
      }
      break;
    }
    report.decomp.lambdas.push_back(lambda);
    report.decomp.basis.row(static_cast<Eigen::Index>(r)) = v.transpose();
  }

  SymTensor rebuilt(n, d);
  for (std::size_t r = 0; r < order.size(); ++r)
    rebuilt += rank_one(report.decomp.lambdas[r], report.decomp.basis.row(static_cast<Eigen::Index>(r)).transpose(), d);
  report.residual_norm = frobenius_norm(t - rebuilt);
  report.converged = !exhausted && frobenius_norm(remainder) <= opts.tol * norm0;
  return report;
}

}  // namespace odeco
