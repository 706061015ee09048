#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "odeco/symtensor.hpp"

namespace odeco {

/// T theta^{d-1} vanished (norm below 1e-14) during iteration; restart from
/// another direction.
class DegenerateDirection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IterationReport {
  Eigen::VectorXd limit;
  int iterations = 0;
  bool converged = false;
  /// Even order with a negative eigenvalue: the map alternates theta <-> -theta.
  /// `limit` is then the iterate before the last sign flip.
  bool sign_oscillation = false;
};

inline constexpr double kIterationTol = 1e-12;
inline constexpr int kMaxIterations = 1000;

/// Repeats theta <- T theta^{d-1} / |T theta^{d-1}|. Convergence is declared
/// when min(|theta' - theta|, |theta' + theta|) < tol.
IterationReport power_iterate(const SymTensor& t, const Eigen::Ref<const Eigen::VectorXd>& start,
                              double tol = kIterationTol, int max_iter = kMaxIterations);

/// lambda = T . v^d for a unit vector v.
double rayleigh_eigenvalue(const SymTensor& t, const Eigen::Ref<const Eigen::VectorXd>& v);

struct DecomposeOptions {
  /// Deflation stops once |T_remaining|_F < tol * |T|_F.
  double tol = 1e-8;
  /// Total failed starts allowed; negative means 50 * n.
  int max_restarts = -1;
  std::uint64_t seed = 0;
  double iteration_tol = kIterationTol;
  int max_iter = kMaxIterations;
};

struct DecompositionReport {
  OrthoDecomp decomp;
  double residual_norm = 0.0;
  int restarts_used = 0;
  bool converged = false;
};

/// Tensor power method with deflation. Terms come back sorted by |lambda|
/// descending, each v with its first nonzero coordinate positive.
DecompositionReport decompose(const SymTensor& t, const DecomposeOptions& opts = {});

/// Uniformly distributed unit vector.
template <typename Rng>
Eigen::VectorXd random_unit_vector(int n, Rng& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  do {
    for (int i = 0; i < n; ++i) v(i) = normal(gen);
  } while (v.norm() == 0.0);
  return v / v.norm();
}

}  // namespace odeco
