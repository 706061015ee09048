#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "odeco/symtensor.hpp"

namespace odeco {

class UnsupportedOrder : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Every direction is an eigenvector (the minors form vanishes identically).
class DegenerateTensor : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EigenPair {
  /// Canonical representative: unit norm, first nonzero coordinate real positive.
  Eigen::VectorXcd w;
  std::complex<double> lambda;
  double residual = 0.0;
  /// Term indices (0-based, ascending) with nonzero y-coordinate.
  std::vector<int> support;
  /// Root-of-unity exponents e_j for the first |support| - 1 terms,
  /// eta_j = exp(2 pi i e_j / (d - 2)).
  std::vector<int> eta_exponents;
};

struct EigenEnumeration {
  std::vector<EigenPair> isolated;
  /// Orthonormal basis of the eigenvalue-zero eigenspace (orthogonal
  /// complement of the decomposition vectors); empty when there are n terms.
  std::vector<Eigen::VectorXd> nullspace_basis;
  std::uint64_t expected_count = 0;
};

/// ((d-1)^l - 1) / (d-2): isolated eigenvector classes of an odeco tensor
/// with l nonzero terms.
std::uint64_t eigen_count(int d, int l);

struct EnumerateOptions {
  /// Multiplies the principal (d-2)-nd root of 1/lambda_i by
  /// exp(2 pi i shift_i / (d-2)); empty means principal branch everywhere.
  std::vector<int> branch_shift;
};

/// All isolated eigenvectors in closed form, w = V^T y with
/// y_{i_j} = eta_j lambda_{i_j}^{-1/(d-2)} (j < k), y_{i_k} = lambda_{i_k}^{-1/(d-2)}.
EigenEnumeration enumerate_eigenpairs(const OrthoDecomp& dec, int n, int d, const EnumerateOptions& opts = {});

struct EigenResidual {
  std::complex<double> lambda;
  double residual = 0.0;
};

/// lambda = (T w^{d-1})_j / w_j at the largest |w_j|;
/// residual = |T w^{d-1} - lambda w|_inf / (|T|_F |w|^{d-1}).
EigenResidual eigen_residual(const SymTensor& t, const Eigen::Ref<const Eigen::VectorXcd>& w);

/// Brute force for n = 2: projective roots of x2 (T x^{d-1})_1 - x1 (T x^{d-1})_2,
/// deduplicated and canonicalized.
std::vector<Eigen::VectorXcd> oracle_eigen_n2(const SymTensor& t);

/// Unit norm, coordinates below 1e-12 snapped to zero, first nonzero
/// coordinate rotated onto the positive real axis.
Eigen::VectorXcd canonicalize(const Eigen::Ref<const Eigen::VectorXcd>& w);

/// Distance between the lines spanned by a and b (0 iff proportional).
double projective_distance(const Eigen::Ref<const Eigen::VectorXcd>& a, const Eigen::Ref<const Eigen::VectorXcd>& b);

/// True when the point sets have equal size and every point of each has a
/// partner in the other within `tol`.
bool same_projective_set(const std::vector<Eigen::VectorXcd>& a, const std::vector<Eigen::VectorXcd>& b, double tol);

}  // namespace odeco
