#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

namespace odeco {

/// Real matrix, row-major. Rows of an orthonormal basis are the basis vectors.
using DenseMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

class InvalidDimension : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense matrix of arbitrary-precision integers, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<mpz_class> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  mpz_class& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const mpz_class& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  const std::vector<mpz_class>& entries() const { return entries_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> entries_;
};

/// Q with orthonormal columns (and rows) from the QR factorization of a seeded
/// Gaussian matrix; the diagonal of R is made positive so Q is unique.
DenseMatrix random_orthonormal(std::size_t n, std::uint64_t seed);

/// Rank over Q by fraction-free (Bareiss) elimination.
std::size_t exact_integer_rank(const IntMatrix& m);

/// Polynomial with complex coefficients, ascending degree.
class ComplexPoly {
 public:
  /// Strips trailing zero coefficients; throws if the result has degree < 1.
  explicit ComplexPoly(std::vector<std::complex<double>> coefficients);

  std::size_t degree() const { return coeffs_.size() - 1; }
  const std::vector<std::complex<double>>& coefficients() const { return coeffs_; }
  std::complex<double> operator()(std::complex<double> x) const;
  std::complex<double> derivative(std::complex<double> x) const;

 private:
  std::vector<std::complex<double>> coeffs_;
};

struct RootsResult {
  /// One entry per root counted with multiplicity (size == degree).
  std::vector<std::complex<double>> roots;
  bool converged = false;
  int iterations = 0;
};

struct RootCluster {
  std::complex<double> value;
  int multiplicity = 0;
};

inline constexpr double kDefaultRootTol = 1e-10;
inline constexpr int kRootIterationCap = 1000;

/// All complex roots by Aberth-Ehrlich simultaneous iteration. A root r is
/// accepted once |p(r)| <= tol * sum|c_k| * max(1,|r|)^deg. If the cap is hit,
/// `converged` is false and the current approximations are returned.
RootsResult poly_roots(const ComplexPoly& p, double tol = kDefaultRootTol);

/// Groups roots that lie within `radius` of each other (single linkage).
std::vector<RootCluster> cluster_roots(const std::vector<std::complex<double>>& roots, double radius);

}  // namespace odeco
