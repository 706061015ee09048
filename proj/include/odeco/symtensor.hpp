#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "odeco/multi_index.hpp"
#include "odeco/numkit.hpp"

namespace odeco {

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Order-d symmetric tensor on R^n, one stored entry per degree-d exponent
/// vector (see MultiIndexSet for the ordering). Entry at m is the tensor entry
/// T_{1..1 2..2 ... n..n} with m_i copies of index i, not a polynomial
/// coefficient.
class SymTensor {
 public:
  SymTensor(int n, int d);
  SymTensor(int n, int d, std::vector<double> entries);

  int n() const { return n_; }
  int d() const { return d_; }
  std::size_t size() const { return entries_.size(); }

  const MultiIndexSet& indices() const { return *indices_; }
  const std::vector<double>& entries() const { return entries_; }

  double operator[](std::size_t pos) const { return entries_[pos]; }
  double at(const MultiIndex& m) const { return entries_[indices_->rank(m)]; }

  /// Entry at a full index tuple (0-based), in any order.
  double at_tuple(const std::vector<int>& tuple) const;

  SymTensor& operator+=(const SymTensor& other);
  SymTensor& operator-=(const SymTensor& other);
  SymTensor& operator*=(double s);

 private:
  int n_;
  int d_;
  std::shared_ptr<const MultiIndexSet> indices_;
  std::vector<double> entries_;
};

SymTensor operator+(SymTensor a, const SymTensor& b);
SymTensor operator-(SymTensor a, const SymTensor& b);
SymTensor operator*(double s, SymTensor a);

/// Scaled monomial coordinates u_m = d! * T_m, same ordering as SymTensor.
struct UCoords {
  int n = 0;
  int d = 0;
  std::vector<double> values;
};

/// T = sum_i lambdas[i] * basis.row(i)^{(x) d}; basis rows orthonormal.
struct OrthoDecomp {
  std::vector<double> lambdas;
  DenseMatrix basis;

  std::size_t terms() const { return lambdas.size(); }
  int n() const { return static_cast<int>(basis.cols()); }
};

inline constexpr double kOrthoTol = 1e-10;

/// Throws ValidationError unless the rows are orthonormal to `tol`, the term
/// count matches, k <= n and every lambda is finite.
void validate(const OrthoDecomp& dec, double tol = kOrthoTol);

SymTensor tensor_from_decomp(const OrthoDecomp& dec, int d);

/// lambda * v^{(x) d}
SymTensor rank_one(double lambda, const Eigen::Ref<const Eigen::VectorXd>& v, int d);

/// (T x^{d-1})_i = sum over i_2..i_d of T_{i i_2 .. i_d} x_{i_2} ... x_{i_d}
Eigen::VectorXd apply_power(const SymTensor& t, const Eigen::Ref<const Eigen::VectorXd>& x);
Eigen::VectorXcd apply_power(const SymTensor& t, const Eigen::Ref<const Eigen::VectorXcd>& x);

/// f_T(x) = T . x^d
double eval_form(const SymTensor& t, const Eigen::Ref<const Eigen::VectorXd>& x);
std::complex<double> eval_form(const SymTensor& t, const Eigen::Ref<const Eigen::VectorXcd>& x);

UCoords to_ucoords(const SymTensor& t);
SymTensor from_ucoords(const UCoords& u);

/// The contraction (T *_d T)_{a,b} = sum_s T_{a+e_s} T_{b+e_s} over pairs of
/// degree-(d-1) exponent vectors, and how far it is from being fully symmetric
/// in all 2(d-1) slots.
struct Contraction {
  MultiIndexSet index_set;
  Eigen::MatrixXd values;
  double defect = 0.0;
};

Contraction contract_last(const SymTensor& t);

/// Square root of the sum over all n^d index tuples of squared entries.
double frobenius_norm(const SymTensor& t);

struct RandomOdecoOptions {
  double lambda_low = 0.5;
  double lambda_high = 2.0;
  /// Even orders default to positive lambdas; set to draw signs for them too.
  bool allow_negative_even = false;
};

/// n orthonormal terms from random_orthonormal(n, seed) with magnitudes drawn
/// uniformly in [lambda_low, lambda_high].
std::pair<OrthoDecomp, SymTensor> random_odeco(int n, int d, std::uint64_t seed, const RandomOdecoOptions& opts = {});

/// The diagonal tensor sum_i lambdas[i] e_i^{(x) d}.
SymTensor fermat_tensor(const std::vector<double>& lambdas, int d);

}  // namespace odeco
