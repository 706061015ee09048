#include "odeco/symtensor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <string>

namespace odeco {

namespace {

std::shared_ptr<const MultiIndexSet> shared_index_set(int n, int d) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const MultiIndexSet>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, d}];
  if (!slot) slot = std::make_shared<const MultiIndexSet>(n, d);
  return slot;
}

template <typename Vec>
std::vector<std::vector<typename Vec::Scalar>> power_table(const Vec& x, int max_power) {
  using S = typename Vec::Scalar;
  std::vector<std::vector<S>> pw(x.size(), std::vector<S>(max_power + 1, S(1)));
  for (Eigen::Index j = 0; j < x.size(); ++j)
    for (int k = 1; k <= max_power; ++k) pw[j][k] = pw[j][k - 1] * x(j);
  return pw;
}

template <typename Vec>
Vec apply_power_impl(const SymTensor& t, const Vec& x) {
  using S = typename Vec::Scalar;
  if (x.size() != t.n()) throw InvalidDimension("apply_power: vector length must equal n");
  const int n = t.n();
  const int d = t.d();
  const auto pw = power_table(x, d);
  Vec out = Vec::Zero(n);
  const auto& set = t.indices();
  for (std::size_t pos = 0; pos < set.size(); ++pos) {
    const double entry = t[pos];
    if (entry == 0.0) continue;
    const MultiIndex& m = set[pos];
    // Number of index tuples (i_2..i_d) with exponent m - e_i is multinomial(m) * m_i / d.
    const double base = entry * multinomial(m) / d;
    for (int i = 0; i < n; ++i) {
      if (m[i] == 0) continue;
      S mono = S(base * m[i]);
      for (int j = 0; j < n; ++j) mono *= pw[j][m[j] - (j == i ? 1 : 0)];
      out(i) += mono;
    }
  }
  return out;
}

template <typename Vec>
typename Vec::Scalar eval_form_impl(const SymTensor& t, const Vec& x) {
  using S = typename Vec::Scalar;
  if (x.size() != t.n()) throw InvalidDimension("eval_form: vector length must equal n");
  const auto pw = power_table(x, t.d());
  S acc = S(0);
  const auto& set = t.indices();
  for (std::size_t pos = 0; pos < set.size(); ++pos) {
    if (t[pos] == 0.0) continue;
    const MultiIndex& m = set[pos];
    S mono = S(t[pos] * multinomial(m));
    for (int j = 0; j < t.n(); ++j) mono *= pw[j][m[j]];
    acc += mono;
  }
  return acc;
}

}  // namespace

SymTensor::SymTensor(int n, int d) : n_(n), d_(d) {
  if (n < 1 || d < 1) throw InvalidDimension("SymTensor: need n >= 1 and d >= 1");
  indices_ = shared_index_set(n, d);
  entries_.assign(indices_->size(), 0.0);
}

SymTensor::SymTensor(int n, int d, std::vector<double> entries) : SymTensor(n, d) {
  if (entries.size() != entries_.size())
    throw InvalidDimension("SymTensor: expected " + std::to_string(entries_.size()) + " entries, got " +
                           std::to_string(entries.size()));
  entries_ = std::move(entries);
}

double SymTensor::at_tuple(const std::vector<int>& tuple) const {
  if (static_cast<int>(tuple.size()) != d_) throw InvalidDimension("SymTensor::at_tuple: tuple length must equal d");
  return at(from_tuple(tuple, n_));
}

SymTensor& SymTensor::operator+=(const SymTensor& other) {
  if (other.n_ != n_ || other.d_ != d_) throw InvalidDimension("SymTensor: shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

SymTensor& SymTensor::operator-=(const SymTensor& other) {
  if (other.n_ != n_ || other.d_ != d_) throw InvalidDimension("SymTensor: shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

SymTensor& SymTensor::operator*=(double s) {
  for (double& e : entries_) e *= s;
  return *this;
}

SymTensor operator+(SymTensor a, const SymTensor& b) { return a += b; }
SymTensor operator-(SymTensor a, const SymTensor& b) { return a -= b; }
SymTensor operator*(double s, SymTensor a) { return a *= s; }

void validate(const OrthoDecomp& dec, double tol) {
  const auto k = static_cast<Eigen::Index>(dec.lambdas.size());
  if (dec.basis.rows() != k) throw ValidationError("OrthoDecomp: basis must have one row per lambda");
  if (dec.basis.cols() < 1) throw ValidationError("OrthoDecomp: basis must have at least one column");
  if (k > dec.basis.cols()) throw ValidationError("OrthoDecomp: more terms than the dimension");
  for (double l : dec.lambdas)
    if (!std::isfinite(l)) throw ValidationError("OrthoDecomp: lambdas must be finite");
  const Eigen::MatrixXd gram = dec.basis * dec.basis.transpose();
  const double err = (gram - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff();
  if (k > 0 && !(err <= tol))
    throw ValidationError("OrthoDecomp: basis rows are not orthonormal (max deviation " + std::to_string(err) + ")");
}

SymTensor tensor_from_decomp(const OrthoDecomp& dec, int d) {
  if (d < 2) throw InvalidDimension("tensor_from_decomp: order must be at least 2");
  validate(dec);
  SymTensor t(dec.n(), d);
  for (std::size_t i = 0; i < dec.terms(); ++i) t += rank_one(dec.lambdas[i], dec.basis.row(i).transpose(), d);
  return t;
}

SymTensor rank_one(double lambda, const Eigen::Ref<const Eigen::VectorXd>& v, int d) {
  const int n = static_cast<int>(v.size());
  SymTensor probe(n, d);
  const auto pw = power_table(Eigen::VectorXd(v), d);
  std::vector<double> entries(probe.size());
  const auto& set = probe.indices();
  for (std::size_t pos = 0; pos < set.size(); ++pos) {
    double mono = lambda;
    for (int j = 0; j < n; ++j) mono *= pw[j][set[pos][j]];
    entries[pos] = mono;
  }
  return SymTensor(n, d, std::move(entries));
}

Eigen::VectorXd apply_power(const SymTensor& t, const Eigen::Ref<const Eigen::VectorXd>& x) {
  return apply_power_impl(t, Eigen::VectorXd(x));
}

Eigen::VectorXcd apply_power(const SymTensor& t, const Eigen::Ref<const Eigen::VectorXcd>& x) {
  return apply_power_impl(t, Eigen::VectorXcd(x));
}

double eval_form(const SymTensor& t, const Eigen::Ref<const Eigen::VectorXd>& x) {
  return eval_form_impl(t, Eigen::VectorXd(x));
}

std::complex<double> eval_form(const SymTensor& t, const Eigen::Ref<const Eigen::VectorXcd>& x) {
  return eval_form_impl(t, Eigen::VectorXcd(x));
}

UCoords to_ucoords(const SymTensor& t) {
  const double scale = factorial(t.d());
  UCoords u{t.n(), t.d(), t.entries()};
  for (double& v : u.values) v *= scale;
  return u;
}

SymTensor from_ucoords(const UCoords& u) {
  const double scale = factorial(u.d);
  std::vector<double> entries = u.values;
  for (double& v : entries) v /= scale;
  return SymTensor(u.n, u.d, std::move(entries));
}

Contraction contract_last(const SymTensor& t) {
  if (t.d() < 2) throw InvalidDimension("contract_last: order must be at least 2");
  const int n = t.n();
  MultiIndexSet half(n, t.d() - 1);
  const auto m = static_cast<Eigen::Index>(half.size());

  // Columns of `lifted` are the slices T_{a+e_s} for each s.
  Eigen::MatrixXd lifted(m, n);
  for (Eigen::Index a = 0; a < m; ++a)
    for (int s = 0; s < n; ++s) lifted(a, s) = t.at(half[a] + unit_index(n, s));
  Eigen::MatrixXd values = lifted * lifted.transpose();

  // Full symmetrization over 2(d-1) slots averages C(a', c - a') over every
  // split of the combined multiset c, weighted by how many tuples realize it.
  const std::size_t groups = binomial(n + 2 * (t.d() - 1) - 1, n - 1);
  std::vector<double> sym(groups, 0.0);
  std::vector<double> weight(half.size());
  for (std::size_t a = 0; a < half.size(); ++a) weight[a] = multinomial(half[a]);
  std::vector<std::size_t> group_of(half.size() * half.size());
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      const MultiIndex c = half[a] + half[b];
      const std::size_t g = multi_index_rank(c);
      group_of[a * m + b] = g;
      sym[g] += weight[a] * weight[b] * values(a, b) / multinomial(c);
    }
  }
  double defect = 0.0;
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b)
      defect = std::max(defect, std::abs(values(a, b) - sym[group_of[a * m + b]]));
  return Contraction{std::move(half), std::move(values), defect};
}

double frobenius_norm(const SymTensor& t) {
  double acc = 0.0;
  for (std::size_t pos = 0; pos < t.size(); ++pos) acc += multinomial(t.indices()[pos]) * t[pos] * t[pos];
  return std::sqrt(acc);
}

std::pair<OrthoDecomp, SymTensor> random_odeco(int n, int d, std::uint64_t seed, const RandomOdecoOptions& opts) {
  if (n < 1) throw InvalidDimension("random_odeco: n must be at least 1");
  if (!(opts.lambda_low > 0.0) || !(opts.lambda_low <= opts.lambda_high))
    throw std::invalid_argument("random_odeco: need 0 < lambda_low <= lambda_high");
  OrthoDecomp dec;
  dec.basis = random_orthonormal(static_cast<std::size_t>(n), seed);
  std::mt19937_64 gen(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> mag(opts.lambda_low, opts.lambda_high);
  std::bernoulli_distribution flip(0.5);
  const bool signed_draw = (d % 2 == 1) || opts.allow_negative_even;
  for (int i = 0; i < n; ++i) {
    double l = mag(gen);
    if (flip(gen) && signed_draw) l = -l;
    dec.lambdas.push_back(l);
  }
  SymTensor t = tensor_from_decomp(dec, d);
  return {std::move(dec), std::move(t)};
}

SymTensor fermat_tensor(const std::vector<double>& lambdas, int d) {
  const int n = static_cast<int>(lambdas.size());
  SymTensor probe(n, d);
  std::vector<double> entries(probe.size(), 0.0);
  for (int i = 0; i < n; ++i) entries[multi_index_rank(unit_index(n, i, d))] = lambdas[i];
  return SymTensor(n, d, std::move(entries));
}

}  // namespace odeco
