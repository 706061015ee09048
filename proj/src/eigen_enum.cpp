#include "odeco/eigen_enum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace odeco {

using cplx = std::complex<double>;

std::uint64_t eigen_count(int d, int l) {
  if (d == 2) throw UnsupportedOrder("eigen_count: the count formula is undefined for d = 2");
  if (d < 3 || l < 1) throw std::invalid_argument("eigen_count: need d >= 3 and l >= 1");
  // sum_k C(l,k) (d-2)^{k-1}, which telescopes to ((d-1)^l - 1)/(d-2).
  std::uint64_t p = 1;
  for (int i = 0; i < l; ++i) p *= static_cast<std::uint64_t>(d - 1);
  return (p - 1) / static_cast<std::uint64_t>(d - 2);
}

Eigen::VectorXcd canonicalize(const Eigen::Ref<const Eigen::VectorXcd>& w) {
  const double norm = w.norm();
  if (norm == 0.0) throw std::invalid_argument("canonicalize: zero vector");
  Eigen::VectorXcd c = w / norm;
  Eigen::Index first = -1;
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    if (std::abs(c(j)) < 1e-12) {
      c(j) = 0.0;
    } else if (first < 0) {
      first = j;
    }
  }
  const cplx phase = std::conj(c(first)) / std::abs(c(first));
  c *= phase;
  c /= c.norm();
  c(first) = std::abs(c(first));
  return c;
}

double projective_distance(const Eigen::Ref<const Eigen::VectorXcd>& a, const Eigen::Ref<const Eigen::VectorXcd>& b) {
  const Eigen::VectorXcd ua = a / a.norm();
  const Eigen::VectorXcd ub = b / b.norm();
  const cplx inner = ub.dot(ua);  // conj(ub) . ua
  const cplx phase = std::abs(inner) > 0 ? inner / std::abs(inner) : cplx(1.0);
  // |ua - phase*ub| is sqrt(2 - 2|<ua,ub>|); computed without cancellation.
  return (ua - phase * ub).norm();
}

bool same_projective_set(const std::vector<Eigen::VectorXcd>& a, const std::vector<Eigen::VectorXcd>& b, double tol) {
  if (a.size() != b.size()) return false;
  auto covered = [tol](const std::vector<Eigen::VectorXcd>& from, const std::vector<Eigen::VectorXcd>& to) {
    return std::all_of(from.begin(), from.end(), [&](const Eigen::VectorXcd& p) {
      return std::any_of(to.begin(), to.end(), [&](const Eigen::VectorXcd& q) { return projective_distance(p, q) < tol; });
    });
  };
  return covered(a, b) && covered(b, a);
}

EigenResidual eigen_residual(const SymTensor& t, const Eigen::Ref<const Eigen::VectorXcd>& w) {
  if (w.size() != t.n()) throw InvalidDimension("eigen_residual: vector length must equal n");
  Eigen::Index j = 0;
  const double wmax = w.cwiseAbs().maxCoeff(&j);
  if (wmax == 0.0) throw std::invalid_argument("eigen_residual: zero vector");
  const Eigen::VectorXcd tw = apply_power(t, w);
  EigenResidual out;
  out.lambda = tw(j) / w(j);
  const double err = (tw - out.lambda * w).cwiseAbs().maxCoeff();
  const double scale = frobenius_norm(t) * std::pow(w.norm(), t.d() - 1);
  out.residual = scale > 0.0 ? err / scale : err;
  return out;
}

EigenEnumeration enumerate_eigenpairs(const OrthoDecomp& dec, int n, int d, const EnumerateOptions& opts) {
  if (d < 3) throw UnsupportedOrder("enumerate_eigenpairs: order must be at least 3");
  if (dec.n() != n) throw InvalidDimension("enumerate_eigenpairs: basis width must equal n");
  const int l = static_cast<int>(dec.terms());
  if (l < 1) throw std::invalid_argument("enumerate_eigenpairs: need at least one term");
  if (l > 30) throw InvalidDimension("enumerate_eigenpairs: too many terms to enumerate");
  for (double lambda : dec.lambdas)
    if (std::abs(lambda) <= 1e-12)
      throw std::invalid_argument("enumerate_eigenpairs: drop zero eigenvalue terms before enumerating");
  if (!opts.branch_shift.empty() && static_cast<int>(opts.branch_shift.size()) != l)
    throw std::invalid_argument("enumerate_eigenpairs: branch_shift needs one entry per term");

  const SymTensor t = tensor_from_decomp(dec, d);
  const int q = d - 2;
  auto unity = [q](int e) { return std::polar(1.0, 2.0 * std::numbers::pi * e / q); };

  // Principal branch of lambda^{-1/(d-2)}: arg of lambda taken in (-pi, pi].
  std::vector<cplx> root(l);
  for (int i = 0; i < l; ++i) {
    root[i] = std::exp(-std::log(cplx(dec.lambdas[i], 0.0)) / static_cast<double>(q));
    if (!opts.branch_shift.empty()) root[i] *= unity(opts.branch_shift[i]);
  }
  const Eigen::MatrixXcd vt = dec.basis.transpose().cast<cplx>();

  EigenEnumeration out;
  out.expected_count = eigen_count(d, l);
  out.isolated.reserve(out.expected_count);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << l); ++mask) {
    std::vector<int> support;
    for (int i = 0; i < l; ++i)
      if (mask >> i & 1) support.push_back(i);
    const int k = static_cast<int>(support.size());

    std::vector<int> eta(k - 1, 0);
    while (true) {
      Eigen::VectorXcd y = Eigen::VectorXcd::Zero(l);
      for (int j = 0; j + 1 < k; ++j) y(support[j]) = unity(eta[j]) * root[support[j]];
      y(support[k - 1]) = root[support[k - 1]];

      EigenPair pair;
      pair.w = canonicalize(vt * y);
      const EigenResidual r = eigen_residual(t, pair.w);
      pair.lambda = r.lambda;
      pair.residual = r.residual;
      pair.support = support;
      pair.eta_exponents = eta;
      out.isolated.push_back(std::move(pair));

      // Odometer over (d-2)^{k-1} tuples.
      int pos = 0;
      while (pos < k - 1 && ++eta[pos] == q) eta[pos++] = 0;
      if (pos == k - 1) break;
    }
  }

  if (l < n) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(dec.basis), Eigen::ComputeFullV);
    const Eigen::MatrixXd& v = svd.matrixV();
    for (int c = l; c < n; ++c) out.nullspace_basis.push_back(v.col(c));
  }
  return out;
}

std::vector<Eigen::VectorXcd> oracle_eigen_n2(const SymTensor& t) {
  if (t.n() != 2) throw InvalidDimension("oracle_eigen_n2: tensor must have n = 2");
  if (t.d() < 3) throw UnsupportedOrder("oracle_eigen_n2: order must be at least 3");
  const int d = t.d();

  // f = sum_a c_a x1^a x2^{d-a}. The minor x2 (Tx^{d-1})_1 - x1 (Tx^{d-1})_2
  // has coefficient g_k = ((k+1) c_{k+1} - (d-k+1) c_{k-1}) / d on x1^k x2^{d-k}.
  std::vector<double> c(d + 1);
  for (int a = 0; a <= d; ++a) {
    const MultiIndex m{a, d - a};
    c[a] = multinomial(m) * t.at(m);
  }
  std::vector<cplx> g(d + 1);
  for (int k = 0; k <= d; ++k) {
    double v = 0.0;
    if (k + 1 <= d) v += (k + 1) * c[k + 1];
    if (k - 1 >= 0) v -= (d - k + 1) * c[k - 1];
    g[k] = v / d;
  }
  const double gmax = std::abs(*std::max_element(g.begin(), g.end(), [](cplx x, cplx y) { return std::abs(x) < std::abs(y); }));
  if (gmax <= 1e-14 * std::max(1.0, frobenius_norm(t)))
    throw DegenerateTensor("oracle_eigen_n2: every direction is an eigenvector");

  std::vector<Eigen::VectorXcd> points;
  auto solve_chart = [&](std::vector<cplx> coeffs, bool x2_chart) {
    while (!coeffs.empty() && std::abs(coeffs.back()) <= 1e-14 * gmax) coeffs.pop_back();
    if (coeffs.size() < 2) return;
    const RootsResult rr = poly_roots(ComplexPoly(coeffs));
    if (!rr.converged) throw std::runtime_error("oracle_eigen_n2: root finder did not converge");
    for (const cplx r : rr.roots) {
      if (std::abs(r) > 1.5) continue;  // the other chart covers it
      Eigen::VectorXcd p(2);
      if (x2_chart)
        p << r, 1.0;
      else
        p << 1.0, r;
      points.push_back(canonicalize(p));
    }
  };
  solve_chart(g, true);                                 // x2 = 1, unknown x1
  solve_chart(std::vector<cplx>(g.rbegin(), g.rend()), false);  // x1 = 1, unknown x2

  // Multiple roots come back as clusters of size ~ tol^{1/multiplicity}.
  std::vector<Eigen::VectorXcd> unique;
  for (const auto& p : points) {
    const bool dup = std::any_of(unique.begin(), unique.end(),
                                 [&](const Eigen::VectorXcd& u) { return projective_distance(p, u) < 1e-4; });
    if (!dup) unique.push_back(p);
  }
  return unique;
}

}  // namespace odeco
