#include "odeco/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <utility>

namespace odeco {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<mpz_class> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw InvalidDimension("IntMatrix: entries length must equal rows * cols");
  }
}

DenseMatrix random_orthonormal(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidDimension("random_orthonormal: n must be at least 1");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = normal(gen);

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd& r = qr.matrixQR();
  for (std::size_t j = 0; j < n; ++j) {
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  }
  return DenseMatrix(q);
}

std::size_t exact_integer_rank(const IntMatrix& m) {
  // Working copy as a list of rows so exhausted rows can be dropped.
  std::vector<std::vector<mpz_class>> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<mpz_class> row(m.entries().begin() + r * m.cols(), m.entries().begin() + (r + 1) * m.cols());
    if (std::any_of(row.begin(), row.end(), [](const mpz_class& x) { return sgn(x) != 0; }))
      rows.push_back(std::move(row));
  }

  const std::size_t cols = m.cols();
  std::size_t rank = 0;
  mpz_class prev_pivot = 1;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    // Pivot: smallest nonzero entry in column c among unprocessed rows keeps numbers small.
    std::size_t pivot_row = rows.size();
    for (std::size_t r = rank; r < rows.size(); ++r) {
      if (sgn(rows[r][c]) == 0) continue;
      if (pivot_row == rows.size() || abs(rows[r][c]) < abs(rows[pivot_row][c])) pivot_row = r;
    }
    if (pivot_row == rows.size()) continue;
    std::swap(rows[rank], rows[pivot_row]);

    const mpz_class pivot = rows[rank][c];
    const auto& prow = rows[rank];
    mpz_class tmp;
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      auto& row = rows[r];
      const mpz_class factor = row[c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        // row[j] = (pivot*row[j] - factor*prow[j]) / prev_pivot, exact by Sylvester's identity.
        row[j] *= pivot;
        if (sgn(factor) != 0 && sgn(prow[j]) != 0) {
          tmp = factor * prow[j];
          row[j] -= tmp;
        }
        if (prev_pivot != 1) mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), prev_pivot.get_mpz_t());
      }
      row[c] = 0;
    }
    prev_pivot = pivot;
    ++rank;

    // Rows reduced to zero carry no further rank.
    auto first_zero = std::stable_partition(rows.begin() + rank, rows.end(), [](const std::vector<mpz_class>& row) {
      return std::any_of(row.begin(), row.end(), [](const mpz_class& x) { return sgn(x) != 0; });
    });
    rows.erase(first_zero, rows.end());
  }
  return rank;
}

ComplexPoly::ComplexPoly(std::vector<std::complex<double>> coefficients) : coeffs_(std::move(coefficients)) {
  while (!coeffs_.empty() && coeffs_.back() == std::complex<double>(0.0, 0.0)) coeffs_.pop_back();
  if (coeffs_.size() < 2) throw InvalidDimension("ComplexPoly: degree must be at least 1");
}

std::complex<double> ComplexPoly::operator()(std::complex<double> x) const {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<double> ComplexPoly::derivative(std::complex<double> x) const {
  std::complex<double> acc = 0.0;
  for (std::size_t k = coeffs_.size() - 1; k >= 1; --k) acc = acc * x + static_cast<double>(k) * coeffs_[k];
  return acc;
}

RootsResult poly_roots(const ComplexPoly& p, double tol) {
  // Exact zero roots are split off so the iteration only sees simple-ish roots.
  const auto& all = p.coefficients();
  std::size_t zeros = 0;
  while (all[zeros] == std::complex<double>(0.0, 0.0)) ++zeros;
  if (zeros > 0) {
    RootsResult out;
    if (zeros < p.degree()) {
      out = poly_roots(ComplexPoly({all.begin() + static_cast<std::ptrdiff_t>(zeros), all.end()}), tol);
    } else {
      out.converged = true;
    }
    out.roots.insert(out.roots.end(), zeros, std::complex<double>(0.0, 0.0));
    return out;
  }

  const auto& c = p.coefficients();
  const std::size_t deg = p.degree();
  const std::complex<double> lead = c.back();

  double coeff_sum = 0.0;
  double cauchy = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    coeff_sum += std::abs(c[k]);
    if (k < deg) cauchy = std::max(cauchy, std::abs(c[k] / lead));
  }
  cauchy += 1.0;

  auto accepted = [&](std::complex<double> r) {
    const double scale = std::pow(std::max(1.0, std::abs(r)), static_cast<double>(deg));
    return std::abs(p(r)) <= tol * coeff_sum * scale;
  };

  RootsResult out;
  out.roots.resize(deg);
  // Perturbed roots of unity on the Cauchy circle; the offset angle breaks symmetry.
  for (std::size_t k = 0; k < deg; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(deg) + 0.4;
    out.roots[k] = std::polar(0.5 * cauchy, angle);
  }

  std::vector<bool> done(deg, false);
  for (int it = 1; it <= kRootIterationCap; ++it) {
    out.iterations = it;
    bool all_done = true;
    for (std::size_t k = 0; k < deg; ++k) {
      if (done[k]) continue;
      const std::complex<double> z = out.roots[k];
      const std::complex<double> pz = p(z);
      if (pz == std::complex<double>(0.0, 0.0)) {
        done[k] = true;
        continue;
      }
      const std::complex<double> ratio = pz / p.derivative(z);
      std::complex<double> repulsion = 0.0;
      for (std::size_t j = 0; j < deg; ++j) {
        if (j == k) continue;
        const std::complex<double> diff = z - out.roots[j];
        if (diff != std::complex<double>(0.0, 0.0)) repulsion += 1.0 / diff;
      }
      std::complex<double> step = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = ratio;
      out.roots[k] = z - step;
      if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z))) {
        done[k] = accepted(out.roots[k]);
      }
      if (!done[k]) all_done = false;
    }
    if (all_done) break;
    // A root is final once it meets the residual bound and its update has stalled
    // or the bound holds with margin.
    all_done = true;
    for (std::size_t k = 0; k < deg; ++k) {
      if (!done[k] && accepted(out.roots[k]) &&
          std::abs(p(out.roots[k])) <= 1e-3 * tol * coeff_sum) {
        done[k] = true;
      }
      all_done = all_done && done[k];
    }
    if (all_done) break;
  }
  out.converged = std::all_of(out.roots.begin(), out.roots.end(), accepted);
  return out;
}

std::vector<RootCluster> cluster_roots(const std::vector<std::complex<double>>& roots, double radius) {
  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(roots[i] - roots[j]) <= radius) parent[find(i)] = find(j);

  std::vector<RootCluster> out;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] == n) {
      slot[r] = out.size();
      out.push_back({0.0, 0});
    }
    out[slot[r]].value += roots[i];
    out[slot[r]].multiplicity += 1;
  }
  for (auto& cl : out) cl.value /= static_cast<double>(cl.multiplicity);
  return out;
}

}  // namespace odeco
