#include "odeco/multi_index.hpp"

#include <numeric>
#include <stdexcept>

namespace odeco {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double multinomial(const MultiIndex& m) {
  // Product of binomials keeps intermediate values integral.
  double r = 1.0;
  int run = 0;
  for (int e : m) {
    run += e;
    r *= static_cast<double>(binomial(run, e));
  }
  return r;
}

int degree(const MultiIndex& m) { return std::accumulate(m.begin(), m.end(), 0); }

namespace {

// Compositions of s into parts non-negative parts.
std::size_t composition_count(int s, int parts) {
  if (parts == 0) return s == 0 ? 1 : 0;
  return binomial(s + parts - 1, parts - 1);
}

void enumerate(int n, int remaining, std::size_t pos, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (pos + 1 == static_cast<std::size_t>(n)) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[pos] = e;
    enumerate(n, remaining - e, pos + 1, cur, out);
  }
}

}  // namespace

MultiIndexSet::MultiIndexSet(int n, int d) : n_(n), d_(d) {
  if (n < 1 || d < 0) throw std::invalid_argument("MultiIndexSet: need n >= 1 and d >= 0");
  indices_.reserve(composition_count(d, n));
  MultiIndex cur(n, 0);
  enumerate(n, d, 0, cur, indices_);
}

std::size_t multi_index_rank(const MultiIndex& m) {
  const int n = static_cast<int>(m.size());
  int remaining = degree(m);
  std::size_t r = 0;
  for (int k = 0; k + 1 < n; ++k) {
    // Everything with a larger exponent in slot k comes first.
    for (int e = remaining; e > m[k]; --e) r += composition_count(remaining - e, n - k - 1);
    remaining -= m[k];
  }
  return r;
}

std::size_t MultiIndexSet::rank(const MultiIndex& m) const {
  if (static_cast<int>(m.size()) != n_ || degree(m) != d_)
    throw std::invalid_argument("MultiIndexSet::rank: index shape mismatch");
  return multi_index_rank(m);
}

std::vector<int> to_tuple(const MultiIndex& m) {
  std::vector<int> t;
  for (std::size_t i = 0; i < m.size(); ++i) t.insert(t.end(), m[i], static_cast<int>(i));
  return t;
}

MultiIndex from_tuple(const std::vector<int>& tuple, int n) {
  MultiIndex m(n, 0);
  for (int i : tuple) m.at(i) += 1;
  return m;
}

std::string index_label(const MultiIndex& m) {
  bool wide = false;
  for (int e : m) wide = wide || e > 9;
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (wide && i > 0) s += ',';
    s += std::to_string(m[i]);
  }
  return s;
}

MultiIndex unit_index(int n, int i, int scale) {
  MultiIndex m(n, 0);
  m.at(i) = scale;
  return m;
}

MultiIndex operator+(MultiIndex a, const MultiIndex& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

MultiIndex operator-(MultiIndex a, const MultiIndex& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

}  // namespace odeco
