#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace odeco {

/// Exponent vector (i_1, ..., i_n) of a monomial x_1^{i_1} ... x_n^{i_n}.
using MultiIndex = std::vector<int>;

std::uint64_t binomial(int n, int k);
double factorial(int n);

/// d! / (m_1! ... m_n!)
double multinomial(const MultiIndex& m);

int degree(const MultiIndex& m);

/// All exponent vectors of degree d in n variables, in descending lexicographic
/// order: (d,0,...,0) first, (0,...,0,d) last. Equivalently, the sorted index
/// tuples 1...1 < 1...12 < ... in ascending lexicographic order.
class MultiIndexSet {
 public:
  MultiIndexSet(int n, int d);

  int n() const { return n_; }
  int d() const { return d_; }
  std::size_t size() const { return indices_.size(); }

  const MultiIndex& operator[](std::size_t pos) const { return indices_[pos]; }
  const std::vector<MultiIndex>& indices() const { return indices_; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  /// Position of m in this set; m must have length n and degree d.
  std::size_t rank(const MultiIndex& m) const;

 private:
  int n_;
  int d_;
  std::vector<MultiIndex> indices_;
};

/// Rank of an exponent vector among all of its length and degree, in the
/// order used by MultiIndexSet.
std::size_t multi_index_rank(const MultiIndex& m);

/// Sorted index tuple (0-based) i_1 <= ... <= i_d for an exponent vector.
std::vector<int> to_tuple(const MultiIndex& m);
MultiIndex from_tuple(const std::vector<int>& tuple, int n);

/// "300" style label; digits are comma separated when any exponent exceeds 9.
std::string index_label(const MultiIndex& m);

MultiIndex unit_index(int n, int i, int scale = 1);
MultiIndex operator+(MultiIndex a, const MultiIndex& b);
MultiIndex operator-(MultiIndex a, const MultiIndex& b);

}  // namespace odeco
