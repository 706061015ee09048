#pragma once

#include <compare>
#include <cstddef>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "odeco/odeco_equations.hpp"

namespace odeco::gb2 {

/// Exponents over the d+1 variables u_{d0}, u_{(d-1)1}, ..., u_{0d}; slot j
/// holds the exponent of u_{(d-j) j}.
using Monomial = std::vector<int>;

/// weight(u_{i(d-i)}) = i, ties broken lexicographically with
/// u_{d0} > u_{(d-1)1} > ... > u_{0d}.
class TermOrder2 {
 public:
  explicit TermOrder2(int d) : d_(d) {}
  int d() const { return d_; }
  int weight(const Monomial& m) const;
  std::strong_ordering compare(const Monomial& a, const Monomial& b) const;
  /// Strict "a is larger than b".
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

 private:
  int d_;
};

struct Term {
  mpq_class coeff;
  Monomial mono;
};

/// Polynomial in the d+1 variables with exact rational coefficients; terms are
/// nonzero and sorted descending by the term order.
class BinPoly {
 public:
  BinPoly(int d, std::vector<Term> terms);
  explicit BinPoly(int d) : d_(d) {}

  int d() const { return d_; }
  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading() const { return terms_.front(); }

  /// Scaled so the leading coefficient is 1.
  BinPoly monic() const;
  BinPoly operator-(const BinPoly& other) const;
  BinPoly times(const mpq_class& c, const Monomial& m) const;

  friend bool operator==(const BinPoly& a, const BinPoly& b);

 private:
  int d_;
  std::vector<Term> terms_;
};

Monomial variable(int d, int j);
Monomial multiply(const Monomial& a, const Monomial& b);
bool divides(const Monomial& a, const Monomial& b);
Monomial lcm(const Monomial& a, const Monomial& b);
bool coprime(const Monomial& a, const Monomial& b);

/// f_{y,v,1,2} for y_2 >= 1, v_1 >= 1, as monic polynomials; zeros dropped,
/// duplicates (up to scaling) removed.
std::vector<BinPoly> generators_n2(int d);

/// An n = 2 quadric rewritten in the variables above.
BinPoly from_quadric(const Quadric& q, int d);

/// Records the leading monomial of the working polynomial at each division step.
struct ReductionTrace {
  std::vector<Monomial> leading_monomials;
  /// Largest |numerator| or denominator seen in any coefficient.
  mpz_class max_coeff_height = 0;
};

/// Full normal form: no term of the result is divisible by a leading term of
/// `basis`. The first divisor in list order is used at each step.
BinPoly reduce(const BinPoly& p, const std::vector<BinPoly>& basis, ReductionTrace* trace = nullptr);

BinPoly s_polynomial(const BinPoly& f, const BinPoly& g);

struct BuchbergerOptions {
  bool chain_criterion = false;
  /// Larger d is refused.
  int max_degree = 16;
};

struct BuchbergerReport {
  int d = 0;
  std::size_t generator_count = 0;
  bool is_groebner = false;
  std::size_t spairs_total = 0;
  std::size_t spairs_skipped_coprime = 0;
  std::size_t spairs_skipped_chain = 0;
  std::size_t spairs_nonzero = 0;
  /// Largest |numerator| or denominator met while reducing S-pairs.
  unsigned long max_coeff_height = 0;

  std::size_t spairs_skipped() const { return spairs_skipped_coprime + spairs_skipped_chain; }
};

/// Reduces every S-pair of generators_n2(d), in ascending order of the lcm of
/// leading terms, skipping pairs with coprime leading terms (and, optionally,
/// pairs covered by the chain criterion).
BuchbergerReport buchberger_verify(int d, const BuchbergerOptions& opts = {});

bool leading_term_squarefree(const BinPoly& p);

/// Every generator's leading monomial is squarefree.
bool squarefree_initial_check(int d);

struct DimensionCertificate {
  /// Every 4-subset of variables supports some leading term.
  bool four_subsets_hit = false;
  /// No leading term lives in {u_{2(d-2)}, u_{1(d-1)}, u_{0d}}.
  bool three_subset_free = false;
};

DimensionCertificate dimension_certificate(int d);

nlohmann::json report_to_json(const BuchbergerReport& r, bool squarefree, const DimensionCertificate& cert);

}  // namespace odeco::gb2
