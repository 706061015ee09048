#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "odeco/multi_index.hpp"
#include "odeco/numkit.hpp"
#include "odeco/symtensor.hpp"

namespace odeco {

/// coeff * u_a * u_b with rank(a) <= rank(b) among degree-d exponent vectors.
struct QuadricTerm {
  int coeff = 0;
  MultiIndex a;
  MultiIndex b;

  friend bool operator==(const QuadricTerm&, const QuadricTerm&) = default;
};

/// sum_s u_{y+e_s} u_{v+e_s} - u_{w+e_s} u_{z+e_s} with y + v = w + z, all of
/// degree d-1. Terms are sorted and the first has positive sign.
struct Quadric {
  std::vector<QuadricTerm> terms;
  /// (y, v, w, z) that produced it.
  std::array<MultiIndex, 4> provenance;
};

/// Lifts the binomial u_y u_v - u_w u_z to the quadric above. Returns an empty
/// term list when everything cancels.
Quadric lift_binomial(const MultiIndex& y, const MultiIndex& v, const MultiIndex& w, const MultiIndex& z);

/// One quadric per unordered choice {y,v} vs {w,z} with y+v = w+z, skipping
/// {y,v} = {w,z}; deduplicated up to sign, in lexicographic order of the pairs.
std::vector<Quadric> generate_all_quadrics(int n, int d);

/// The family f_{y,v,i,j}: w = y + e_i - e_j, z = v - e_i + e_j for i != j,
/// y_j >= 1, v_i >= 1; zero polynomials dropped, deduplicated up to sign.
std::vector<Quadric> generate_spanning_subset(int n, int d);

/// Compiled quadric list for fast evaluation at many points.
class QuadricSystem {
 public:
  QuadricSystem(int n, int d, std::vector<Quadric> quadrics);
  /// All quadrics for (n, d).
  QuadricSystem(int n, int d);

  int n() const { return n_; }
  int d() const { return d_; }
  const std::vector<Quadric>& quadrics() const { return quadrics_; }

  /// Value of every quadric at u.
  std::vector<double> evaluate(const UCoords& u) const;
  /// max |q(u)| / |u|_2^2 over all quadrics; 0 for u = 0.
  double residual(const UCoords& u) const;

 private:
  struct CompiledTerm {
    int coeff;
    std::size_t a;
    std::size_t b;
  };
  int n_;
  int d_;
  std::vector<Quadric> quadrics_;
  std::vector<std::vector<CompiledTerm>> compiled_;
};

/// Scale-invariant residual of all quadrics at u (cached system per shape).
double residual(const UCoords& u);

inline constexpr double kMembershipTol = 1e-8;

/// Rows: quadrics; columns: the distinct monomials u_a u_b they use.
IntMatrix coefficient_matrix(const std::vector<Quadric>& quadrics, int n, int d);

/// Dimension of the span of all quadrics (exact rank of the coefficient matrix).
std::size_t independent_count(int n, int d);

/// Exact integer Jacobian of `quadrics` at the Fermat point u_{d e_i} = d!,
/// rows by quadric, columns by degree-d exponent vector.
IntMatrix jacobian_at_fermat(const std::vector<Quadric>& quadrics, int n, int d);

struct JacobianRank {
  std::size_t rank = 0;
  std::size_t expected = 0;
};

/// Rank of the Jacobian of all quadrics at the Fermat point and the value
/// C(n+d-1, d) - C(n+1, 2) it should take.
JacobianRank jacobian_fermat_rank(int n, int d);

/// n(n+1)/2
std::size_t dimension_expected(int n);

/// "u_300*u_120 - u_210^2 + ..."
std::string quadric_to_text(const Quadric& q);
nlohmann::json quadric_to_json(const Quadric& q);

}  // namespace odeco
