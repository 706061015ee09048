// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "odeco/eigen_enum.hpp"
#include "odeco/groebner_n2.hpp"
#include "odeco/odeco_equations.hpp"
#include "odeco/power_method.hpp"
#include "odeco/symtensor.hpp"

using namespace odeco;
using cd = std::complex<double>;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1e", x);
  return buf;
}

OrthoDecomp axis_decomp(int n, std::vector<double> lambdas) {
  OrthoDecomp dec;
  dec.lambdas = lambdas;
  dec.basis = DenseMatrix::Zero(lambdas.size(), n);
  for (std::size_t i = 0; i < lambdas.size(); ++i) dec.basis(i, i) = 1.0;
  return dec;
}

Eigen::VectorXcd vec(std::initializer_list<cd> xs) {
  Eigen::VectorXcd v(xs.size());
  int i = 0;
  for (cd x : xs) v(i++) = x;
  return v;
}

std::vector<Eigen::VectorXcd> points(const EigenEnumeration& e) {
  std::vector<Eigen::VectorXcd> out;
  for (const auto& p : e.isolated) out.push_back(p.w);
  return out;
}

// Every canonical point of `got` equals some canonical point of `want` (and vice versa) to tol.
bool same_canonical_set(const std::vector<Eigen::VectorXcd>& got, std::vector<Eigen::VectorXcd> want, double tol) {
  if (got.size() != want.size()) return false;
  for (auto& w : want) w = canonicalize(w);
  auto covered = [tol](const std::vector<Eigen::VectorXcd>& xs, const std::vector<Eigen::VectorXcd>& ys) {
    for (const auto& p : xs) {
      bool hit = false;
      for (const auto& q : ys) hit = hit || (p - q).norm() < tol;
      if (!hit) return false;
    }
    return true;
  };
  return covered(got, want) && covered(want, got);
}

// Test corpus shared by the vanishing and contraction criteria.
std::vector<SymTensor>& corpus() {
  static std::vector<SymTensor> c;
  return c;
}

Outcome eigen_counts() {
  Outcome o;
  o.require(enumerate_eigenpairs(axis_decomp(3, {1, 2, 3}), 3, 3).isolated.size() == 7, "d=3, l=3 count");
  o.require(enumerate_eigenpairs(axis_decomp(4, {1, 2}), 4, 4).isolated.size() == 4, "d=4, l=2 count");
  double worst = 0.0;
  for (int d = 3; d <= 6; ++d)
    for (int l = 1; l <= 5; ++l) {
      auto [dec, t] = random_odeco(l, d, 10 * d + l);
      EigenEnumeration e = enumerate_eigenpairs(dec, l, d);
      o.require(e.isolated.size() == eigen_count(d, l), "count at d=" + std::to_string(d) + ", l=" + std::to_string(l));
      for (const auto& p : e.isolated) worst = std::max(worst, p.residual);
    }
  o.require(worst < 1e-8, "residual " + sci(worst));
  if (o.ok) o.detail = "counts match; max residual " + sci(worst);
  return o;
}

Outcome fermat_cubic() {
  Outcome o;
  const double a = 1.0, b = 1.0 / 2.0, c = 1.0 / 3.0;
  const std::vector<Eigen::VectorXcd> expect{vec({a, 0, 0}), vec({0, b, 0}), vec({0, 0, c}), vec({a, b, 0}),
                                             vec({a, 0, c}), vec({0, b, c}), vec({a, b, c})};
  o.require(same_canonical_set(points(enumerate_eigenpairs(axis_decomp(3, {1, 2, 3}), 3, 3)), expect, 1e-10),
            "eigenvectors differ from (1/lambda_i) patterns");
  if (o.ok) o.detail = "7 canonical eigenvectors match";
  return o;
}

Outcome quartic_in_four() {
  Outcome o;
  EigenEnumeration e = enumerate_eigenpairs(axis_decomp(4, {1, 2}), 4, 4);
  const double r = 1.0 / std::sqrt(2.0);
  o.require(same_canonical_set(points(e), {vec({1, 0, 0, 0}), vec({0, r, 0, 0}), vec({1, r, 0, 0}), vec({-1, r, 0, 0})},
                               1e-10),
            "isolated set");
  o.require(e.nullspace_basis.size() == 2, "nullspace dimension");
  if (e.nullspace_basis.size() == 2) {
    Eigen::MatrixXd z(4, 2);
    z << e.nullspace_basis[0], e.nullspace_basis[1];
    // Spans {e3, e4}: no e1/e2 component and full rank in the last two rows.
    o.require(z.topRows(2).norm() < 1e-10, "nullspace leaves span{e3, e4}");
    o.require(std::abs(std::abs(z.bottomRows(2).determinant()) - 1.0) < 1e-10, "nullspace does not span {e3, e4}");
  }
  if (o.ok) o.detail = "4 isolated points, nullspace span{e3, e4}";
  return o;
}

Outcome oracle_agreement() {
  Outcome o;
  int k = 0;
  for (int d : {3, 4, 5})
    for (int s = 0; s < 9 && k < 25; ++s, ++k) {
      RandomOdecoOptions opts;
      opts.allow_negative_even = s % 2 == 1;
      auto [dec, t] = random_odeco(2, d, 7000 + 10 * d + s, opts);
      o.require(same_projective_set(oracle_eigen_n2(t), points(enumerate_eigenpairs(dec, 2, d)), 1e-6),
                "mismatch at d=" + std::to_string(d) + " seed " + std::to_string(s));
    }
  o.require(k == 25, "tensor count");
  if (o.ok) o.detail = "25 tensors agree";
  return o;
}

Outcome power_method() {
  Outcome o;
  double worst_pair = 0.0, worst_rec = 0.0;
  int worst_hits = 100;
  for (int k = 0; k < 20; ++k) {
    const int n = 1 + k % 5, d = 3 + k % 3;
    auto [dec, t] = random_odeco(n, d, 9000 + k);
    const double norm = frobenius_norm(t);
    DecompositionReport r = decompose(t);
    o.require(r.converged && r.decomp.terms() == static_cast<std::size_t>(n), "decompose did not finish");
    worst_rec = std::max(worst_rec, frobenius_norm(t - tensor_from_decomp(r.decomp, d)) / norm);
    // Match each true term to a recovered one up to permutation and sign.
    std::vector<bool> used(r.decomp.terms(), false);
    for (int i = 0; i < n; ++i) {
      const Eigen::VectorXd v = dec.basis.row(i).transpose();
      double best = INFINITY;
      std::size_t arg = 0;
      for (std::size_t j = 0; j < r.decomp.terms(); ++j) {
        if (used[j]) continue;
        const Eigen::VectorXd w = r.decomp.basis.row(j).transpose();
        for (double s : {1.0, -1.0}) {
          const double ls = d % 2 == 1 ? s : 1.0;
          const double e = std::max((v - s * w).cwiseAbs().maxCoeff(), std::abs(dec.lambdas[i] - ls * r.decomp.lambdas[j]));
          if (e < best) {
            best = e;
            arg = j;
          }
        }
      }
      if (arg < used.size()) used[arg] = true;
      worst_pair = std::max(worst_pair, best);
    }
    std::mt19937_64 gen(500 + k);
    int hits = 0;
    for (int s = 0; s < 100; ++s) {
      IterationReport it = power_iterate(t, random_unit_vector(n, gen));
      if (!it.converged) continue;
      for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd v = dec.basis.row(i).transpose();
        if (std::min((it.limit - v).norm(), (it.limit + v).norm()) < 1e-6) {
          ++hits;
          break;
        }
      }
    }
    worst_hits = std::min(worst_hits, hits);
  }
  o.require(worst_pair < 1e-6, "term error " + sci(worst_pair));
  o.require(worst_rec < 1e-6, "reconstruction error " + sci(worst_rec));
  o.require(worst_hits >= 99, "only " + std::to_string(worst_hits) + "/100 starts converged to a basis vector");
  if (o.ok)
    o.detail = "max term error " + sci(worst_pair) + ", reconstruction " + sci(worst_rec) +
               ", min starts " + std::to_string(worst_hits) + "/100";
  return o;
}

Outcome vanishing() {
  Outcome o;
  double worst = 0.0;
  for (int n = 1; n <= 5; ++n)
    for (int d = 2; d <= 5; ++d)
      for (int s = 0; s < 5; ++s) {
        RandomOdecoOptions opts;
        opts.allow_negative_even = s % 2 == 1;
        SymTensor t = random_odeco(n, d, 100 * n + 10 * d + s, opts).second;
        worst = std::max(worst, residual(to_ucoords(t)));
        corpus().push_back(t);
        // One entry class nudged off the variety.
        if (n >= 2 && d >= 3) {
          std::vector<double> e = t.entries();
          e[(7 * s + 1) % e.size()] += 0.05;
          corpus().emplace_back(n, d, e);
        }
      }
  o.require(worst < 1e-10, "odeco residual " + sci(worst));
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int large = 0;
  for (int k = 0; k < 100; ++k) {
    std::vector<double> e(MultiIndexSet(3, 3).size());
    for (auto& x : e) x = u(gen);
    SymTensor t(3, 3, e);
    if (residual(to_ucoords(t)) > 1e-3) ++large;
    corpus().push_back(t);
  }
  o.require(large >= 95, std::to_string(large) + "/100 random tensors above 1e-3");
  if (o.ok) o.detail = "max odeco residual " + sci(worst) + "; " + std::to_string(large) + "/100 random above 1e-3";
  return o;
}

Outcome generator_counts() {
  Outcome o;
  const std::vector<std::tuple<int, int, std::size_t>> rows{{3, 3, 6},  {3, 4, 27}, {3, 5, 75},
                                                            {4, 3, 20}, {4, 4, 126}, {5, 3, 50}};
  std::string got;
  for (const auto& [n, d, expect] : rows) {
    const std::size_t c = independent_count(n, d);
    got += (got.empty() ? "" : ", ") + std::to_string(c);
    o.require(c == expect, "(" + std::to_string(n) + "," + std::to_string(d) + ") gave " + std::to_string(c));
  }
  if (o.ok) o.detail = got;
  return o;
}

Outcome jacobian() {
  Outcome o;
  std::string got;
  for (const auto& [n, d] : std::vector<std::pair<int, int>>{{3, 3}, {3, 4}, {4, 3}, {4, 4}, {5, 3}}) {
    const JacobianRank r = jacobian_fermat_rank(n, d);
    got += (got.empty() ? "" : ", ") + std::to_string(r.rank);
    o.require(r.rank == r.expected, "rank " + std::to_string(r.rank) + " vs " + std::to_string(r.expected));
  }
  o.require(jacobian_fermat_rank(3, 3).rank == 4, "rank at (3,3)");
  if (o.ok) o.detail = "ranks " + got;
  return o;
}

Outcome groebner() {
  Outcome o;
  for (int d = 3; d <= 9; ++d) {
    o.require(gb2::buchberger_verify(d).is_groebner, "not a Groebner basis at d=" + std::to_string(d));
    o.require(gb2::squarefree_initial_check(d), "initial term not squarefree at d=" + std::to_string(d));
    if (d >= 4) {
      const auto c = gb2::dimension_certificate(d);
      o.require(c.four_subsets_hit && c.three_subset_free, "dimension certificate at d=" + std::to_string(d));
    }
  }
  if (o.ok) o.detail = "d = 3..9 verified";
  return o;
}

Outcome contraction_equivalence() {
  Outcome o;
  int members = 0, agree = 0;
  for (const SymTensor& t : corpus()) {
    const double f = frobenius_norm(t);
    const bool a = residual(to_ucoords(t)) < kMembershipTol;
    const bool b = contract_last(t).defect < kMembershipTol * f * f;
    members += a;
    agree += a == b;
  }
  const int total = static_cast<int>(corpus().size());
  o.require(total > 0, "empty corpus");
  o.require(agree == total, std::to_string(total - agree) + " disagreements");
  if (o.ok) o.detail = std::to_string(total) + " tensors (" + std::to_string(members) + " on the variety) agree";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "eigenvector counts", 10, eigen_counts},
      {2, "Fermat cubic eigenvectors", 0, fermat_cubic},
      {3, "x1^4 + 2 x2^4 eigenvectors", 0, quartic_in_four},
      {4, "n=2 oracle equivalence", 0, oracle_agreement},
      {5, "power-method recovery", 60, power_method},
      {6, "vanishing of the quadrics", 0, vanishing},
      {7, "independent quadric counts", 120, generator_counts},
      {8, "Jacobian rank at the Fermat point", 0, jacobian},
      {9, "n=2 Groebner verification", 120, groebner},
      {10, "residual vs contraction defect", 0, contraction_equivalence},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && secs > c.limit_s) {
      o.ok = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.limit_s)) + " s limit)";
    }
    failed += !o.ok;
    std::printf("%s criterion %d: %s: %s [%.2f s]\n", o.ok ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
