#include <doctest.h>

#include <map>
#include <random>
#include <sstream>

#include "odeco/odeco_equations.hpp"
#include "oracles.hpp"

using namespace odeco;

namespace {

// Direct evaluation of the lifted quadric from its provenance.
double provenance_value(const Quadric& q, const UCoords& u) {
  const auto& [y, v, w, z] = q.provenance;
  const MultiIndexSet full(u.n, u.d);
  double s = 0.0;
  for (int k = 0; k < u.n; ++k) {
    const MultiIndex e = unit_index(u.n, k);
    s += u.values[full.rank(y + e)] * u.values[full.rank(v + e)] - u.values[full.rank(w + e)] * u.values[full.rank(z + e)];
  }
  return s;
}

UCoords random_u(int n, int d, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> g(-1.0, 1.0);
  UCoords u{n, d, std::vector<double>(MultiIndexSet(n, d).size())};
  for (auto& x : u.values) x = g(gen);
  return u;
}

// "u_300*u_120 - u_210^2 + ..." as a map from sorted index-label pairs to coefficients.
std::map<std::pair<std::string, std::string>, int> parse_quadric(const std::string& text) {
  std::map<std::pair<std::string, std::string>, int> out;
  std::istringstream in("+ " + text);
  std::string sign, term;
  while (in >> sign >> term) {
    const int c = sign == "-" ? -1 : 1;
    std::string a, b;
    if (term.size() > 2 && term.substr(term.size() - 2) == "^2") {
      a = b = term.substr(2, term.size() - 4);
    } else {
      const auto star = term.find('*');
      a = term.substr(2, star - 2);
      b = term.substr(star + 3);
    }
    if (a > b) std::swap(a, b);
    out[{a, b}] += c;
  }
  return out;
}

std::map<std::pair<std::string, std::string>, int> negated(std::map<std::pair<std::string, std::string>, int> m) {
  for (auto& [k, v] : m) v = -v;
  return m;
}

Eigen::MatrixXd to_double(const IntMatrix& m) {
  Eigen::MatrixXd f(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) f(r, c) = m(r, c).get_d();
  return f;
}

}  // namespace

TEST_CASE("generate_all_quadrics examples") {
  const auto qs = generate_all_quadrics(3, 3);
  bool found = false;
  for (const auto& q : qs)
    found = found || quadric_to_text(q) == "u_300*u_120 - u_210^2 + u_210*u_030 + u_201*u_021 - u_120^2 - u_111^2";
  CHECK(found);
  for (int n = 1; n <= 4; ++n) CHECK(generate_all_quadrics(n, 2).empty());
  for (int d = 2; d <= 6; ++d) CHECK(generate_all_quadrics(1, d).empty());
  CHECK_THROWS_AS(generate_all_quadrics(0, 3), InvalidDimension);
}

TEST_CASE("the six quadrics for n = d = 3") {
  const std::vector<std::string> expect{
      "u_300*u_120 - u_210^2 + u_210*u_030 - u_120^2 + u_201*u_021 - u_111^2",
      "u_300*u_111 - u_210*u_201 + u_210*u_021 - u_120*u_111 + u_201*u_012 - u_111*u_102",
      "u_300*u_102 - u_201^2 + u_210*u_012 - u_111^2 + u_201*u_003 - u_102^2",
      "u_210*u_102 - u_201*u_111 + u_120*u_012 - u_111*u_021 + u_111*u_003 - u_102*u_012",
      "u_201*u_120 - u_210*u_111 + u_111*u_030 - u_120*u_021 + u_102*u_021 - u_111*u_012",
      "u_120*u_102 - u_111^2 + u_030*u_012 - u_021^2 + u_021*u_003 - u_012^2"};
  const auto qs = generate_all_quadrics(3, 3);
  REQUIRE(qs.size() == 6);
  for (const auto& e : expect) {
    const auto want = parse_quadric(e);
    bool found = false;
    for (const auto& q : qs) {
      const auto got = parse_quadric(quadric_to_text(q));
      found = found || got == want || got == negated(want);
    }
    CHECK_MESSAGE(found, e);
  }
}

TEST_CASE("quadric structure") {
  std::mt19937_64 gen(1);
  for (int n = 2; n <= 4; ++n)
    for (int d = 3; d <= 4; ++d) {
      const UCoords u = random_u(n, d, gen);
      const QuadricSystem sys(n, d);
      const auto values = sys.evaluate(u);
      for (std::size_t i = 0; i < sys.quadrics().size(); ++i) {
        const Quadric& q = sys.quadrics()[i];
        const auto& [y, v, w, z] = q.provenance;
        CHECK(y + v == w + z);
        for (const auto& m : q.provenance) CHECK(degree(m) == d - 1);
        CHECK(q.terms.front().coeff > 0);
        CHECK(q.terms.size() <= static_cast<std::size_t>(2 * n));
        for (const auto& t : q.terms) CHECK(multi_index_rank(t.a) <= multi_index_rank(t.b));
        CHECK(values[i] == doctest::Approx(provenance_value(q, u)).epsilon(1e-12));
      }
    }
}

TEST_CASE("spanning subset") {
  SUBCASE("n = 2 gives the binary generators") {
    for (int d = 2; d <= 7; ++d) {
      const auto sub = generate_spanning_subset(2, d);
      CHECK(sub.size() == (d - 1) * (d - 2) / 2);
      for (const auto& q : sub) {
        // Every quadric comes from a shift with (i, j) = (1, 2) up to sign.
        const auto& [y, v, w, z] = q.provenance;
        CHECK(((w == y + MultiIndex{1, -1} && z == v - MultiIndex{1, -1}) ||
               (y == w + MultiIndex{1, -1} && v == z - MultiIndex{1, -1}) ||
               (w == y - MultiIndex{1, -1} && z == v + MultiIndex{1, -1}) ||
               (y == w - MultiIndex{1, -1} && v == z + MultiIndex{1, -1})));
      }
    }
  }
  SUBCASE("same span as all quadrics") {
    for (int n = 1; n <= 4; ++n)
      for (int d = 2; d <= 4; ++d) {
        CAPTURE(n);
        CAPTURE(d);
        const auto all = generate_all_quadrics(n, d);
        const auto sub = generate_spanning_subset(n, d);
        const std::size_t r_all = exact_integer_rank(coefficient_matrix(all, n, d));
        CHECK(exact_integer_rank(coefficient_matrix(sub, n, d)) == r_all);
        // Stacking both does not raise the rank.
        auto both = all;
        both.insert(both.end(), sub.begin(), sub.end());
        CHECK(exact_integer_rank(coefficient_matrix(both, n, d)) == r_all);
      }
  }
  CHECK(generate_spanning_subset(1, 4).empty());
}

TEST_CASE("residual") {
  SUBCASE("vanishes on odeco tensors") {
    for (int n = 1; n <= 5; ++n)
      for (int d = 2; d <= 5; ++d)
        for (int seed = 0; seed < 20; ++seed) {
          RandomOdecoOptions opts;
          opts.allow_negative_even = seed % 2 == 1;
          CHECK(residual(to_ucoords(random_odeco(n, d, 1000 * n + 100 * d + seed, opts).second)) < 1e-10);
        }
  }
  SUBCASE("is large on dense random tensors") {
    std::mt19937_64 gen(2);
    int large = 0;
    for (int k = 0; k < 100; ++k)
      if (residual(random_u(3, 3, gen)) > 1e-3) ++large;
    CHECK(large >= 95);
  }
  SUBCASE("trivial cases") {
    std::mt19937_64 gen(3);
    CHECK(residual(random_u(3, 2, gen)) == 0.0);
    CHECK(residual(UCoords{3, 3, std::vector<double>(10, 0.0)}) == 0.0);
  }
  SUBCASE("scale invariant") {
    std::mt19937_64 gen(4);
    UCoords u = random_u(3, 4, gen);
    const double r = residual(u);
    for (auto& x : u.values) x *= 1000.0;
    CHECK(residual(u) == doctest::Approx(r).epsilon(1e-12));
  }
}

TEST_CASE("residual and contraction defect agree") {
  // Corpus: odeco tensors, dense random tensors, and odeco tensors with one
  // perturbed entry class.
  std::mt19937_64 gen(9);
  std::normal_distribution<double> g;
  int cases = 0;
  for (int n = 2; n <= 4; ++n)
    for (int d = 3; d <= 4; ++d)
      for (int seed = 0; seed < 5; ++seed) {
        auto [dec, t] = random_odeco(n, d, 500 + 10 * n + d + seed);
        std::vector<double> dense(t.size());
        for (auto& x : dense) x = g(gen);
        std::vector<double> bumped = t.entries();
        bumped[gen() % bumped.size()] += 0.05;
        for (const SymTensor& s : {t, SymTensor(n, d, dense), SymTensor(n, d, bumped)}) {
          const double f = frobenius_norm(s);
          const bool a = residual(to_ucoords(s)) < kMembershipTol;
          const bool b = contract_last(s).defect < kMembershipTol * f * f;
          CHECK(a == b);
          ++cases;
        }
      }
  CHECK(cases == 90);
}

TEST_CASE("independent_count") {
  const std::vector<std::tuple<int, int, std::size_t>> rows{{3, 3, 6},  {3, 4, 27}, {3, 5, 75},
                                                            {4, 3, 20}, {4, 4, 126}, {5, 3, 50}};
  for (const auto& [n, d, expect] : rows) {
    CHECK(independent_count(n, d) == expect);
    const std::uint64_t m = binomial(n + d - 2, n - 1);
    CHECK(expect == binomial(m + 1, 2) - binomial(n + 2 * d - 3, n - 1));
  }
  for (int n = 1; n <= 4; ++n) CHECK(independent_count(n, 2) == 0);
  // Floating-point cross-check on a small case.
  CHECK(oracle::float_rank(to_double(coefficient_matrix(generate_all_quadrics(3, 4), 3, 4))) == 27);
}

TEST_CASE("Jacobian at the Fermat point") {
  const std::vector<std::tuple<int, int, std::size_t>> rows{{3, 3, 4}, {3, 4, 9}, {4, 3, 10}};
  for (const auto& [n, d, expect] : rows) {
    JacobianRank r = jacobian_fermat_rank(n, d);
    CHECK(r.rank == expect);
    CHECK(r.expected == expect);
    // Same rank from the spanning subset.
    CHECK(exact_integer_rank(jacobian_at_fermat(generate_spanning_subset(n, d), n, d)) == expect);
  }
  SUBCASE("matches a finite-difference Jacobian") {
    const int n = 3, d = 3;
    const QuadricSystem sys(n, d);
    const IntMatrix jac = jacobian_at_fermat(sys.quadrics(), n, d);
    UCoords p{n, d, std::vector<double>(10, 0.0)};
    for (int i = 0; i < n; ++i) p.values[multi_index_rank(unit_index(n, i, d))] = 6.0;
    for (std::size_t c = 0; c < p.values.size(); ++c) {
      UCoords a = p, b = p;
      a.values[c] += 1e-3;
      b.values[c] -= 1e-3;
      const auto fa = sys.evaluate(a), fb = sys.evaluate(b);
      for (std::size_t r = 0; r < fa.size(); ++r) CHECK((fa[r] - fb[r]) / 2e-3 == doctest::Approx(jac(r, c).get_d()));
    }
  }
  CHECK_THROWS_AS(jacobian_fermat_rank(1, 3), InvalidDimension);
  CHECK_THROWS_AS(jacobian_fermat_rank(3, 2), InvalidDimension);
}

TEST_CASE("dimension_expected") {
  CHECK(dimension_expected(1) == 1);
  CHECK(dimension_expected(2) == 3);
  CHECK(dimension_expected(3) == 6);
}

TEST_CASE("export") {
  const Quadric q = generate_all_quadrics(3, 3).front();
  const auto j = quadric_to_json(q);
  CHECK(j["text"] == quadric_to_text(q));
  CHECK(j["terms"].size() == q.terms.size());
  CHECK(j["terms"][0]["monomial"][0].get<std::string>().rfind("u_", 0) == 0);
  CHECK(j["provenance"]["y"].size() == 3);
}
