#include "odeco/odeco_equations.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>
#include <tuple>

namespace odeco {

namespace {

void check_shape(int n, int d) {
  if (n < 1 || d < 2) throw InvalidDimension("odeco equations: need n >= 1 and d >= 2");
}

using TermKey = std::vector<std::tuple<std::size_t, std::size_t, int>>;

// Sorted by monomial, first coefficient positive. Negating a quadric yields the same key.
TermKey canonical_key(Quadric& q) {
  for (auto& t : q.terms)
    if (multi_index_rank(t.a) > multi_index_rank(t.b)) std::swap(t.a, t.b);
  std::sort(q.terms.begin(), q.terms.end(), [](const QuadricTerm& x, const QuadricTerm& y) {
    return std::pair(multi_index_rank(x.a), multi_index_rank(x.b)) < std::pair(multi_index_rank(y.a), multi_index_rank(y.b));
  });
  if (!q.terms.empty() && q.terms.front().coeff < 0) {
    for (auto& t : q.terms) t.coeff = -t.coeff;
    // Negation swaps the roles of {y,v} and {w,z}.
    std::swap(q.provenance[0], q.provenance[2]);
    std::swap(q.provenance[1], q.provenance[3]);
  }
  TermKey key;
  for (const auto& t : q.terms) key.emplace_back(multi_index_rank(t.a), multi_index_rank(t.b), t.coeff);
  return key;
}

class Deduplicator {
 public:
  void add(Quadric q) {
    if (q.terms.empty()) return;
    if (seen_.insert(canonical_key(q)).second) out_.push_back(std::move(q));
  }
  std::vector<Quadric> take() { return std::move(out_); }

 private:
  std::set<TermKey> seen_;
  std::vector<Quadric> out_;
};

}  // namespace

Quadric lift_binomial(const MultiIndex& y, const MultiIndex& v, const MultiIndex& w, const MultiIndex& z) {
  const int n = static_cast<int>(y.size());
  Quadric q;
  q.provenance = {y, v, w, z};
  std::map<std::pair<std::size_t, std::size_t>, std::pair<int, std::pair<MultiIndex, MultiIndex>>> acc;
  auto add = [&](const MultiIndex& a, const MultiIndex& b, int coeff) {
    auto ra = multi_index_rank(a);
    auto rb = multi_index_rank(b);
    const bool swap = ra > rb;
    auto& slot = acc[swap ? std::pair(rb, ra) : std::pair(ra, rb)];
    slot.first += coeff;
    slot.second = swap ? std::pair(b, a) : std::pair(a, b);
  };
  for (int s = 0; s < n; ++s) {
    const MultiIndex es = unit_index(n, s);
    add(y + es, v + es, +1);
    add(w + es, z + es, -1);
  }
  for (auto& [key, slot] : acc)
    if (slot.first != 0) q.terms.push_back({slot.first, slot.second.first, slot.second.second});
  canonical_key(q);
  return q;
}

std::vector<Quadric> generate_all_quadrics(int n, int d) {
  check_shape(n, d);
  const MultiIndexSet half(n, d - 1);
  const std::size_t m = half.size();
  // Pairs {y, v} grouped by y + v.
  std::map<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>> groups;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) groups[multi_index_rank(half[i] + half[j])].emplace_back(i, j);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) pairs.emplace_back(i, j);

  Deduplicator dedup;
  for (const auto& [y, v] : pairs) {
    const auto& group = groups[multi_index_rank(half[y] + half[v])];
    for (const auto& [w, z] : group) {
      if (std::pair(w, z) <= std::pair(y, v)) continue;
      dedup.add(lift_binomial(half[y], half[v], half[w], half[z]));
    }
  }
  return dedup.take();
}

std::vector<Quadric> generate_spanning_subset(int n, int d) {
  check_shape(n, d);
  const MultiIndexSet half(n, d - 1);
  Deduplicator dedup;
  for (const MultiIndex& y : half) {
    for (const MultiIndex& v : half) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (i == j || y[j] < 1 || v[i] < 1) continue;
          const MultiIndex shift = unit_index(n, i) - unit_index(n, j);
          dedup.add(lift_binomial(y, v, y + shift, v - shift));
        }
      }
    }
  }
  return dedup.take();
}

QuadricSystem::QuadricSystem(int n, int d, std::vector<Quadric> quadrics)
    : n_(n), d_(d), quadrics_(std::move(quadrics)) {
  compiled_.reserve(quadrics_.size());
  for (const auto& q : quadrics_) {
    std::vector<CompiledTerm> c;
    for (const auto& t : q.terms) c.push_back({t.coeff, multi_index_rank(t.a), multi_index_rank(t.b)});
    compiled_.push_back(std::move(c));
  }
}

QuadricSystem::QuadricSystem(int n, int d) : QuadricSystem(n, d, generate_all_quadrics(n, d)) {}

std::vector<double> QuadricSystem::evaluate(const UCoords& u) const {
  if (u.n != n_ || u.d != d_) throw InvalidDimension("QuadricSystem: coordinate shape mismatch");
  std::vector<double> out;
  out.reserve(compiled_.size());
  for (const auto& q : compiled_) {
    double acc = 0.0;
    for (const auto& t : q) acc += t.coeff * u.values[t.a] * u.values[t.b];
    out.push_back(acc);
  }
  return out;
}

double QuadricSystem::residual(const UCoords& u) const {
  double norm2 = 0.0;
  for (double x : u.values) norm2 += x * x;
  if (norm2 == 0.0) return 0.0;
  double worst = 0.0;
  for (double v : evaluate(u)) worst = std::max(worst, std::abs(v));
  return worst / norm2;
}

double residual(const UCoords& u) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const QuadricSystem>> cache;
  std::shared_ptr<const QuadricSystem> sys;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{u.n, u.d}];
    if (!slot) slot = std::make_shared<const QuadricSystem>(u.n, u.d);
    sys = slot;
  }
  return sys->residual(u);
}

IntMatrix coefficient_matrix(const std::vector<Quadric>& quadrics, int n, int d) {
  check_shape(n, d);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> column;
  for (const auto& q : quadrics)
    for (const auto& t : q.terms) column.emplace(std::pair(multi_index_rank(t.a), multi_index_rank(t.b)), 0);
  std::size_t next = 0;
  for (auto& [key, idx] : column) idx = next++;

  IntMatrix m(quadrics.size(), column.size());
  for (std::size_t r = 0; r < quadrics.size(); ++r)
    for (const auto& t : quadrics[r].terms)
      m(r, column.at({multi_index_rank(t.a), multi_index_rank(t.b)})) += t.coeff;
  return m;
}

std::size_t independent_count(int n, int d) { return exact_integer_rank(coefficient_matrix(generate_all_quadrics(n, d), n, d)); }

IntMatrix jacobian_at_fermat(const std::vector<Quadric>& quadrics, int n, int d) {
  check_shape(n, d);
  const MultiIndexSet full(n, d);
  std::vector<mpz_class> point(full.size(), 0);
  mpz_class dfact = 1;
  for (int k = 2; k <= d; ++k) dfact *= k;
  for (int i = 0; i < n; ++i) point[multi_index_rank(unit_index(n, i, d))] = dfact;

  IntMatrix jac(quadrics.size(), full.size());
  for (std::size_t r = 0; r < quadrics.size(); ++r) {
    for (const auto& t : quadrics[r].terms) {
      const std::size_t a = multi_index_rank(t.a);
      const std::size_t b = multi_index_rank(t.b);
      // d(u_a u_b)/du_a = u_b and d(u_a u_b)/du_b = u_a (2 u_a when a == b).
      jac(r, a) += t.coeff * point[b];
      jac(r, b) += t.coeff * point[a];
    }
  }
  return jac;
}

JacobianRank jacobian_fermat_rank(int n, int d) {
  if (n < 2 || d < 3) throw InvalidDimension("jacobian_fermat_rank: need n >= 2 and d >= 3");
  JacobianRank out;
  out.rank = exact_integer_rank(jacobian_at_fermat(generate_all_quadrics(n, d), n, d));
  out.expected = binomial(n + d - 1, d) - binomial(n + 1, 2);
  return out;
}

std::size_t dimension_expected(int n) {
  if (n < 1) throw InvalidDimension("dimension_expected: n must be at least 1");
  return static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 1) / 2;
}

std::string quadric_to_text(const Quadric& q) {
  std::string s;
  for (std::size_t k = 0; k < q.terms.size(); ++k) {
    const auto& t = q.terms[k];
    const int mag = std::abs(t.coeff);
    if (k == 0)
      s += t.coeff < 0 ? "-" : "";
    else
      s += t.coeff < 0 ? " - " : " + ";
    if (mag != 1) s += std::to_string(mag) + "*";
    if (t.a == t.b)
      s += "u_" + index_label(t.a) + "^2";
    else
      s += "u_" + index_label(t.a) + "*u_" + index_label(t.b);
  }
  return s;
}

nlohmann::json quadric_to_json(const Quadric& q) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : q.terms)
    terms.push_back({{"coeff", t.coeff}, {"monomial", {"u_" + index_label(t.a), "u_" + index_label(t.b)}}});
  return {{"terms", std::move(terms)},
          {"text", quadric_to_text(q)},
          {"provenance",
           {{"y", q.provenance[0]}, {"v", q.provenance[1]}, {"w", q.provenance[2]}, {"z", q.provenance[3]}}}};
}

}  // namespace odeco
