#include "odeco/groebner_n2.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace odeco::gb2 {

int TermOrder2::weight(const Monomial& m) const {
  int w = 0;
  for (std::size_t j = 0; j < m.size(); ++j) w += m[j] * (d_ - static_cast<int>(j));
  return w;
}

std::strong_ordering TermOrder2::compare(const Monomial& a, const Monomial& b) const {
  if (auto c = weight(a) <=> weight(b); c != 0) return c;
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] != b[j]) return a[j] <=> b[j];
  return std::strong_ordering::equal;
}

namespace {

struct Descending {
  TermOrder2 order;
  bool operator()(const Monomial& a, const Monomial& b) const { return order.greater(a, b); }
};

using TermMap = std::map<Monomial, mpq_class, Descending>;

TermMap to_map(int d, const std::vector<Term>& terms) {
  TermMap m(Descending{TermOrder2(d)});
  for (const auto& t : terms) {
    auto [it, inserted] = m.try_emplace(t.mono, t.coeff);
    if (!inserted) it->second += t.coeff;
    if (sgn(it->second) == 0) m.erase(it);
  }
  return m;
}

std::vector<Term> from_map(const TermMap& m) {
  std::vector<Term> out;
  out.reserve(m.size());
  for (const auto& [mono, c] : m) out.push_back({c, mono});
  return out;
}

Monomial quotient(const Monomial& a, const Monomial& b) {
  Monomial q(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) q[j] = a[j] - b[j];
  return q;
}

void check_degree(int d) {
  if (d < 2) throw std::invalid_argument("groebner_n2: need d >= 2");
}

}  // namespace

BinPoly::BinPoly(int d, std::vector<Term> terms) : d_(d) {
  for (const auto& t : terms)
    if (static_cast<int>(t.mono.size()) != d + 1) throw std::invalid_argument("BinPoly: monomial must have d+1 exponents");
  terms_ = from_map(to_map(d, terms));
}

BinPoly BinPoly::monic() const {
  if (is_zero()) return *this;
  BinPoly out = *this;
  const mpq_class lc = leading().coeff;
  for (auto& t : out.terms_) t.coeff /= lc;
  return out;
}

BinPoly BinPoly::operator-(const BinPoly& other) const {
  std::vector<Term> all = terms_;
  for (const auto& t : other.terms_) all.push_back({-t.coeff, t.mono});
  return BinPoly(d_, std::move(all));
}

BinPoly BinPoly::times(const mpq_class& c, const Monomial& m) const {
  std::vector<Term> all;
  all.reserve(terms_.size());
  for (const auto& t : terms_) all.push_back({c * t.coeff, multiply(t.mono, m)});
  return BinPoly(d_, std::move(all));
}

bool operator==(const BinPoly& a, const BinPoly& b) {
  if (a.d_ != b.d_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].coeff != b.terms_[i].coeff || a.terms_[i].mono != b.terms_[i].mono) return false;
  return true;
}

Monomial variable(int d, int j) {
  Monomial m(d + 1, 0);
  m.at(j) = 1;
  return m;
}

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial m(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) m[j] = a[j] + b[j];
  return m;
}

bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] > b[j]) return false;
  return true;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial m(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) m[j] = std::max(a[j], b[j]);
  return m;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] > 0 && b[j] > 0) return false;
  return true;
}

std::vector<BinPoly> generators_n2(int d) {
  check_degree(d);
  // u_{(a, d-a)} is variable slot d - a.
  auto u = [d](int first, int second) {
    if (first < 0 || second < 0 || first + second != d) throw std::logic_error("generators_n2: bad index");
    return variable(d, second);
  };
  std::vector<BinPoly> out;
  std::set<std::vector<std::pair<Monomial, mpq_class>>> seen;
  for (int y1 = 0; y1 <= d - 2; ++y1) {
    const int y2 = d - 1 - y1;
    for (int v1 = 1; v1 <= d - 1; ++v1) {
      const int v2 = d - 1 - v1;
      // u_{y+e1} u_{v+e1} - u_{y+2e1-e2} u_{v+e2} + u_{y+e2} u_{v+e2} - u_{y+e1} u_{v-e1+2e2}
      BinPoly f(d, {{1, multiply(u(y1 + 1, y2), u(v1 + 1, v2))},
                    {-1, multiply(u(y1 + 2, y2 - 1), u(v1, v2 + 1))},
                    {1, multiply(u(y1, y2 + 1), u(v1, v2 + 1))},
                    {-1, multiply(u(y1 + 1, y2), u(v1 - 1, v2 + 2))}});
      if (f.is_zero()) continue;
      f = f.monic();
      std::vector<std::pair<Monomial, mpq_class>> key;
      for (const auto& t : f.terms()) key.emplace_back(t.mono, t.coeff);
      if (seen.insert(key).second) out.push_back(std::move(f));
    }
  }
  return out;
}

BinPoly from_quadric(const Quadric& q, int d) {
  std::vector<Term> terms;
  for (const auto& t : q.terms) {
    if (t.a.size() != 2 || t.b.size() != 2) throw std::invalid_argument("from_quadric: quadric must have n = 2");
    terms.push_back({t.coeff, multiply(variable(d, t.a[1]), variable(d, t.b[1]))});
  }
  return BinPoly(d, std::move(terms));
}

BinPoly reduce(const BinPoly& p, const std::vector<BinPoly>& basis, ReductionTrace* trace) {
  const int d = p.d();
  TermMap work = to_map(d, p.terms());
  std::vector<Term> remainder;
  auto note_height = [trace](const mpq_class& c) {
    if (!trace) return;
    const mpz_class num = abs(c.get_num());
    if (num > trace->max_coeff_height) trace->max_coeff_height = num;
    if (c.get_den() > trace->max_coeff_height) trace->max_coeff_height = c.get_den();
  };
  for (const auto& [m, c] : work) note_height(c);

  while (!work.empty()) {
    auto lead = work.begin();
    if (trace) trace->leading_monomials.push_back(lead->first);
    const BinPoly* divisor = nullptr;
    for (const auto& g : basis) {
      if (!g.is_zero() && divides(g.leading().mono, lead->first)) {
        divisor = &g;
        break;
      }
    }
    if (!divisor) {
      remainder.push_back({lead->second, lead->first});
      work.erase(lead);
      continue;
    }
    const mpq_class factor = lead->second / divisor->leading().coeff;
    const Monomial shift = quotient(lead->first, divisor->leading().mono);
    work.erase(lead);
    // The leading term cancels exactly; subtract the tail.
    for (std::size_t k = 1; k < divisor->terms().size(); ++k) {
      const Term& t = divisor->terms()[k];
      auto [it, inserted] = work.try_emplace(multiply(t.mono, shift), 0);
      it->second -= factor * t.coeff;
      if (sgn(it->second) == 0)
        work.erase(it);
      else
        note_height(it->second);
    }
  }
  return BinPoly(d, std::move(remainder));
}

BinPoly s_polynomial(const BinPoly& f, const BinPoly& g) {
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("s_polynomial: zero input");
  const Monomial l = lcm(f.leading().mono, g.leading().mono);
  const BinPoly a = f.times(1 / mpq_class(f.leading().coeff), quotient(l, f.leading().mono));
  const BinPoly b = g.times(1 / mpq_class(g.leading().coeff), quotient(l, g.leading().mono));
  return a - b;
}

BuchbergerReport buchberger_verify(int d, const BuchbergerOptions& opts) {
  check_degree(d);
  if (d > opts.max_degree) throw std::invalid_argument("buchberger_verify: d exceeds max_degree");
  const TermOrder2 order(d);
  const std::vector<BinPoly> gens = generators_n2(d);
  const std::size_t k = gens.size();

  BuchbergerReport report;
  report.d = d;
  report.generator_count = k;

  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) pairs.push_back({i, j, lcm(gens[i].leading().mono, gens[j].leading().mono)});
  std::stable_sort(pairs.begin(), pairs.end(),
                   [&](const Pair& a, const Pair& b) { return order.compare(a.lcm, b.lcm) < 0; });
  report.spairs_total = pairs.size();

  std::vector<std::vector<bool>> done(k, std::vector<bool>(k, false));
  auto mark = [&](std::size_t i, std::size_t j) { done[i][j] = done[j][i] = true; };

  for (const Pair& p : pairs) {
    const Monomial& li = gens[p.i].leading().mono;
    const Monomial& lj = gens[p.j].leading().mono;
    if (coprime(li, lj)) {
      ++report.spairs_skipped_coprime;
      mark(p.i, p.j);
      continue;
    }
    if (opts.chain_criterion) {
      bool covered = false;
      for (std::size_t m = 0; m < k && !covered; ++m) {
        if (m == p.i || m == p.j) continue;
        covered = done[p.i][m] && done[p.j][m] && divides(gens[m].leading().mono, p.lcm);
      }
      if (covered) {
        ++report.spairs_skipped_chain;
        mark(p.i, p.j);
        continue;
      }
    }
    ReductionTrace trace;
    const BinPoly r = reduce(s_polynomial(gens[p.i], gens[p.j]), gens, &trace);
    if (!r.is_zero()) ++report.spairs_nonzero;
    report.max_coeff_height = std::max(report.max_coeff_height, trace.max_coeff_height.get_ui());
    mark(p.i, p.j);
  }
  report.is_groebner = report.spairs_nonzero == 0;
  return report;
}

bool leading_term_squarefree(const BinPoly& p) {
  if (p.is_zero()) return true;
  const Monomial& m = p.leading().mono;
  return std::all_of(m.begin(), m.end(), [](int e) { return e <= 1; });
}

bool squarefree_initial_check(int d) {
  if (d < 3) throw std::invalid_argument("squarefree_initial_check: need d >= 3");
  const auto gens = generators_n2(d);
  return std::all_of(gens.begin(), gens.end(), leading_term_squarefree);
}

DimensionCertificate dimension_certificate(int d) {
  if (d < 3) throw std::invalid_argument("dimension_certificate: need d >= 3");
  const auto gens = generators_n2(d);
  std::vector<std::vector<int>> supports;
  for (const auto& g : gens) {
    std::vector<int> s;
    for (int j = 0; j <= d; ++j)
      if (g.leading().mono[j] > 0) s.push_back(j);
    supports.push_back(std::move(s));
  }
  auto inside = [](const std::vector<int>& support, const std::vector<int>& set) {
    return std::includes(set.begin(), set.end(), support.begin(), support.end());
  };
  auto hit = [&](const std::vector<int>& set) {
    return std::any_of(supports.begin(), supports.end(), [&](const auto& s) { return inside(s, set); });
  };

  DimensionCertificate cert;
  cert.four_subsets_hit = true;
  const int vars = d + 1;
  for (int a = 0; a < vars && cert.four_subsets_hit; ++a)
    for (int b = a + 1; b < vars && cert.four_subsets_hit; ++b)
      for (int c = b + 1; c < vars && cert.four_subsets_hit; ++c)
        for (int e = c + 1; e < vars && cert.four_subsets_hit; ++e) cert.four_subsets_hit = hit({a, b, c, e});
  // u_{2(d-2)}, u_{1(d-1)}, u_{0d}
  cert.three_subset_free = !hit({d - 2, d - 1, d});
  return cert;
}

nlohmann::json report_to_json(const BuchbergerReport& r, bool squarefree, const DimensionCertificate& cert) {
  return {{"d", r.d},
          {"generator_count", r.generator_count},
          {"spairs_total", r.spairs_total},
          {"spairs_skipped", r.spairs_skipped()},
          {"spairs_skipped_coprime", r.spairs_skipped_coprime},
          {"spairs_skipped_chain", r.spairs_skipped_chain},
          {"is_groebner", r.is_groebner},
          {"max_coeff_height", r.max_coeff_height},
          {"squarefree", squarefree},
          {"dim_certificate", {{"four_subsets_hit", cert.four_subsets_hit}, {"three_subset_free", cert.three_subset_free}}}};
}

}  // namespace odeco::gb2
