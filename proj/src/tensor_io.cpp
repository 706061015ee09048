#include "odeco/tensor_io.hpp"

#include <fstream>

namespace odeco {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object()) throw FormatError("expected a JSON object holding field '" + std::string(name) + "'");
  auto it = j.find(name);
  if (it == j.end()) throw FormatError("missing field '" + std::string(name) + "'");
  return *it;
}

int positive_int(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_integer() || v.get<long long>() < 1)
    throw FormatError("field '" + std::string(name) + "' must be a positive integer");
  return v.get<int>();
}

double number(const json& v, const std::string& name) {
  if (!v.is_number()) throw FormatError("field '" + name + "' must be a number");
  return v.get<double>();
}

}  // namespace

json tensor_to_json(const SymTensor& t, Coords coords) {
  json entries = json::array();
  const double scale = coords == Coords::U ? factorial(t.d()) : 1.0;
  for (std::size_t pos = 0; pos < t.size(); ++pos)
    entries.push_back({{"index", t.indices()[pos]}, {"value", scale * t[pos]}});
  return {{"n", t.n()}, {"d", t.d()}, {"coords", coords == Coords::U ? "u" : "t"}, {"entries", std::move(entries)}};
}

SymTensor tensor_from_json(const json& j) {
  const int n = positive_int(j, "n");
  const int d = positive_int(j, "d");
  Coords coords = Coords::T;
  if (j.contains("coords")) {
    const json& c = j["coords"];
    if (c == "u")
      coords = Coords::U;
    else if (c != "t")
      throw FormatError("field 'coords' must be \"t\" or \"u\"");
  }
  const json& entries = field(j, "entries");
  if (!entries.is_array()) throw FormatError("field 'entries' must be an array");

  SymTensor shape(n, d);
  std::vector<double> values(shape.size(), 0.0);
  std::vector<bool> seen(shape.size(), false);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const std::string where = "entries[" + std::to_string(k) + "]";
    const json& e = entries[k];
    if (!e.is_object() || !e.contains("index")) throw FormatError("missing field '" + where + ".index'");
    if (!e.contains("value")) throw FormatError("missing field '" + where + ".value'");
    const json& idx = e["index"];
    if (!idx.is_array() || idx.size() != static_cast<std::size_t>(n))
      throw FormatError("field '" + where + ".index' must be an array of n integers");
    MultiIndex m;
    for (const json& x : idx) {
      if (!x.is_number_integer() || x.get<long long>() < 0)
        throw FormatError("field '" + where + ".index' must hold non-negative integers");
      m.push_back(x.get<int>());
    }
    if (degree(m) != d) throw FormatError("field '" + where + ".index' must sum to d");
    const std::size_t pos = multi_index_rank(m);
    if (seen[pos]) throw FormatError("field '" + where + ".index' repeats an earlier index");
    seen[pos] = true;
    values[pos] = number(e["value"], where + ".value");
  }
  SymTensor t(n, d, std::move(values));
  if (coords == Coords::U) t *= 1.0 / factorial(d);
  return t;
}

json decomp_to_json(const OrthoDecomp& dec, int d) {
  json basis = json::array();
  for (Eigen::Index r = 0; r < dec.basis.rows(); ++r)
    for (Eigen::Index c = 0; c < dec.basis.cols(); ++c) basis.push_back(dec.basis(r, c));
  return {{"n", dec.n()}, {"d", d}, {"lambdas", dec.lambdas}, {"basis", std::move(basis)}};
}

std::pair<OrthoDecomp, int> decomp_from_json(const json& j) {
  const int n = positive_int(j, "n");
  const int d = positive_int(j, "d");
  const json& lambdas = field(j, "lambdas");
  const json& basis = field(j, "basis");
  if (!lambdas.is_array()) throw FormatError("field 'lambdas' must be an array");
  if (!basis.is_array()) throw FormatError("field 'basis' must be an array");
  const std::size_t k = lambdas.size();
  if (basis.size() != k * static_cast<std::size_t>(n))
    throw FormatError("field 'basis' must hold lambdas.size() * n values");
  OrthoDecomp dec;
  dec.basis.resize(static_cast<Eigen::Index>(k), n);
  for (std::size_t i = 0; i < k; ++i) dec.lambdas.push_back(number(lambdas[i], "lambdas[" + std::to_string(i) + "]"));
  for (std::size_t i = 0; i < basis.size(); ++i)
    dec.basis(static_cast<Eigen::Index>(i / n), static_cast<Eigen::Index>(i % n)) =
        number(basis[i], "basis[" + std::to_string(i) + "]");
  return {std::move(dec), d};
}

json eigen_report_to_json(const EigenEnumeration& e, int n, int d) {
  json pairs = json::array();
  for (const auto& p : e.isolated) {
    std::vector<double> re, im;
    for (Eigen::Index i = 0; i < p.w.size(); ++i) {
      re.push_back(p.w(i).real());
      im.push_back(p.w(i).imag());
    }
    pairs.push_back({{"re", re},
                     {"im", im},
                     {"lambda_re", p.lambda.real()},
                     {"lambda_im", p.lambda.imag()},
                     {"residual", p.residual},
                     {"support", p.support},
                     {"eta_exponents", p.eta_exponents}});
  }
  json null = json::array();
  for (const auto& v : e.nullspace_basis) null.push_back(std::vector<double>(v.data(), v.data() + v.size()));
  return {{"n", n}, {"d", d}, {"expected_count", e.expected_count}, {"eigenpairs", std::move(pairs)}, {"nullspace_basis", std::move(null)}};
}

namespace {

std::vector<double> number_array(const json& v, const std::string& name, std::size_t len) {
  if (!v.is_array() || v.size() != len) throw FormatError("field '" + name + "' must be an array of " + std::to_string(len) + " numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < len; ++i) out.push_back(number(v[i], name + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<int> int_array(const json& v, const std::string& name) {
  if (!v.is_array()) throw FormatError("field '" + name + "' must be an array");
  std::vector<int> out;
  for (const json& x : v) {
    if (!x.is_number_integer()) throw FormatError("field '" + name + "' must hold integers");
    out.push_back(x.get<int>());
  }
  return out;
}

const json& member(const json& j, const std::string& where, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw FormatError("missing field '" + where + "." + name + "'");
  return j[name];
}

}  // namespace

EigenEnumeration eigen_report_from_json(const json& j) {
  const int n = positive_int(j, "n");
  positive_int(j, "d");
  EigenEnumeration e;
  const json& count = field(j, "expected_count");
  if (!count.is_number_unsigned()) throw FormatError("field 'expected_count' must be a non-negative integer");
  e.expected_count = count.get<std::uint64_t>();
  const json& pairs = field(j, "eigenpairs");
  if (!pairs.is_array()) throw FormatError("field 'eigenpairs' must be an array");
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const std::string where = "eigenpairs[" + std::to_string(k) + "]";
    const json& p = pairs[k];
    const auto re = number_array(member(p, where, "re"), where + ".re", n);
    const auto im = number_array(member(p, where, "im"), where + ".im", n);
    EigenPair out;
    out.w.resize(n);
    for (int i = 0; i < n; ++i) out.w(i) = {re[i], im[i]};
    out.lambda = {number(member(p, where, "lambda_re"), where + ".lambda_re"),
                  number(member(p, where, "lambda_im"), where + ".lambda_im")};
    out.residual = number(member(p, where, "residual"), where + ".residual");
    out.support = int_array(member(p, where, "support"), where + ".support");
    out.eta_exponents = int_array(member(p, where, "eta_exponents"), where + ".eta_exponents");
    e.isolated.push_back(std::move(out));
  }
  const json& null = field(j, "nullspace_basis");
  if (!null.is_array()) throw FormatError("field 'nullspace_basis' must be an array");
  for (std::size_t k = 0; k < null.size(); ++k) {
    const auto v = number_array(null[k], "nullspace_basis[" + std::to_string(k) + "]", n);
    e.nullspace_basis.push_back(Eigen::Map<const Eigen::VectorXd>(v.data(), n));
  }
  return e;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

}  // namespace odeco
