#include "odeco/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "odeco/eigen_enum.hpp"
#include "odeco/groebner_n2.hpp"
#include "odeco/odeco_equations.hpp"
#include "odeco/power_method.hpp"
#include "odeco/symtensor.hpp"
#include "odeco/tensor_io.hpp"

namespace odeco {

namespace {

struct Args {
  int n = 0;
  int d = 0;
  int l = 0;
  std::uint64_t seed = 0;
  double lmin = 0.5;
  double lmax = 2.0;
  double tol = 1e-8;
  std::string input;
  std::string output;
  std::string decomp_out;
  bool subset = false;
  bool count_only = false;
  bool chain = false;
  std::optional<int> n_opt;
  std::optional<int> d_opt;
};

int do_synth(const Args& a, std::ostream& out) {
  RandomOdecoOptions opts;
  opts.lambda_low = a.lmin;
  opts.lambda_high = a.lmax;
  auto [dec, t] = random_odeco(a.n, a.d, a.seed, opts);
  write_json_file(a.output, tensor_to_json(t));
  if (!a.decomp_out.empty()) write_json_file(a.decomp_out, decomp_to_json(dec, a.d));
  out << "wrote " << a.output << '\n';
  return kExitPass;
}

int do_decompose(const Args& a, std::ostream& out) {
  const SymTensor t = tensor_from_json(read_json_file(a.input));
  DecomposeOptions opts;
  opts.tol = a.tol;
  opts.seed = a.seed;
  const DecompositionReport r = decompose(t, opts);
  write_json_file(a.output, decomp_to_json(r.decomp, t.d()));
  out << "terms " << r.decomp.terms() << "\nresidual " << r.residual_norm << "\nrestarts " << r.restarts_used << '\n';
  return r.converged ? kExitPass : kExitFail;
}

int do_eigen(const Args& a, std::ostream& out) {
  const auto [dec, d] = decomp_from_json(read_json_file(a.input));
  if (a.n_opt && *a.n_opt != dec.n()) throw FormatError("field 'n' disagrees with --n");
  if (a.d_opt && *a.d_opt != d) throw FormatError("field 'd' disagrees with --d");
  const EigenEnumeration e = enumerate_eigenpairs(dec, dec.n(), d);
  write_json_file(a.output, eigen_report_to_json(e, dec.n(), d));
  out << "isolated " << e.isolated.size() << "\nexpected " << e.expected_count << "\nnullspace " << e.nullspace_basis.size()
      << '\n';
  return e.isolated.size() == e.expected_count ? kExitPass : kExitFail;
}

int do_check(const Args& a, std::ostream& out) {
  const SymTensor t = tensor_from_json(read_json_file(a.input));
  const double res = residual(to_ucoords(t));
  const double norm2 = std::pow(frobenius_norm(t), 2);
  const Contraction c = contract_last(t);
  const double defect = norm2 > 0.0 ? c.defect / norm2 : 0.0;
  out << "residual " << res << "\ndefect " << defect << '\n';
  return res < a.tol && defect < a.tol ? kExitPass : kExitFail;
}

int do_equations(const Args& a, std::ostream& out) {
  const std::vector<Quadric> qs = a.subset ? generate_spanning_subset(a.n, a.d) : generate_all_quadrics(a.n, a.d);
  if (a.count_only) {
    out << exact_integer_rank(coefficient_matrix(qs, a.n, a.d)) << '\n';
    return kExitPass;
  }
  if (a.output.empty()) {
    for (const auto& q : qs) out << quadric_to_text(q) << '\n';
    return kExitPass;
  }
  nlohmann::json list = nlohmann::json::array();
  for (const auto& q : qs) list.push_back(quadric_to_json(q));
  write_json_file(a.output, {{"n", a.n}, {"d", a.d}, {"subset", a.subset}, {"quadrics", std::move(list)}});
  out << "quadrics " << qs.size() << '\n';
  return kExitPass;
}

int do_jacobian(const Args& a, std::ostream& out) {
  const JacobianRank r = jacobian_fermat_rank(a.n, a.d);
  out << "rank " << r.rank << "\nexpected " << r.expected << '\n';
  return r.rank == r.expected ? kExitPass : kExitFail;
}

int do_groebner2(const Args& a, std::ostream& out) {
  gb2::BuchbergerOptions opts;
  opts.chain_criterion = a.chain;
  const gb2::BuchbergerReport r = gb2::buchberger_verify(a.d, opts);
  out << gb2::report_to_json(r, gb2::squarefree_initial_check(a.d), gb2::dimension_certificate(a.d)).dump(2) << '\n';
  return r.is_groebner ? kExitPass : kExitFail;
}

int do_eigencount(const Args& a, std::ostream& out) {
  out << eigen_count(a.d, a.l) << '\n';
  return kExitPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Odeco tensors: synthesis, power method, eigenvectors, defining equations", "odeco"};
  app.require_subcommand(1);
  Args a;

  auto* synth = app.add_subcommand("synth", "random odeco tensor");
  synth->add_option("--n", a.n)->required()->check(CLI::PositiveNumber);
  synth->add_option("--d", a.d)->required()->check(CLI::Range(2, 64));
  synth->add_option("--seed", a.seed)->required();
  synth->add_option("--lmin", a.lmin);
  synth->add_option("--lmax", a.lmax);
  synth->add_option("-o", a.output)->required();
  synth->add_option("--decomp", a.decomp_out);

  auto* dec = app.add_subcommand("decompose", "tensor power method with deflation");
  dec->add_option("-i", a.input)->required();
  dec->add_option("-o", a.output)->required();
  dec->add_option("--tol", a.tol)->check(CLI::PositiveNumber);
  dec->add_option("--seed", a.seed);

  auto* eig = app.add_subcommand("eigen", "closed-form eigenvectors of a decomposition");
  eig->add_option("-i", a.input)->required();
  eig->add_option("--n", a.n_opt);
  eig->add_option("--d", a.d_opt);
  eig->add_option("-o", a.output)->required();

  auto* check = app.add_subcommand("check", "membership residual and contraction defect");
  check->add_option("-i", a.input)->required();
  check->add_option("--tol", a.tol)->check(CLI::PositiveNumber);

  auto* eqs = app.add_subcommand("equations", "quadrics vanishing on odeco tensors");
  eqs->add_option("--n", a.n)->required()->check(CLI::PositiveNumber);
  eqs->add_option("--d", a.d)->required()->check(CLI::Range(2, 64));
  eqs->add_flag("--subset", a.subset);
  eqs->add_flag("--count-only", a.count_only);
  eqs->add_option("-o", a.output);

  auto* jac = app.add_subcommand("jacobian", "Jacobian rank at the Fermat point");
  jac->add_option("--n", a.n)->required()->check(CLI::Range(2, 64));
  jac->add_option("--d", a.d)->required()->check(CLI::Range(3, 64));

  auto* gb = app.add_subcommand("groebner2", "Buchberger check of the binary quadrics");
  gb->add_option("--d", a.d)->required()->check(CLI::Range(3, 16));
  gb->add_flag("--chain", a.chain);

  auto* cnt = app.add_subcommand("eigencount", "number of isolated eigenvector classes");
  cnt->add_option("--d", a.d)->required()->check(CLI::Range(3, 64));
  cnt->add_option("--l", a.l)->required()->check(CLI::Range(1, 64));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    if (*synth) return do_synth(a, out);
    if (*dec) return do_decompose(a, out);
    if (*eig) return do_eigen(a, out);
    if (*check) return do_check(a, out);
    if (*eqs) return do_equations(a, out);
    if (*jac) return do_jacobian(a, out);
    if (*gb) return do_groebner2(a, out);
    if (*cnt) return do_eigencount(a, out);
  } catch (const FormatError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFail;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace odeco
