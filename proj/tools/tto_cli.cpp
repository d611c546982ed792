// Command-line front end: build operators from a JSON problem spec, compute kernels, transfer disc
// data to the half-plane, and run the verification suites.
//
// Exit codes: 0 success, 1 a verification task failed, 2 malformed input, 3 a mathematical
// precondition failed.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tto/errors.hpp"
#include "tto/io.hpp"
#include "tto/spectral.hpp"
#include "tto/transfer.hpp"
#include "tto/verify.hpp"

namespace {

using tto::io::json;

constexpr int kExitFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitMath = 3;

struct Options {
  std::string spec_path;
  std::string out_path;
  std::string format = "json";
  std::uint64_t seed = 7;
  int degree_max = 3;
  std::vector<std::string> tol_items;
  std::string suite = "all";
  bool no_timing = false;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw tto::ParseError("cannot read spec file '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void emit(const Options& o, const std::string& text) {
  if (o.out_path.empty() || o.out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out_path);
  if (!out) throw tto::ParseError("cannot write '" + o.out_path + "'");
  out << text;
}

void apply_tol(tto::Tolerances& tol, const std::string& name, double value) {
  if (!(value > 0)) throw tto::ParseError("tolerance " + name + " must be positive");
  if (!tol.set(name, value)) throw tto::ParseError("unknown tolerance '" + name + "'");
}

void apply_tol_items(const std::vector<std::string>& items, tto::Tolerances& tol) {
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw tto::ParseError("--tol expects NAME=VALUE, got '" + item + "'");
    double v = 0;
    try {
      size_t used = 0;
      v = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw tto::ParseError("--tol value is not a number: '" + item + "'");
    }
    apply_tol(tol, item.substr(0, eq), v);
  }
}

tto::Tolerances tolerances(const Options& o) {
  tto::Tolerances tol;
  apply_tol_items(o.tol_items, tol);
  return tol;
}

tto::io::ProblemSpec load_spec(const Options& o, const tto::Tolerances& tol) {
  if (o.spec_path.empty()) throw tto::ParseError("--spec is required");
  return tto::io::parse_problem(read_input(o.spec_path), tol);
}

std::string matrix_csv(const tto::CMat& m, const std::string& name) {
  std::ostringstream os;
  os.precision(17);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) os << name << "," << i << "," << j << "," << m(i, j).real() << "," << m(i, j).imag() << "\n";
  return os.str();
}

int cmd_matrix(const Options& o) {
  tto::Tolerances tol = tolerances(o);
  auto spec = load_spec(o, tol);
  tto::Symbol g = spec.has_symbol ? spec.symbol : tto::Symbol(1.0);
  tto::AttoOperator a = tto::build_A(g, spec.alpha, spec.theta, tol);
  const bool divides = tto::divides(spec.alpha, spec.theta, tol);
  if (o.format == "csv") {
    std::string text = "operator,row,col,re,im\n" + matrix_csv(a.matrix, "A");
    if (divides) text += matrix_csv(tto::build_B(g, spec.alpha, spec.theta, tol).matrix, "B");
    emit(o, text);
    return 0;
  }
  json out = {{"A", tto::io::to_json(a)}, {"alpha_divides_theta", divides}};
  if (divides) out["B"] = tto::io::to_json(tto::build_B(g, spec.alpha, spec.theta, tol));
  emit(o, out.dump(2) + "\n");
  return 0;
}

int cmd_kernel(const Options& o) {
  tto::Tolerances tol = tolerances(o);
  auto spec = load_spec(o, tol);
  if (!spec.has_symbol) throw tto::ParseError("kernel needs a symbol");
  tto::AttoOperator a = tto::build_A(spec.symbol, spec.alpha, spec.theta, tol);
  tto::KernelReport k = tto::numeric_kernel(a);
  if (spec.theta.domain() == tto::Domain::half_plane && tto::divides(spec.alpha, spec.theta, tol)) {
    try {
      k = tto::analytic_kernel(spec.symbol.flatten_bounded(spec.theta.domain(), tol), spec.alpha, spec.theta, tol);
    } catch (const tto::MathError& e) {
      if (e.kind() != tto::ErrorKind::NotAnalytic) throw;
    }
  }
  json out = tto::io::to_json(k);
  json witnesses;
  try {
    auto ws = tto::kernel_correspondence(a, tto::matrix_symbol(spec.symbol, spec.alpha, spec.theta), tol);
    witnesses = {{"status", "pass"}, {"count", ws.size()}};
  } catch (const tto::MathError& e) {
    witnesses = {{"status", "fail"}, {"error", e.what()}};
  }
  out["witnesses"] = witnesses;
  if (o.format == "csv") {
    std::ostringstream os;
    os << "name,value\ndimension," << k.dimension << "\n";
    if (k.prediction_applied)
      os << "predicted_dimension," << k.predicted_dimension << "\nprincipal_angle_residual," << k.principal_angle_residual
         << "\n";
    os << "witness_status," << witnesses["status"].get<std::string>() << "\n";
    emit(o, os.str());
    return 0;
  }
  emit(o, out.dump(2) + "\n");
  return 0;
}

int cmd_transfer(const Options& o) {
  tto::Tolerances tol = tolerances(o);
  auto spec = load_spec(o, tol);
  if (spec.theta.domain() != tto::Domain::disc || spec.alpha.domain() != tto::Domain::disc)
    throw tto::MathError(tto::ErrorKind::DomainMismatch, "transfer expects disc data");
  tto::Symbol g = spec.has_symbol ? spec.symbol : tto::Symbol(1.0);
  tto::CheckReport rep = tto::diagram_check(g, spec.alpha, spec.theta, tol);
  json out = {{"theta", tto::io::to_json(tto::transfer_inner(spec.theta, tol))},
              {"alpha", tto::io::to_json(tto::transfer_inner(spec.alpha, tol))},
              {"symbol", tto::io::to_json(tto::transfer_symbol(g, tol))},
              {"diagram", tto::io::to_json(rep)}};
  if (o.format == "csv") {
    std::ostringstream os;
    os.precision(17);
    os << "name,value\nstatus," << (rep.passed ? "pass" : "fail") << "\n";
    for (const auto& [name, v] : rep.residuals) os << name << "," << v << "\n";
    emit(o, os.str());
  } else {
    emit(o, out.dump(2) + "\n");
  }
  return rep.passed ? 0 : kExitFailed;
}

int cmd_verify(const Options& o, bool suite_given, bool seed_given, bool degree_given) {
  tto::VerifyOptions v;
  v.suite = o.suite;
  v.seed = o.seed;
  v.degree_max = o.degree_max;
  if (!o.spec_path.empty()) {
    auto spec = load_spec(o, tto::Tolerances{});
    if (spec.suite && !suite_given) v.suite = *spec.suite;
    if (spec.seed && !seed_given) v.seed = *spec.seed;
    if (spec.degree_max && !degree_given) v.degree_max = *spec.degree_max;
    for (const auto& [name, value] : spec.tol_overrides) apply_tol(v.tol, name, value);
    v.tasks = spec.tasks;
  }
  apply_tol_items(o.tol_items, v.tol);  // the command line wins over the file
  if (v.suite != "all" && std::find(tto::suite_names().begin(), tto::suite_names().end(), v.suite) == tto::suite_names().end())
    throw tto::ParseError("unknown suite '" + v.suite + "'");
  if (v.degree_max < 1) throw tto::ParseError("--degree-max must be at least 1");
  for (const auto& id : v.tasks)
    if (id.rfind(v.suite + ".", 0) != 0 && v.suite != "all")
      throw tto::ParseError("task '" + id + "' is not in suite '" + v.suite + "'");
  tto::VerificationReport r;
  try {
    r = tto::run_verify(v);
  } catch (const tto::MathError& e) {
    if (e.kind() == tto::ErrorKind::InvalidParams) throw tto::ParseError(e.what());
    throw;
  }
  emit(o, o.format == "csv" ? tto::io::to_csv(r, !o.no_timing) : tto::io::to_json(r, !o.no_timing).dump(2) + "\n");
  return r.passed() ? 0 : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated Toeplitz operators on model spaces: matrices, kernels, transfer and verification"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool spec_required) {
    auto* spec = sub->add_option("--spec", o.spec_path, "problem spec JSON file, - for stdin");
    if (spec_required) spec->required();
    sub->add_option("--out", o.out_path, "output file (default stdout)");
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--tol", o.tol_items, "tolerance override NAME=VALUE (repeatable)");
  };

  auto* matrix = app.add_subcommand("matrix", "matrices of A and, when alpha divides theta, B");
  common(matrix, true);
  auto* kernel = app.add_subcommand("kernel", "numeric and predicted kernel of A with witnesses");
  common(kernel, true);
  auto* transfer = app.add_subcommand("transfer", "transfer disc data to the half-plane and check the diagram");
  common(transfer, true);
  auto* verify = app.add_subcommand("verify", "run verification suites");
  common(verify, false);
  auto* suite_opt = verify->add_option("suite", o.suite, "suite name or all");
  auto* seed_opt = verify->add_option("--seed", o.seed, "random seed");
  auto* degree_opt = verify->add_option("--degree-max", o.degree_max, "largest inner-function degree");
  verify->add_flag("--no-timing", o.no_timing, "omit elapsed times so reports compare byte for byte");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*matrix) return cmd_matrix(o);
    if (*kernel) return cmd_kernel(o);
    if (*transfer) return cmd_transfer(o);
    return cmd_verify(o, suite_opt->count() > 0, seed_opt->count() > 0, degree_opt->count() > 0);
  } catch (const tto::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const tto::MathError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kExitMath;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMath;
  }
}
