#include "tto/io.hpp"

#include <cmath>
#include <sstream>

#include "tto/errors.hpp"

namespace tto::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw ParseError(what); }

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where + ": missing \"" + key + "\"");
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) bad(where + ": expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) bad(where + ": not finite");
  return v;
}

double number_or(const json& j, const char* key, double fallback, const std::string& where) {
  auto it = j.find(key);
  return it == j.end() ? fallback : number(*it, where + "." + key);
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where + ": expected an integer");
  return j.get<int>();
}

Domain domain_from(const json& j, const std::string& where) {
  if (!j.is_string()) bad(where + ": expected \"half_plane\" or \"disc\"");
  const auto s = j.get<std::string>();
  if (s == "half_plane") return Domain::half_plane;
  if (s == "disc") return Domain::disc;
  bad(where + ": unknown domain \"" + s + "\"");
}

std::vector<cplx> coefficient_list(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where + ": expected an array of [re, im] pairs");
  std::vector<cplx> out;
  for (size_t k = 0; k < j.size(); ++k) out.push_back(complex_from_json(j[k]));
  return out;
}

json matrix_json(const CMat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json space_json(const ModelSpace& s) {
  json basis = json::array();
  for (const auto& e : s.entries()) {
    if (e.monomial)
      basis.push_back({{"monomial", e.order - 1}});
    else
      basis.push_back({{"pole", to_json(e.pole)}, {"order", e.order}});
  }
  return {{"inner", to_json(s.theta())}, {"dimension", s.dim()}, {"basis", basis}, {"gram_condition", s.condition()}};
}

const char* status(const CheckReport& r) { return r.skipped ? "skip" : (r.passed ? "pass" : "fail"); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string number_text(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {number(j, "complex"), 0.0};
  if (!j.is_array() || j.size() != 2) bad("complex number: expected [re, im]");
  return {number(j[0], "complex re"), number(j[1], "complex im")};
}

json to_json(const InnerFunction& f) {
  json zeros = json::array();
  for (const auto& z : f.zeros())
    zeros.push_back({{"re", z.location.real()}, {"im", z.location.imag()}, {"mult", z.multiplicity}});
  return {{"domain", to_string(f.domain())},
          {"zeros", zeros},
          {"phase_re", f.phase().real()},
          {"phase_im", f.phase().imag()}};
}

InnerFunction inner_from_json(const json& j, const Tolerances& tol) {
  const std::string where = "inner function";
  Domain d = domain_from(field(j, "domain", where), where + ".domain");
  const json& zs = field(j, "zeros", where);
  if (!zs.is_array()) bad(where + ".zeros: expected an array");
  std::vector<BlaschkeZero> zeros;
  for (const auto& z : zs) {
    cplx at{number(field(z, "re", where + ".zeros"), "re"), number(field(z, "im", where + ".zeros"), "im")};
    int mult = z.contains("mult") ? integer(z["mult"], where + ".zeros.mult") : 1;
    zeros.push_back({at, mult});
  }
  cplx phase{number_or(j, "phase_re", 1.0, where), number_or(j, "phase_im", 0.0, where)};
  return InnerFunction(d, std::move(zeros), phase, tol);
}

json to_json(const RationalFunction& f) {
  const Polynomial num = f.numerator(), den = f.denominator();
  json n = json::array(), d = json::array();
  for (cplx c : num.coeffs()) n.push_back(to_json(c));
  for (cplx c : den.coeffs()) d.push_back(to_json(c));
  if (n.empty()) n.push_back(to_json(cplx{}));
  return {{"num", n}, {"den", d}};
}

RationalFunction rational_from_json(const json& j, const Tolerances& tol) {
  const std::string where = "rational";
  Polynomial num(coefficient_list(field(j, "num", where), where + ".num"));
  Polynomial den(j.contains("den") ? coefficient_list(j["den"], where + ".den") : std::vector<cplx>{1.0});
  return RationalFunction::from_coefficients(num, den, tol.zero);
}

json to_json(const Symbol& g) {
  json terms = json::array();
  for (const auto& t : g.terms()) {
    json inner = json::array();
    for (const auto& f : t.inner) {
      if (f.ref.empty())
        inner.push_back({{"inner", to_json(f.inner)}, {"conj", f.conjugated}});
      else
        inner.push_back({{"ref", f.ref}, {"conj", f.conjugated}});
    }
    terms.push_back({{"coeff", to_json(t.coeff)}, {"inner", inner}, {"rational", to_json(t.rational)}});
  }
  return {{"terms", terms}};
}

Symbol symbol_from_json(const json& j, const std::map<std::string, InnerFunction>& refs, const Tolerances& tol) {
  const std::string where = "symbol";
  if (j.is_number() || j.is_array()) return Symbol(complex_from_json(j));
  if (!j.is_object()) bad(where + ": expected an object");
  if (j.contains("num")) return Symbol(rational_from_json(j, tol));
  const json& ts = field(j, "terms", where);
  if (!ts.is_array()) bad(where + ".terms: expected an array");
  std::vector<SymbolTerm> terms;
  for (const auto& t : ts) {
    if (!t.is_object()) bad(where + ".terms: expected objects");
    SymbolTerm term;
    if (t.contains("coeff")) term.coeff = complex_from_json(t["coeff"]);
    if (t.contains("rational")) term.rational = rational_from_json(t["rational"], tol);
    if (t.contains("inner")) {
      if (!t["inner"].is_array()) bad(where + ".terms.inner: expected an array");
      for (const auto& f : t["inner"]) {
        if (!f.is_object()) bad(where + ".terms.inner: expected objects");
        bool conj = false;
        if (f.contains("conj")) {
          if (!f["conj"].is_boolean()) bad(where + ".terms.inner.conj: expected a boolean");
          conj = f["conj"].get<bool>();
        }
        if (f.contains("ref")) {
          if (!f["ref"].is_string()) bad(where + ".terms.inner.ref: expected a string");
          const auto name = f["ref"].get<std::string>();
          auto it = refs.find(name);
          if (it == refs.end()) bad(where + ": unknown inner function reference \"" + name + "\"");
          term.inner.push_back({it->second, conj, name});
        } else {
          term.inner.push_back({inner_from_json(field(f, "inner", where + ".terms.inner"), tol), conj, {}});
        }
      }
    }
    terms.push_back(std::move(term));
  }
  return Symbol(std::move(terms));
}

json to_json(const AttoOperator& a) {
  json codomain = space_json(*a.codomain);
  if (a.codomain_shift) codomain["shift"] = to_json(*a.codomain_shift);
  const char* kind = a.kind == OperatorKind::A ? "A" : a.kind == OperatorKind::B ? "B" : "other";
  return {{"kind", kind},
          {"matrix", matrix_json(a.matrix)},
          {"orthonormal_matrix", matrix_json(a.orthonormal())},
          {"frobenius", a.frobenius()},
          {"consistency", a.consistency},
          {"domain", space_json(*a.domain)},
          {"codomain", codomain}};
}

namespace {

Symbol named_symbol(const json& j, const InnerFunction& alpha, const InnerFunction& theta) {
  const std::string where = "symbol";
  if (!j["named"].is_string()) bad(where + ".named: expected a string");
  const auto name = j["named"].get<std::string>();
  RankOneParams p;
  if (j.contains("z_plus")) p.z_plus = complex_from_json(j["z_plus"]);
  p.xi0 = number_or(j, "xi0", 0.0, where);
  static const std::map<std::string, RankOneKind> rank_one = {
      {"F2a", RankOneKind::F2a}, {"F2b", RankOneKind::F2b}, {"F4", RankOneKind::F4}, {"F6", RankOneKind::F6}};
  if (auto it = rank_one.find(name); it != rank_one.end()) return rank_one_symbol(it->second, p, alpha, theta);
  if (name != "finite_rank") bad(where + ": unknown named symbol \"" + name + "\"");
  static const std::map<std::string, FiniteRankKind> kinds = {{"pole_alpha", FiniteRankKind::pole_alpha},
                                                              {"pole_theta", FiniteRankKind::pole_theta},
                                                              {"boundary", FiniteRankKind::boundary},
                                                              {"infinity", FiniteRankKind::infinity}};
  const json& k = field(j, "kind", where);
  if (!k.is_string() || !kinds.count(k.get<std::string>()))
    bad(where + ".kind: expected pole_alpha, pole_theta, boundary or infinity");
  int order = j.contains("order") ? integer(j["order"], where + ".order") : 1;
  return finite_rank_symbol(kinds.at(k.get<std::string>()), order, p, alpha, theta);
}

}  // namespace

ProblemSpec parse_problem(const std::string& text, const Tolerances& tol) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) bad("spec: expected a JSON object");
  ProblemSpec spec;
  try {
    if (j.contains("theta")) spec.theta = inner_from_json(j["theta"], tol);
    spec.alpha = j.contains("alpha") ? inner_from_json(j["alpha"], tol) : spec.theta;
    if (j.contains("symbol")) {
      const json& s = j["symbol"];
      spec.symbol = s.is_object() && s.contains("named")
                        ? named_symbol(s, spec.alpha, spec.theta)
                        : symbol_from_json(s, {{"theta", spec.theta}, {"alpha", spec.alpha}}, tol);
      spec.has_symbol = true;
    }
    if (j.contains("tasks")) {
      if (!j["tasks"].is_array()) bad("spec.tasks: expected an array of strings");
      for (const auto& t : j["tasks"]) {
        if (!t.is_string()) bad("spec.tasks: expected an array of strings");
        spec.tasks.push_back(t.get<std::string>());
      }
    }
    if (j.contains("suite")) {
      if (!j["suite"].is_string()) bad("spec.suite: expected a string");
      spec.suite = j["suite"].get<std::string>();
    }
    if (j.contains("seed")) {
      if (!j["seed"].is_number_unsigned()) bad("spec.seed: expected a non-negative integer");
      spec.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("degree_max")) spec.degree_max = integer(j["degree_max"], "spec.degree_max");
    if (j.contains("tol")) {
      if (!j["tol"].is_object()) bad("spec.tol: expected an object");
      for (const auto& [name, v] : j["tol"].items()) spec.tol_overrides[name] = number(v, "spec.tol." + name);
    }
  } catch (const json::exception& e) {
    bad(std::string("spec: ") + e.what());
  }
  return spec;
}

json to_json(const CheckReport& r, std::optional<double> elapsed) {
  json residuals = json::object(), dimensions = json::object();
  for (const auto& [k, v] : r.residuals) residuals[k] = std::isfinite(v) ? json(v) : json(nullptr);
  for (const auto& [k, v] : r.dimensions) dimensions[k] = v;
  json out = {{"task_id", r.id},
              {"status", status(r)},
              {"residuals", residuals},
              {"dimensions", dimensions},
              {"notes", r.notes}};
  if (elapsed) out["elapsed"] = *elapsed;
  return out;
}

json to_json(const KernelReport& k) {
  json basis = json::array();
  for (const auto& e : k.null_basis) basis.push_back(to_json(e.rational));
  json out = {{"dimension", k.dimension}, {"null_basis", basis}};
  if (k.prediction_applied) {
    out["prediction"] = {{"status", "applied"},
                         {"gamma", to_json(*k.predicted_gamma)},
                         {"dimension", k.predicted_dimension},
                         {"principal_angle_residual", k.principal_angle_residual}};
  } else {
    out["prediction"] = {{"status", "skip"}};
  }
  return out;
}

json to_json(const VerificationReport& r, bool with_elapsed) {
  json tols = json::object();
  for (const auto& [k, v] : r.tol.items()) tols[k] = v;
  json tasks = json::array();
  for (const auto& t : r.tasks) tasks.push_back(to_json(t.report, with_elapsed ? std::optional(t.elapsed) : std::nullopt));
  return {{"schema", "1"},
          {"suite", r.suite},
          {"seed", r.seed},
          {"degree_max", r.degree_max},
          {"tolerances", tols},
          {"summary",
           {{"passed", r.count(true, false)}, {"failed", r.count(false, false)}, {"skipped", r.count(false, true)}}},
          {"tasks", tasks}};
}

std::string to_csv(const VerificationReport& r, bool with_elapsed) {
  std::ostringstream os;
  os << "task_id,status,kind,name,value\n";
  for (const auto& [k, v] : r.tol.items()) os << ",,tolerance," << k << "," << number_text(v) << "\n";
  for (const auto& t : r.tasks) {
    const std::string head = csv_field(t.report.id) + "," + status(t.report) + ",";
    os << head << "task,,\n";
    if (with_elapsed) os << head << "elapsed,," << number_text(t.elapsed) << "\n";
    for (const auto& [k, v] : t.report.residuals) os << head << "residual," << csv_field(k) << "," << number_text(v) << "\n";
    for (const auto& [k, v] : t.report.dimensions) os << head << "dimension," << csv_field(k) << "," << v << "\n";
    for (const auto& n : t.report.notes) os << head << "note,," << csv_field(n) << "\n";
  }
  return os.str();
}

}  // namespace tto::io
