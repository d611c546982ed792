#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tto/atto.hpp"
#include "tto/spectral.hpp"
#include "tto/verify.hpp"

namespace tto::io {

using json = nlohmann::json;

// Complex numbers are [re, im] pairs.
json to_json(cplx z);
cplx complex_from_json(const json& j);

// {"domain", "zeros": [{"re", "im", "mult"}], "phase_re", "phase_im"}
json to_json(const InnerFunction& f);
InnerFunction inner_from_json(const json& j, const Tolerances& tol = {});

// {"num": [...], "den": [...]}, ascending coefficients.
json to_json(const RationalFunction& f);
RationalFunction rational_from_json(const json& j, const Tolerances& tol = {});

// {"terms": [{"coeff", "inner": [{"ref", "conj"} | {"inner", "conj"}], "rational"}]}. A bare
// rational object is read as a one-term symbol. refs resolves "ref" names.
json to_json(const Symbol& g);
Symbol symbol_from_json(const json& j, const std::map<std::string, InnerFunction>& refs,
                        const Tolerances& tol = {});

// {"matrix": rows of [re, im], "domain": space, "codomain": space}; a space lists its inner
// function and basis entries, and the codomain of B carries its shift.
json to_json(const AttoOperator& a);

// Problem description read by the matrix, kernel and transfer commands.
//   theta, alpha: inner functions (alpha defaults to theta)
//   symbol: symbol object, or {"named": "F2a" | "F2b" | "F4" | "F6" | "finite_rank", ...}
//   tasks: task ids, honored by verify
struct ProblemSpec {
  InnerFunction theta;
  InnerFunction alpha;
  Symbol symbol;
  bool has_symbol = false;
  std::vector<std::string> tasks;
  // verify settings carried in the file; command-line flags take precedence
  std::optional<std::string> suite;
  std::optional<std::uint64_t> seed;
  std::optional<int> degree_max;
  std::map<std::string, double> tol_overrides;
};

// Throws ParseError for malformed JSON or a wrong shape, MathError for values that violate a
// mathematical invariant (a zero outside the domain, a non-unimodular phase, ...).
ProblemSpec parse_problem(const std::string& text, const Tolerances& tol = {});

json to_json(const CheckReport& r, std::optional<double> elapsed = std::nullopt);
json to_json(const KernelReport& k);
// The elapsed field is the only part that varies between runs with the same options.
json to_json(const VerificationReport& r, bool with_elapsed = true);
// Long format, header task_id,status,kind,name,value. Tolerance rows come first with an empty
// task id; each task then has a "task" row followed by elapsed, residual, dimension and note rows.
std::string to_csv(const VerificationReport& r, bool with_elapsed = true);

}  // namespace tto::io
