#include <gtest/gtest.h>

#include "tto/errors.hpp"
#include "tto/io.hpp"

using namespace tto;
using tto::io::json;

namespace {

void expect_near(cplx a, cplx b, double tol) { EXPECT_LT(std::abs(a - b), tol) << a << " vs " << b; }

const char* kSpec = R"({
  "theta": {"domain": "half_plane", "zeros": [{"re": 0, "im": 1, "mult": 2}, {"re": 1, "im": 2}]},
  "alpha": {"domain": "half_plane", "zeros": [{"re": 0, "im": 1, "mult": 1}]},
  "symbol": {"terms": [{"coeff": [2, 0], "inner": [{"ref": "theta", "conj": true}],
                        "rational": {"num": [[1, 0]], "den": [[0, 1], [1, 0]]}}]}
})";

}  // namespace

TEST(Io, InnerRoundTrip) {
  InnerFunction t(Domain::disc, {{cplx(0.3, -0.2), 2}, {0.0, 1}}, std::polar(1.0, 0.4));
  InnerFunction back = io::inner_from_json(io::to_json(t));
  EXPECT_EQ(back.domain(), Domain::disc);
  EXPECT_TRUE(same_zeros(back, t));
  expect_near(back.phase(), t.phase(), 1e-15);
}

TEST(Io, RationalRoundTripAscending) {
  json j = json::parse(R"({"num": [[1, 0], [0, 2]], "den": [[2, 0], [3, 0], [1, 0]]})");
  RationalFunction f = io::rational_from_json(j);
  cplx x(0.4, 0.9);
  expect_near(f(x), (1.0 + cplx(0, 2) * x) / (2.0 + 3.0 * x + x * x), 1e-13);
  RationalFunction back = io::rational_from_json(io::to_json(f));
  expect_near(back(x), f(x), 1e-13);
}

TEST(Io, SymbolRoundTrip) {
  InnerFunction t = InnerFunction::blaschke(cplx(1, 1), 2);
  Symbol g = Symbol::inner(t, true) * Symbol(RationalFunction::pole(cplx(0, -1), 1, 3.0)) + Symbol(2.0);
  Symbol back = io::symbol_from_json(io::to_json(g), {});
  for (double x : {-1.0, 0.5, 2.0}) expect_near(back.flatten()(x), g.flatten()(x), 1e-12);
}

TEST(Io, ProblemSpecResolvesReferences) {
  io::ProblemSpec spec = io::parse_problem(kSpec);
  EXPECT_EQ(spec.theta.degree(), 3);
  EXPECT_EQ(spec.alpha.degree(), 1);
  ASSERT_TRUE(spec.has_symbol);
  double x = 0.7;
  expect_near(spec.symbol.flatten()(x), 2.0 * std::conj(spec.theta(x)) / (x + kI), 1e-12);
}

TEST(Io, NamedSymbol) {
  io::ProblemSpec spec = io::parse_problem(R"({"theta": {"domain": "half_plane", "zeros": [{"re": 0, "im": 1}]},
    "symbol": {"named": "F4", "z_plus": [0.5, 1.5], "xi0": 0.25}})");
  EXPECT_TRUE(spec.has_symbol);
  EXPECT_FALSE(spec.symbol.is_zero());
}

TEST(Io, MalformedInputIsParseError) {
  EXPECT_THROW(io::parse_problem("{not json"), ParseError);
  EXPECT_THROW(io::parse_problem("[1, 2]"), ParseError);
  EXPECT_THROW(io::parse_problem(R"({"theta": {"domain": "sphere", "zeros": []}})"), ParseError);
  EXPECT_THROW(io::parse_problem(R"({"theta": {"domain": "half_plane", "zeros": [{"re": "a", "im": 1}]}})"),
               ParseError);
  EXPECT_THROW(io::parse_problem(R"({"tasks": "x"})"), ParseError);
}

TEST(Io, InvariantViolationIsMathError) {
  EXPECT_THROW(io::parse_problem(R"({"theta": {"domain": "half_plane", "zeros": [{"re": 0, "im": -1}]}})"),
               MathError);
  EXPECT_THROW(io::parse_problem(R"({"theta": {"domain": "disc", "zeros": [{"re": 2, "im": 0}]}})"), MathError);
  EXPECT_THROW(io::parse_problem(
                   R"({"theta": {"domain": "half_plane", "zeros": [{"re": 0, "im": 1}], "phase_re": 2, "phase_im": 0}})"),
               MathError);
}

TEST(Io, ReportIsDeterministicWithoutTiming) {
  VerifyOptions o;
  o.suite = "oracle";
  o.degree_max = 2;
  o.seed = 3;
  json a = io::to_json(run_verify(o), false);
  json b = io::to_json(run_verify(o), false);
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(a["schema"], "1");
  ASSERT_TRUE(a["tasks"].is_array());
  std::vector<std::string> ids;
  for (const auto& t : a["tasks"]) {
    EXPECT_FALSE(t.contains("elapsed"));
    ids.push_back(t["task_id"]);
  }
  EXPECT_TRUE(std::is_sorted(ids.begin(), ids.end()));
  EXPECT_EQ(io::to_csv(run_verify(o), false), io::to_csv(run_verify(o), false));
}

TEST(Io, CsvHeaderAndRows) {
  VerifyOptions o;
  o.suite = "transfer";
  o.tasks = {"transfer.isometry"};
  std::string csv = io::to_csv(run_verify(o));
  EXPECT_EQ(csv.rfind("task_id,status,kind,name,value\n", 0), 0u);
  EXPECT_NE(csv.find("transfer.isometry,pass,task"), std::string::npos);
  EXPECT_NE(csv.find(",tolerance,proj,"), std::string::npos);
}
