#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(TTO_CLI_PATH) + " " + args + " 2>/dev/null";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  RunResult r;
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe.release());
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class SpecFile {
 public:
  SpecFile(const std::string& name, const std::string& text)
      : path_(std::filesystem::temp_directory_path() / ("tto_cli_test_" + name + ".json")) {
    std::ofstream(path_) << text;
  }
  ~SpecFile() { std::filesystem::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

const char* kDoubleZero = R"({"theta": {"domain": "half_plane", "zeros": [{"re": 0, "im": 1, "mult": 2}]},
  "symbol": {"terms": [{"inner": [{"inner": {"domain": "half_plane", "zeros": [{"re": 0, "im": 1}]}}]}]}})";

}  // namespace

TEST(Cli, MatrixCommand) {
  SpecFile f("matrix", kDoubleZero);
  RunResult r = run_cli("matrix --spec " + f.path());
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"A\""), std::string::npos);
  EXPECT_NE(r.out.find("\"alpha_divides_theta\": true"), std::string::npos);
  RunResult csv = run_cli("matrix --format csv --spec " + f.path());
  EXPECT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.rfind("operator,row,col,re,im\n", 0), 0u);
}

TEST(Cli, KernelCommand) {
  SpecFile f("kernel", kDoubleZero);
  RunResult r = run_cli("kernel --spec " + f.path());
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"dimension\": 1"), std::string::npos);
}

TEST(Cli, TransferCommand) {
  SpecFile disc("transfer", R"({"theta": {"domain": "disc", "zeros": [{"re": 0.5, "im": 0.1, "mult": 2}]}})");
  EXPECT_EQ(run_cli("transfer --spec " + disc.path()).code, 0);
  SpecFile half("transfer_half", kDoubleZero);
  EXPECT_EQ(run_cli("transfer --spec " + half.path()).code, 3);
}

TEST(Cli, ParseErrorsExitTwo) {
  SpecFile bad("bad", "{\"theta\": ");
  EXPECT_EQ(run_cli("matrix --spec " + bad.path()).code, 2);
  EXPECT_EQ(run_cli("matrix --spec /nonexistent/spec.json").code, 2);
  EXPECT_EQ(run_cli("matrix").code, 2);
  EXPECT_EQ(run_cli("verify nosuchsuite").code, 2);
  EXPECT_EQ(run_cli("verify oracle --tol nosuch=1").code, 2);
  EXPECT_EQ(run_cli("verify oracle --format xml").code, 2);
}

TEST(Cli, PreconditionFailureExitsThree) {
  SpecFile outside("outside", R"({"theta": {"domain": "half_plane", "zeros": [{"re": 0, "im": -1}]}})");
  EXPECT_EQ(run_cli("matrix --spec " + outside.path()).code, 3);
}

TEST(Cli, VerifyPassesAndFails) {
  EXPECT_EQ(run_cli("verify transfer --degree-max 2 --no-timing").code, 0);
  // A projection tolerance below rounding must report failures.
  EXPECT_EQ(run_cli("verify projections --degree-max 2 --tol proj=1e-18").code, 1);
}

TEST(Cli, VerifyReadsSpecSettings) {
  SpecFile f("verify", R"({"suite": "transfer", "tasks": ["transfer.isometry"], "seed": 5})");
  RunResult r = run_cli("verify --no-timing --spec " + f.path());
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("transfer.isometry"), std::string::npos);
  EXPECT_EQ(r.out.find("transfer.diagram"), std::string::npos);
  SpecFile g("verify_bad", R"({"suite": "transfer", "tasks": ["transfer.nosuch"]})");
  EXPECT_EQ(run_cli("verify --spec " + g.path()).code, 2);
}

TEST(Cli, StdinSpec) {
  SpecFile f("stdin", kDoubleZero);
  RunResult r = run_cli("matrix --spec - < " + f.path());
  EXPECT_EQ(r.code, 0);
}
