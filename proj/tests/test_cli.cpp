#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(CASORATI_CLI_PATH) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), p) != nullptr) out += buf.data();
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

fs::path scratch(const std::string& name, const std::string& content) {
  const fs::path dir = fs::temp_directory_path() / "casorati_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << content;
  return p;
}

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kWorked = std::string(CASORATI_SAMPLES_DIR) + "/worked_case.json";

}  // namespace

TEST(CliValidate, WellFormedFile) {
  const auto r = run("validate " + kWorked);
  EXPECT_EQ(r.status, 0) << r.out;
}

TEST(CliValidate, AsymmetricZetaNamesComponent) {
  const auto p = scratch("asym.json", R"({"n":3,"q":1,"ambient":null,"zeta":[[[1,0,0],[0,1,0.1],[0,0,2]]]})");
  const auto r = run("validate " + p.string());
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("alpha=1, i=2, j=3"), std::string::npos) << r.out;
}

TEST(CliValidate, MalformedJson) {
  const auto p = scratch("bad.json", "{\"n\": 3,");
  EXPECT_EQ(run("validate " + p.string()).status, 2);
  EXPECT_EQ(run("validate /nonexistent/file.json").status, 2);
}

TEST(CliValidate, CurvatureBlock) {
  // n = 2, q = 1, zeta = I: T_1221 = T_2112 = 1, T_1212 = T_2121 = -1.
  const std::string good =
      R"({"n":2,"q":1,"zeta":[[[1,0],[0,1]]],"T":[[[[0,0],[0,0]],[[0,-1],[1,0]]],[[[0,1],[-1,0]],[[0,0],[0,0]]]]})";
  EXPECT_EQ(run("validate " + scratch("t_good.json", good).string()).status, 0);
  const std::string broken =
      R"({"n":2,"q":1,"zeta":[[[1,0],[0,1]]],"T":[[[[0,0],[0,0]],[[0,-1],[1,0]]],[[[0,1],[-2,0]],[[0,0],[0,0]]]]})";
  const auto r = run("validate " + scratch("t_bad.json", broken).string());
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("violates"), std::string::npos);
}

TEST(CliReport, WorkedCaseJson) {
  const fs::path out = fs::temp_directory_path() / "casorati_cli_test" / "worked_report.json";
  fs::create_directories(out.parent_path());
  const auto r = run("report " + kWorked + " --r 3 --json " + out.string());
  ASSERT_EQ(r.status, 0) << r.out;
  const auto j = nlohmann::json::parse(read(out));
  EXPECT_NEAR(j["invariants"]["tau_T_nor"].get<double>(), 5.0 / 3.0, 1e-12);
  EXPECT_NEAR(j["extremal"]["inf"]["value"].get<double>(), 1.0, 1e-10);
  EXPECT_NEAR(j["extremal"]["sup"]["value"].get<double>(), 2.5, 1e-10);
  EXPECT_NEAR(j["deltas"][0]["delta"].get<double>(), 10.0, 1e-10);
  EXPECT_EQ(j["verdicts"][0]["equality"], true);
}

TEST(CliReport, TableAndVariants) {
  const auto g = run("gallery umbilical --a 1 --n 3 --q 1");
  ASSERT_EQ(g.status, 0);
  const auto p = scratch("umb.json", g.out);
  const auto r = run("report " + p.string() + " --variant delta_n_minus_1");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("1.16666666667"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("holds"), std::string::npos);
}

TEST(CliReport, InputErrors) {
  EXPECT_EQ(run("report " + kWorked + " --r 6").status, 2);
  EXPECT_EQ(run("report " + kWorked + " --r -2").status, 2);
  EXPECT_EQ(run("report " + kWorked + " --submanifold").status, 2);
  EXPECT_EQ(run("report " + kWorked + " --variant delta_bogus").status, 2);
  EXPECT_EQ(run("report " + kWorked + " --r abc").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
}

TEST(CliReport, Deterministic) {
  const auto a = run("report " + kWorked + " --r 3 --r 10 --seed 4 --oracle-samples 2000 --json -");
  const auto b = run("report " + kWorked + " --r 3 --r 10 --seed 4 --oracle-samples 2000 --json -");
  ASSERT_EQ(a.status, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
}

TEST(CliGallery, EmitsParsableTensors) {
  const auto r = run("gallery equality_r --a 1 --r 3 --n 3 --q 1");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["zeta"][0][2][2], 2.0);
  const auto s = run("gallery hypersurface --kappa 1 1 1 --c 0");
  ASSERT_EQ(s.status, 0) << s.out;
  EXPECT_EQ(nlohmann::json::parse(s.out)["ambient"]["space_form_c"], 0.0);
  EXPECT_EQ(run("gallery equality_r --r 6 --n 3").status, 2);
  EXPECT_EQ(run("gallery bogus").status, 2);
  EXPECT_EQ(run("gallery random --n 4 --q 2 --seed 3").out, run("gallery random --n 4 --q 2 --seed 3").out);
}
