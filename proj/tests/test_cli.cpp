#include <gtest/gtest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "austere4/cli/commands.hpp"
#include "austere4/cli/config.hpp"

using namespace austere4;
using namespace austere4::cli;
using nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "austere4");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("austere4_test_" + name);
}

}  // namespace

TEST(CliFamily, HelicoidGridCsv) {
  const Result r = run_cli({"family", "--family", "helicoid", "--param", "m=2", "--param", "s=1",
                            "--param", "lambdas=1,1", "--grid", "10,10"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const auto lines = split(r.out, '\n');
  ASSERT_EQ(lines.size(), 101u);
  EXPECT_EQ(lines[0], "u1,u2,x1,x2,x3");
  for (std::size_t i = 1; i < lines.size(); ++i) EXPECT_EQ(split(lines[i], ',').size(), 5u);
}

TEST(CliFamily, ConeHasSixAmbientColumns) {
  const Result r = run_cli({"family", "--family", "helicoid_cone", "--grid", "3"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const auto lines = split(r.out, '\n');
  EXPECT_EQ(lines[0], "u1,u2,u3,u4,x1,x2,x3,x4,x5,x6");
  EXPECT_EQ(lines.size(), 82u);
}

TEST(CliFamily, CsvRoundTrip) {
  RunConfig config;
  config.family = "classical_helicoid";
  config.random = 7;
  config.seed = 3;
  const geometry::Immersion imm = build_family(config);
  const auto points = sample_points(config, imm);
  const auto lines = split(samples_csv(imm, points), '\n');
  ASSERT_EQ(lines.size(), points.size() + 1);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto cells = split(lines[i + 1], ',');
    const Eigen::VectorXd p = imm.point(points[i]);
    for (int k = 0; k < 2; ++k) EXPECT_EQ(std::stod(cells[static_cast<std::size_t>(k)]), points[i](k));
    for (int k = 0; k < 3; ++k) EXPECT_EQ(std::stod(cells[static_cast<std::size_t>(2 + k)]), p(k));
  }
}

TEST(CliFamily, ConfigErrors) {
  EXPECT_EQ(run_cli({"family", "--family", "foo"}).code, kExitConfig);
  const Result bad_param = run_cli({"family", "--family", "helicoid", "--param", "q=1"});
  EXPECT_EQ(bad_param.code, kExitConfig);
  EXPECT_NE(bad_param.err.find("params.q"), std::string::npos) << bad_param.err;
  const Result zero = run_cli({"family", "--family", "helicoid", "--param", "lambdas=1,0"});
  EXPECT_EQ(zero.code, kExitConfig);
  EXPECT_EQ(run_cli({"verify", "--family", "helicoid", "--random", "0"}).code, kExitConfig);
  EXPECT_EQ(run_cli({"verify", "--family", "helicoid", "--tol-austere", "-1"}).code, kExitConfig);
  EXPECT_EQ(run_cli({"verify"}).code, kExitConfig);
  EXPECT_EQ(run_cli({"bogus"}).code, kExitConfig);
  EXPECT_EQ(run_cli({"verify", "--config", "/nonexistent/austere4.cfg"}).code, kExitConfig);
}

TEST(CliVerify, HelicoidPassesSphereFails) {
  const Result h = run_cli({"verify", "--family", "helicoid", "--random", "30", "--assert-austere",
                            "--format", "structured"});
  ASSERT_EQ(h.code, kExitPass) << h.err;
  const json j = json::parse(h.out);
  EXPECT_EQ(j["summary"]["fraction_austere"], 1.0);
  EXPECT_EQ(j["records"].size(), 30u);
  EXPECT_TRUE(j["summary"]["passed"].get<bool>());

  const Result s = run_cli({"verify", "--family", "sphere", "--random", "10", "--assert-austere",
                            "--format", "structured"});
  EXPECT_EQ(s.code, kExitAssertion);
  const json js = json::parse(s.out);
  EXPECT_EQ(js["summary"]["fraction_austere"], 0.0);
  const auto& assertions = js["summary"]["assertions"];
  ASSERT_FALSE(assertions.empty());
  EXPECT_EQ(assertions[0]["failing_indices"].size(), 10u);
}

TEST(CliVerify, StructuredFieldsMatchPointRecord) {
  const Result r = run_cli({"verify", "--family", "helicoid_cone", "--random", "5", "--check-ruling", "3",
                            "--format", "structured"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["command"], "verify");
  EXPECT_EQ(j["ambient_dim"], 6);
  for (const auto& rec : j["records"]) {
    for (const char* key : {"index", "domain", "ambient", "singular", "delta", "austere", "austere_defect",
                            "minimal_defect", "ruling_defects", "nullity_dim"}) {
      EXPECT_TRUE(rec.contains(key)) << key;
    }
    EXPECT_LT(rec["ruling_defects"]["condition"].get<double>(), 1e-10);
    EXPECT_LT(rec["ruling_defects"]["straightness"].get<double>(), 1e-10);
  }
  EXPECT_TRUE(j["summary"].contains("delta_histogram"));
}

TEST(CliVerify, ConfigFileAndFlagOverride) {
  const auto cfg = temp_file("verify.cfg");
  {
    std::ofstream f(cfg);
    f << "# sphere control\n"
         "family = sphere\n"
         "params.n = 4\n"
         "samples.random = 4\n"
         "seed = 11\n"
         "format = structured\n";
  }
  const Result a = run_cli({"verify", "--config", cfg.string()});
  ASSERT_EQ(a.code, kExitPass) << a.err;
  const json ja = json::parse(a.out);
  EXPECT_EQ(ja["family"], "sphere");
  EXPECT_EQ(ja["ambient_dim"], 4);
  EXPECT_EQ(ja["records"].size(), 4u);
  EXPECT_EQ(ja["seed"], 11);

  const Result b = run_cli({"verify", "--config", cfg.string(), "--random", "6", "--seed", "12"});
  ASSERT_EQ(b.code, kExitPass) << b.err;
  const json jb = json::parse(b.out);
  EXPECT_EQ(jb["records"].size(), 6u);
  EXPECT_EQ(jb["seed"], 12);
  std::filesystem::remove(cfg);
}

TEST(CliClassify, Verdicts) {
  const Result p = run_cli({"classify", "--family", "helicoid_product", "--random", "5", "--expect-type", "B",
                            "--format", "structured"});
  ASSERT_EQ(p.code, kExitPass) << p.err;
  for (const auto& rec : json::parse(p.out)["records"]) {
    EXPECT_NE(rec["verdict"].get<std::string>().find('B'), std::string::npos);
    EXPECT_EQ(rec["delta"], 2);
  }
  const Result r1 = run_cli({"classify", "--family", "helicoid_x_r2", "--random", "3", "--format", "structured"});
  ASSERT_EQ(r1.code, kExitPass) << r1.err;
  for (const auto& rec : json::parse(r1.out)["records"]) EXPECT_TRUE(rec["rank_one"].get<bool>());
  const Result cone = run_cli({"classify", "--family", "complex_cone", "--random", "3", "--expect-type", "A"});
  EXPECT_EQ(cone.code, kExitPass) << cone.err;
  const Result fail = run_cli({"classify", "--family", "sphere", "--random", "2", "--expect-type", "A"});
  EXPECT_EQ(fail.code, kExitConfig);
  EXPECT_NE(fail.err.find("4-dimensional"), std::string::npos) << fail.err;
}

TEST(CliSlag, PassAndFail) {
  EXPECT_EQ(run_cli({"slag", "--family", "classical_helicoid", "--random", "20"}).code, kExitPass);
  EXPECT_EQ(run_cli({"slag", "--family", "sphere", "--random", "20"}).code, kExitAssertion);
  const Result plane = run_cli({"slag", "--family", "flat_plane", "--random", "5", "--format", "structured"});
  ASSERT_EQ(plane.code, kExitPass) << plane.err;
  EXPECT_LT(json::parse(plane.out)["summary"]["phase_defect"].get<double>(), 1e-12);
}

TEST(CliHolomorphy, OrientationHandling) {
  const Result a = run_cli({"holomorphy", "--family", "complex_cone", "--random", "5", "--format", "structured"});
  ASSERT_EQ(a.code, kExitPass) << a.err;
  const json ja = json::parse(a.out);
  EXPECT_EQ(ja["orientation"], "negative");
  EXPECT_EQ(run_cli({"holomorphy", "--family", "complex_cone", "--random", "5", "--orientation", "positive"}).code,
            kExitAssertion);
  const Result cyl = run_cli({"holomorphy", "--family", "complex_cylinder", "--random", "5", "--format", "structured"});
  ASSERT_EQ(cyl.code, kExitPass) << cyl.err;
  EXPECT_LT(json::parse(cyl.out)["summary"]["max_defect"].get<double>(), 1e-12);
  EXPECT_EQ(run_cli({"holomorphy", "--family", "helicoid", "--random", "2"}).code, kExitConfig);
}

TEST(CliDeterminism, ByteIdenticalReports) {
  for (const char* cmd : {"verify", "classify"}) {
    const std::vector<std::string> args = {cmd, "--family", "helicoid_cone", "--random", "8", "--seed", "42",
                                           "--format", "structured"};
    const Result a = run_cli(args);
    const Result b = run_cli(args);
    std::vector<std::string> serial_args = args;
    serial_args.push_back("--serial");
    const Result c = run_cli(serial_args);
    ASSERT_EQ(a.code, kExitPass) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out, c.out);
  }
}

TEST(CliOutput, WritesToFile) {
  const auto path = temp_file("family.csv");
  const Result r = run_cli({"family", "--family", "classical_helicoid", "--grid", "2", "--out", path.string()});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(split(ss.str(), '\n').size(), 5u);
  std::filesystem::remove(path);
}

TEST(CliBinary, ExitCodeFromProcess) {
  const std::string cmd = std::string(AUSTERE4_CLI_PATH) + " verify --family sphere --random 2 --assert-austere > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), kExitAssertion);
}
