#include "cavity/cli.hpp"
#include "cavity/verify.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cavity;
namespace fs = std::filesystem;

namespace {

const char* const kLinearStress =
    R"({"kind": "polynomial", "terms": [{"i": 0, "j": 1, "coefficient": 16},
                                        {"i": 0, "j": 0, "a_power": 1, "coefficient": -8}]})";

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("cavity_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_config(const std::string& name, const std::string& body) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << body;
    return p;
  }

  fs::path config_with_stress(const std::string& stress, const std::string& extra = "") {
    const std::string out = (dir_ / "out").string();
    return write_config("run.json", R"({"stress": )" + stress + R"(, "output": ")" + out + "\"" + extra + "}");
  }

  int run(std::vector<std::string> args) {
    std::vector<const char*> argv{"cavity-stream"};
    for (const auto& s : args) argv.push_back(s.c_str());
    out_.str("");
    err_.str("");
    return cli::run(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  static std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      std::vector<std::string> cells;
      std::stringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ',')) cells.push_back(cell);
      rows.push_back(cells);
    }
    return rows;
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

}  // namespace

TEST_F(CliTest, CheckLinearPolynomialIsCompatible) {
  const fs::path cfg = config_with_stress(kLinearStress);
  EXPECT_EQ(run({"check", "--config", cfg.string()}), cli::kSuccess) << err_.str();
  const auto j = nlohmann::json::parse(slurp(dir_ / "out" / "compat.json"));
  EXPECT_EQ(j.at("verdict"), "compatible");
  EXPECT_NE(out_.str().find("compatible"), std::string::npos);
}

TEST_F(CliTest, CheckEvenCosineHarmonicFails) {
  const fs::path cfg = config_with_stress(R"({"kind": "cosine", "A": 1, "m": 2})");
  EXPECT_EQ(run({"check", "--config", cfg.string()}), cli::kDomainFailure);
  EXPECT_NE(err_.str().find("warning"), std::string::npos);
  EXPECT_NE(out_.str().find("incompatible"), std::string::npos);
  EXPECT_EQ(nlohmann::json::parse(slurp(dir_ / "out" / "compat.json")).at("verdict"), "incompatible");
}

TEST_F(CliTest, MalformedConfigIsAUsageError) {
  const fs::path cfg = write_config("bad.json", "{\"stress\": ");
  EXPECT_EQ(run({"check", "--config", cfg.string()}), cli::kUsageFailure);
  EXPECT_NE(err_.str().find("config error"), std::string::npos);
}

TEST_F(CliTest, UnknownKeyIsAUsageError) {
  const fs::path cfg = config_with_stress(kLinearStress, R"(, "gird": 12)");
  EXPECT_EQ(run({"check", "--config", cfg.string()}), cli::kUsageFailure);
  EXPECT_NE(err_.str().find("gird"), std::string::npos);
}

TEST_F(CliTest, MissingConfigAndBadFlags) {
  EXPECT_EQ(run({"solve"}), cli::kUsageFailure);
  EXPECT_EQ(run({"solve", "--config", (dir_ / "absent.json").string()}), cli::kUsageFailure);
  EXPECT_EQ(run({}), cli::kUsageFailure);
  const fs::path cfg = config_with_stress(kLinearStress);
  EXPECT_EQ(run({"check", "--config", cfg.string(), "--a", "-1"}), cli::kUsageFailure);
  EXPECT_EQ(run({"check", "--config", cfg.string(), "--grid", "3"}), cli::kUsageFailure);
}

TEST_F(CliTest, SolveLinearWritesTheExactGrid) {
  const fs::path cfg = config_with_stress(kLinearStress);
  ASSERT_EQ(run({"solve", "--config", cfg.string(), "--grid", "17"}), cli::kSuccess) << err_.str();
  const auto rows = read_csv(dir_ / "out" / "psi.csv");
  ASSERT_FALSE(rows.empty());
  for (const auto& r : rows) {
    const double x = std::stod(r[0]), y = std::stod(r[1]), psi = std::stod(r[2]);
    const double expected = 2 * y * y * y - 2 * x * x * y - 4 * y * y + 4 * x * y;
    EXPECT_NEAR(psi, expected, 1e-14);
  }
  const auto j = nlohmann::json::parse(slurp(dir_ / "out" / "verify.json"));
  EXPECT_TRUE(j.at("passed").get<bool>());
}

TEST_F(CliTest, SolveZeroStressGivesZeroGrid) {
  const fs::path cfg = config_with_stress(R"({"kind": "polynomial", "terms": []})");
  ASSERT_EQ(run({"solve", "--config", cfg.string(), "--grid", "9"}), cli::kSuccess) << err_.str();
  for (const auto& r : read_csv(dir_ / "out" / "psi.csv")) EXPECT_EQ(std::stod(r[2]), 0.0);
}

TEST_F(CliTest, SolveOddCosineByQuadrature) {
  const fs::path cfg = config_with_stress(R"({"kind": "cosine", "A": 2, "m": 3})");
  ASSERT_EQ(run({"solve", "--config", cfg.string(), "--grid", "17"}), cli::kSuccess) << err_.str();
  const auto j = nlohmann::json::parse(slurp(dir_ / "out" / "verify.json"));
  EXPECT_TRUE(j.at("passed").get<bool>());
  EXPECT_FALSE(j.at("quadrature_vs_riemann").is_null());
}

TEST_F(CliTest, SolveRefusesIncompatibleStress) {
  const fs::path cfg = config_with_stress(R"({"kind": "polynomial", "terms": [{"i": 0, "j": 0, "coefficient": 1}]})");
  EXPECT_EQ(run({"solve", "--config", cfg.string()}), cli::kDomainFailure);
  EXPECT_FALSE(fs::exists(dir_ / "out" / "psi.csv"));
}

TEST_F(CliTest, FlowLinearHasOneCenter) {
  const fs::path cfg = config_with_stress(R"({"kind": "builtin", "name": "linear"})");
  ASSERT_EQ(run({"flow", "--config", cfg.string()}), cli::kSuccess) << err_.str();
  int centers = 0;
  for (const auto& r : read_csv(dir_ / "out" / "stagnation.csv")) {
    if (r[2] != "center") continue;
    ++centers;
    EXPECT_NEAR(std::stod(r[0]), 1.0, 1e-10);
    EXPECT_NEAR(std::stod(r[1]), 1.0 / 3.0, 1e-10);
  }
  EXPECT_EQ(centers, 1);
  EXPECT_FALSE(read_csv(dir_ / "out" / "streamlines.csv").empty());
  EXPECT_NE(slurp(dir_ / "out" / "flow.svg").find("<svg"), std::string::npos);
}

TEST_F(CliTest, FlowBuiltinCenterCounts) {
  for (const auto& [name, expected] : {std::pair{"sinusoidal", 4}, std::pair{"realistic", 2}}) {
    const fs::path cfg = config_with_stress(std::string(R"({"kind": "builtin", "name": ")") + name + "\"}");
    ASSERT_EQ(run({"flow", "--config", cfg.string(), "--quiet"}), cli::kSuccess) << err_.str();
    EXPECT_TRUE(out_.str().empty());
    int centers = 0;
    for (const auto& r : read_csv(dir_ / "out" / "stagnation.csv")) centers += r[2] == "center";
    EXPECT_EQ(centers, expected) << name;
  }
}

TEST_F(CliTest, FlowNullField) {
  const fs::path cfg = config_with_stress(R"({"kind": "polynomial", "terms": []})");
  ASSERT_EQ(run({"flow", "--config", cfg.string()}), cli::kSuccess) << err_.str();
  EXPECT_NE(out_.str().find("null field"), std::string::npos);
  EXPECT_TRUE(read_csv(dir_ / "out" / "streamlines.csv").empty());
}

TEST_F(CliTest, ExamplesWriteThreeCasesDeterministically) {
  const fs::path first = dir_ / "first", second = dir_ / "second";
  ASSERT_EQ(run({"examples", "--out", first.string()}), cli::kSuccess) << err_.str();
  ASSERT_EQ(run({"examples", "--out", second.string()}), cli::kSuccess) << err_.str();
  for (const char* name : {"linear", "sinusoidal", "realistic"}) {
    for (const char* file : {"compat.json", "psi.csv", "verify.json", "streamlines.csv", "stagnation.csv", "flow.svg"}) {
      const fs::path rel = fs::path(name) / file;
      ASSERT_TRUE(fs::exists(first / rel)) << rel;
      EXPECT_EQ(slurp(first / rel), slurp(second / rel)) << rel;
    }
  }
  for (const char* file : {"u_profile_x_eq_a.csv", "shear_profile_y_eq_0.csv"}) {
    EXPECT_EQ(slurp(first / file), slurp(second / file)) << file;
  }
}

TEST_F(CliTest, UnwritableOutputIsAUsageError) {
  const fs::path blocker = dir_ / "blocker";
  std::ofstream(blocker) << "not a directory";
  EXPECT_EQ(run({"examples", "--out", (blocker / "sub").string()}), cli::kUsageFailure);
  EXPECT_NE(err_.str().find("output error"), std::string::npos);
}

TEST_F(CliTest, InstalledExecutableRuns) {
  const fs::path cfg = config_with_stress(kLinearStress);
  const std::string cmd = std::string("\"") + CAVITY_STREAM_EXE + "\" check --quiet --config \"" + cfg.string() + "\"";
  EXPECT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "compat.json"));
}
