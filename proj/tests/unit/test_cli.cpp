// Copyright 2026 The qskyrmion Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "qsky/cli.hpp"
#include "qsky/io.hpp"
#include "qsky/serialization.hpp"

namespace qsky::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("qsky_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    unsetenv("QSKY_OUTPUT_DIR");
  }
  void TearDown() override {
    fs::remove_all(dir_);
    unsetenv("QSKY_OUTPUT_DIR");
  }

  int call(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run(args, out_, err_);
  }
  json load(const fs::path& p) const { return json::parse(io::read_text(p)); }
  fs::path write(const std::string& name, const std::string& text) const {
    io::write_text(dir_ / name, text);
    return dir_ / name;
  }
  bool empty_dir(const fs::path& p) const { return !fs::exists(p) || fs::is_empty(p); }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, BuildStateBases) {
  ASSERT_EQ(call({"build-state", "-o", (dir_ / "a").string()}), kExitSuccess) << err_.str();
  const TripartiteState a = tripartite_from_json(load(dir_ / "a" / "state.json"));
  EXPECT_EQ(a.basis().ells(), (std::vector<int>{0, -2, -4}));
  ASSERT_EQ(call({"build-state", "--q", "1.5", "-o", (dir_ / "b").string(), "--out", "s3.json"}), kExitSuccess) << err_.str();
  const json b = load(dir_ / "b" / "s3.json");
  EXPECT_EQ(tripartite_from_json(b).basis().ells(), (std::vector<int>{0, -3, -6}));
  EXPECT_EQ(b.at("provenance").at("command"), "build-state");
}

TEST_F(CliTest, ConfigErrorsReportLocationAndWriteNothing) {
  const fs::path bad = write("bad.json", "{\n  \"angles\": {\n    \"theta\": 4.0\n  }\n}\n");
  EXPECT_EQ(call({"--config", bad.string(), "skyrmion-number", "-o", (dir_ / "out").string()}), kExitConfigError);
  EXPECT_NE(err_.str().find("bad.json:3"), std::string::npos) << err_.str();
  EXPECT_TRUE(empty_dir(dir_ / "out"));

  const fs::path unknown = write("unknown.json", "{\n  \"grid\": {\"n\": 64},\n  \"colour\": 1\n}\n");
  EXPECT_EQ(call({"sphere", "--config", unknown.string(), "-o", (dir_ / "out").string()}), kExitConfigError);
  EXPECT_NE(err_.str().find(":3"), std::string::npos) << err_.str();
  EXPECT_NE(err_.str().find("colour"), std::string::npos) << err_.str();
  EXPECT_TRUE(empty_dir(dir_ / "out"));

  EXPECT_EQ(call({"skyrmion-number", "--theta", "-0.1", "-o", (dir_ / "out").string()}), kExitConfigError);
  EXPECT_EQ(call({"no-such-command"}), kExitConfigError);
}

TEST_F(CliTest, MissingStateFile) {
  EXPECT_EQ(call({"sphere", "--state", (dir_ / "absent.json").string(), "-o", (dir_ / "out").string()}), kExitMissingInput);
  EXPECT_TRUE(empty_dir(dir_ / "out"));
}

TEST_F(CliTest, VanishingHeraldIsNumericalFailure) {
  EXPECT_EQ(call({"skyrmion-number", "--tuning", "0", "--theta", "pi", "--grid-n", "32", "-o", dir_.string()}),
            kExitNumericalFailure);
  EXPECT_NE(err_.str().find("zero"), std::string::npos) << err_.str();
}

TEST_F(CliTest, SkyrmionNumberAndFlagsOverrideConfig) {
  const fs::path cfg = write("c.json", "{\"grid\": {\"n\": 32}, \"angles\": {\"theta\": 0.0}, \"output_dir\": \"" +
                                           (dir_ / "from_config").string() + "\"}");
  ASSERT_EQ(call({"skyrmion-number", "--config", cfg.string(), "--grid-n", "128", "--theta", "pi/2", "-o",
                  (dir_ / "from_flag").string()}),
            kExitSuccess)
      << err_.str();
  EXPECT_TRUE(empty_dir(dir_ / "from_config"));
  const json j = load(dir_ / "from_flag" / "skyrmion_number.json");
  EXPECT_EQ(j.at("rounded"), -4);
  EXPECT_DOUBLE_EQ(j.at("theta").get<double>(), 0.5 * kPi);
}

TEST_F(CliTest, OutputDirectoryFromEnvironment) {
  setenv("QSKY_OUTPUT_DIR", (dir_ / "env").string().c_str(), 1);
  ASSERT_EQ(call({"build-state"}), kExitSuccess) << err_.str();
  EXPECT_TRUE(fs::exists(dir_ / "env" / "state.json"));
}

TEST_F(CliTest, SphereReportsPlateaus) {
  ASSERT_EQ(call({"sphere", "--grid-n", "96", "--theta", "0,pi/2,pi", "--alpha", "0,pi", "-o", dir_.string()}), kExitSuccess)
      << err_.str();
  const json j = load(dir_ / "sphere.json");
  ASSERT_EQ(j.at("plateaus").size(), 2u);
  EXPECT_EQ(j.at("plateaus")[0].at("value"), -2);
  EXPECT_EQ(j.at("plateaus")[1].at("value"), -4);
  EXPECT_TRUE(fs::exists(dir_ / "sphere.csv"));
}

TEST_F(CliTest, StokesFieldOutputs) {
  ASSERT_EQ(call({"stokes-field", "--grid-n", "32", "-o", dir_.string()}), kExitSuccess) << err_.str();
  for (const char* f : {"stokes.csv", "stokes.f64", "stokes.f64.json", "s0.pgm", "psi.pgm", "stokes_meta.json"})
    EXPECT_TRUE(fs::exists(dir_ / f)) << f;
  EXPECT_EQ(io::read_stokes_binary(dir_ / "stokes.f64").grid.nx, 32);
}

TEST_F(CliTest, DynamicsNeedsEnoughSamples) {
  EXPECT_EQ(call({"dynamics", "--theta", "1.26", "--alpha", "0", "-o", (dir_ / "out").string()}), kExitConfigError);
  EXPECT_TRUE(empty_dir(dir_ / "out"));
}

TEST_F(CliTest, TomographyIsReproducible) {
  ASSERT_EQ(call({"build-state", "--ells", "0,-2,-4", "-o", dir_.string()}), kExitSuccess) << err_.str();
  const std::vector<std::string> args{"tomography", "--seed", "7", "--counts", "10000"};
  auto with_dir = [&](const std::string& d) {
    auto a = args;
    a.insert(a.end(), {"-o", (dir_ / d).string()});
    return a;
  };
  ASSERT_EQ(call(with_dir("t1")), kExitSuccess) << err_.str();
  ASSERT_EQ(call(with_dir("t2")), kExitSuccess) << err_.str();
  EXPECT_EQ(io::read_text(dir_ / "t1" / "tomography.json"), io::read_text(dir_ / "t2" / "tomography.json"));
  EXPECT_EQ(io::read_text(dir_ / "t1" / "measurements.csv"), io::read_text(dir_ / "t2" / "measurements.csv"));
  EXPECT_GT(load(dir_ / "t1" / "tomography.json").at("fidelity_vs_target").get<double>(), 0.98);

  ASSERT_EQ(call({"tomography", "--witnesses-only", "--rho", (dir_ / "state.json").string(), "--target",
                  (dir_ / "state.json").string(), "-o", (dir_ / "w").string()}),
            kExitSuccess)
      << err_.str();
  const json w = load(dir_ / "w" / "witnesses.json");
  EXPECT_NEAR(w.at("purity").get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(w.at("fidelity_vs_target").get<double>(), 1.0, 1e-12);
}

TEST_F(CliTest, BellIdealAndWerner) {
  ASSERT_EQ(call({"bell", "--ell-i", "0", "--ell-j", "-2", "-o", (dir_ / "a").string()}), kExitSuccess) << err_.str();
  const json a = load(dir_ / "a" / "chsh.json");
  EXPECT_NEAR(std::abs(a.at("S").get<double>()), 2.0 * std::sqrt(2.0), 1e-6);
  EXPECT_NEAR(a.at("S_from_fringes").get<double>(), a.at("S").get<double>(), 1e-9);
  EXPECT_TRUE(fs::exists(dir_ / "a" / "bell_fringes.csv"));

  ASSERT_EQ(call({"bell", "--ell-i", "0", "--ell-j", "-2", "--werner-p", "0.9", "-o", (dir_ / "b").string()}), kExitSuccess)
      << err_.str();
  EXPECT_NEAR(std::abs(load(dir_ / "b" / "chsh.json").at("S").get<double>()), 2.546, 1e-3);
}

TEST_F(CliTest, ProvenanceHashTracksConfiguration) {
  ASSERT_EQ(call({"build-state", "-o", (dir_ / "a").string()}), kExitSuccess);
  ASSERT_EQ(call({"build-state", "-o", (dir_ / "b").string()}), kExitSuccess);
  ASSERT_EQ(call({"build-state", "--tuning", "0.3", "-o", (dir_ / "c").string()}), kExitSuccess);
  const auto h = [&](const char* d) { return load(dir_ / d / "state.json").at("provenance").at("config_hash"); };
  EXPECT_EQ(h("a"), h("b"));
  EXPECT_NE(h("a"), h("c"));
}

}  // namespace
}  // namespace qsky::cli
