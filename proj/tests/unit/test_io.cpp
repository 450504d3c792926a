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

#include <filesystem>
#include <sstream>

#include "qsky/io.hpp"

namespace qsky {
namespace {

namespace fs = std::filesystem;

class IoTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("qsky_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

StokesField sample_field() {
  return conditional_stokes(make_skyrmion_state(0, -2, -4), {1.0, 0.3}, GridSpec{24, 20, 3.0, 1.0});
}

TEST(GridJson, RoundTrip) {
  const GridSpec g{40, 32, 2.5, 0.75};
  EXPECT_EQ(io::grid_from_json(io::to_json(g)), g);
  EXPECT_THROW(io::grid_from_json(nlohmann::json{{"nx", 4}}), FormatError);
}

TEST_F(IoTest, StokesBinaryRoundTripIsExact) {
  const StokesField f = sample_field();
  io::write_stokes_binary(dir_ / "s.f64", f);
  EXPECT_EQ(fs::file_size(dir_ / "s.f64"), 4u * 24u * 20u * 8u);
  const StokesField g = io::read_stokes_binary(dir_ / "s.f64");
  EXPECT_EQ(g.grid, f.grid);
  EXPECT_TRUE((g.s0 == f.s0).all());
  EXPECT_TRUE((g.s1 == f.s1).all());
  EXPECT_TRUE((g.s2 == f.s2).all());
  EXPECT_TRUE((g.s3 == f.s3).all());
}

TEST_F(IoTest, StokesCsvHasOneRowPerPixel) {
  const StokesField f = sample_field();
  io::write_stokes_csv(dir_ / "s.csv", f);
  std::istringstream in(io::read_text(dir_ / "s.csv"));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,y,S0,S1,S2,S3");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 5);
  }
  EXPECT_EQ(rows, 24 * 20);
}

TEST_F(IoTest, GraymapOrientationAndSidecar) {
  const GridSpec g{4, 3, 1.0, 1.0};
  RealRaster<double> r = RealRaster<double>::Zero(3, 4);
  r(2, 0) = 2.0;  // largest y, smallest x
  r(0, 3) = -1.0;
  io::write_pgm(dir_ / "r.pgm", r, g, "test");
  const io::Graymap m = io::read_pgm(dir_ / "r.pgm");
  EXPECT_EQ(m.width, 4);
  EXPECT_EQ(m.height, 3);
  EXPECT_EQ(m.pixels[0], 255);
  EXPECT_EQ(m.pixels[2 * 4 + 3], 0);
  const auto meta = nlohmann::json::parse(io::read_text(dir_ / "r.pgm.json"));
  EXPECT_EQ(meta.at("quantity"), "test");
  EXPECT_EQ(meta.at("min").get<double>(), -1.0);
  EXPECT_EQ(meta.at("max").get<double>(), 2.0);
}

TEST_F(IoTest, MissingFilesRaise) {
  EXPECT_THROW(io::read_text(dir_ / "absent.txt"), FormatError);
  io::write_text(dir_ / "bad.pgm", "P2\n1 1\n255\n0\n");
  EXPECT_THROW(io::read_pgm(dir_ / "bad.pgm"), FormatError);
}

TEST(Exports, SphereMapJsonAndCsv) {
  SphereMap m{{0.0, kPi}, {0.0}, Eigen::MatrixXd(2, 1), MaskRaster(2, 1)};
  m.n_values << -1.98, std::numeric_limits<double>::quiet_NaN();
  m.valid << true, false;
  const auto j = io::to_json(m);
  EXPECT_EQ(j.at("n_values")[1][0], nullptr);
  EXPECT_EQ(j.at("plateaus").size(), 1u);
  EXPECT_EQ(j.at("plateaus")[0].at("value"), -2);
  const std::string csv = io::sphere_csv(m);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "theta,alpha,n,valid");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

TEST(Exports, ChshAndMeasurements) {
  ChshResult r;
  r.s = 2.5;
  const auto j = io::to_json(r);
  EXPECT_EQ(j.at("S"), 2.5);
  EXPECT_EQ(j.at("settings").at("a"), "sigma1");
  const ProjectorSet set = build_projector_set(3);
  const std::string csv = io::measurement_csv(forward_model(make_skyrmion_state(0, -2, -4), set), set);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 541);
  EXPECT_THROW(io::measurement_csv(MeasurementRecord{}, set), DimensionMismatchError);
}

}  // namespace
}  // namespace qsky
