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

#ifndef QSKY_IO_HPP
#define QSKY_IO_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qsky/bell.hpp"
#include "qsky/tomography.hpp"
#include "qsky/topology.hpp"

namespace qsky::io {

nlohmann::json to_json(const GridSpec& grid);
GridSpec grid_from_json(const nlohmann::json& j);

/// Throws FormatError on I/O failure.
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

// Stokes fields ------------------------------------------------------------

/// Header x,y,S0,S1,S2,S3; one row per pixel, x fastest.
void write_stokes_csv(const std::filesystem::path& path, const StokesField& field);

/// Four planes S0..S3, each ny x nx float64 row-major (row = y index),
/// little-endian, plus `<path>.json` describing grid and convention.
void write_stokes_binary(const std::filesystem::path& path, const StokesField& field);
StokesField read_stokes_binary(const std::filesystem::path& path);

// Rasters ------------------------------------------------------------------

/// 8-bit P5 graymap, linear between min and max, top row = largest y. The
/// sidecar `<path>.json` records min, max and the grid.
void write_pgm(const std::filesystem::path& path, const RealRaster<double>& raster, const GridSpec& grid,
               const std::string& quantity);

struct Graymap {
  int width = 0;
  int height = 0;
  std::vector<unsigned char> pixels;
};
Graymap read_pgm(const std::filesystem::path& path);

// Analysis results ---------------------------------------------------------

nlohmann::json to_json(const SphereMap& map);
std::string sphere_csv(const SphereMap& map);
nlohmann::json to_json(const Plateau& p);

nlohmann::json to_json(const QuasiparticleReport& report);

nlohmann::json to_json(const DynamicsTrace& trace);
std::string dynamics_csv(const DynamicsTrace& trace);

std::string measurement_csv(const MeasurementRecord& record, const ProjectorSet& set);
nlohmann::json to_json(const ReconstructionResult& result);

std::string fringe_csv(const BellCurveSet& curves);
nlohmann::json to_json(const ChshResult& result);

}  // namespace qsky::io

#endif  // QSKY_IO_HPP
