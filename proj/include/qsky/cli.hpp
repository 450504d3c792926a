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

#ifndef QSKY_CLI_HPP
#define QSKY_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace qsky::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kExitSuccess = 0,
  kExitConfigError = 2,
  kExitMissingInput = 3,
  kExitNumericalFailure = 4,
};

/// Runs one subcommand; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace qsky::cli

#endif  // QSKY_CLI_HPP
