// Copyright 2026 The Ontolab Authors
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

#ifndef ONTOLAB_CLI_HPP
#define ONTOLAB_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontolab/infoanalysis.hpp"

namespace ontolab::cli {

enum ExitCode : int {
    kSuccess = 0,
    kConfigError = 2,
    kNumericalFailure = 3,
};

/// Invalid command line or incompatible options.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Radians, with `pi` fraction literals: "0.3", "pi", "-pi/4", "3pi/8", "3*pi/8".
double parse_angle(std::string_view text);

/// "NZxNPHI[,NZxNPHI...]"
std::vector<Resolution> parse_bins(std::string_view text);

/// "ax,ay,az[;bx,by,bz...]". Each direction must have norm 1 within 1e-6 and is
/// renormalised.
std::vector<BlochVector> parse_dirs(std::string_view text);

struct RunConfig {
    std::string command;
    std::string model;
    std::vector<std::string> time_literals;
    std::vector<double> times;
    /// How lg reads --times: "chain" (chronological T1..T4, see LGScenario::from_chain)
    /// or "labels" (t1, t2, t3, t4 as given).
    std::string order = "chain";
    std::vector<BlochVector> dirs;
    std::uint64_t runs = 100000;
    std::uint64_t seed = 1;
    double gamma = 1.0;
    std::vector<Resolution> bins;
    std::optional<std::string> out;
    std::string format = "csv";
};

/// Entry point shared by the executable and the tests. `args` excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace ontolab::cli

#endif
