/*
 * Copyright 2026 The finkey Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FINKEY_CLI_HPP
#define FINKEY_CLI_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "finkey/keyrate.hpp"

namespace finkey::cli {

enum class Mode { kCompute, kSweep, kThreshold, kAsymptotic };
enum class TableFormat { kCsv, kTsv };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown by parse_args for --help; what() is the help text.
struct HelpRequested : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    Mode mode = Mode::kCompute;
    /// Axis and grid; for compute this holds a single grid point.
    SweepSpec grid;
    std::string out_path;  ///< empty: standard output
    TableFormat format = TableFormat::kCsv;
    unsigned workers = 1;
};

/// Column header of compute and sweep tables.
extern const std::vector<std::string> kKeyRateColumns;

/// Builds a RunConfig from command-line arguments (argv[0] is the program
/// name). Throws UsageError on invalid flags or flag combinations.
RunConfig parse_args(const std::vector<std::string>& args);

/// Executes the run and writes the table to `out`; diagnostics go to `err`.
/// Returns 0 on success and 1 if any row failed.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run, writing to the configured destination; 2 on usage errors.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace finkey::cli

#endif  // FINKEY_CLI_HPP
