// Copyright 2026 The lgsim Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file cli.hpp
 * @brief Run configuration, config-file grammar and command dispatch for the
 *        `lgsim` executable.
 *
 * Config file grammar: one `key = value` per line, `#` starts a comment,
 * blank lines are ignored, keys are the long flag names without the leading
 * dashes (`j`, `partition`, `b`, `sigma`, `theta-over-pi`, `gaps`, `Omega`,
 * `omega`, `output`, `precision`, `jobs`, `command`). List values are
 * comma-separated; an item `lo:step:hi` expands to an evenly spaced grid.
 * Flags given on the command line override file values.
 */
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lgsim/half_int.hpp"
#include "lgsim/sweep.hpp"

namespace lgsim::cli {

/// Process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitUnknownKey = 2,      ///< unknown flag or config key, or conflicting flags
    kExitMalformed = 3,       ///< value does not parse (half-integer, number, partition)
    kExitOutOfRange = 4,      ///< value parses but is outside its domain
    kExitMissingField = 5,    ///< command-specific required field absent
    kExitIllPosed = 6,        ///< conditioning probability underflow
    kExitCheckFailed = 7,     ///< `check` found a violated invariant
    kExitIo = 8,              ///< config or output file could not be read/written
};

/// Error carrying the exit code it maps to.
class CliError : public std::runtime_error {
public:
    CliError(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    [[nodiscard]] ExitCode code() const noexcept { return code_; }

private:
    ExitCode code_;
};

enum class Command { Klg, SweepKb, SweepFSigma, Threshold, Check };

[[nodiscard]] std::optional<Command> parse_command(std::string_view name);
[[nodiscard]] std::string_view command_name(Command c);

struct RunConfig {
    Command command = Command::Check;
    std::optional<HalfInt> j;
    std::optional<PartitionChoice> partition;
    /// Measurability grid as b values (sigma inputs are converted).
    std::vector<double> b;
    /// Original sigma values when the grid was given as sigma.
    std::vector<double> sigma;
    std::vector<double> theta_over_pi;
    std::optional<std::array<double, 3>> gaps;
    double Omega = 0.0;
    double omega = 1.0;
    std::optional<std::string> output;
    int precision = 12;
    int jobs = 1;
};

/// Parses a config file body into raw key/value pairs. Throws CliError for
/// syntax errors, unknown keys and duplicates.
[[nodiscard]] std::map<std::string, std::string> parse_config_text(std::string_view text);

/// Builds a RunConfig from raw key/value pairs (file values already merged
/// with flags). Throws CliError.
[[nodiscard]] RunConfig config_from_values(const std::map<std::string, std::string>& values);

/// argv -> RunConfig. argv[0] is the program name. Throws CliError; a help
/// request is reported as CliError with kExitOk and the help text as message.
[[nodiscard]] RunConfig parse_config(const std::vector<std::string>& argv);

/// Expands "0.1,0.2,0:0.01:1" into numbers. Throws CliError.
[[nodiscard]] std::vector<double> parse_number_list(std::string_view key, std::string_view text);

/// "%.<precision>g" with negative zero printed as 0.
[[nodiscard]] std::string format_number(double value, int precision);

void write_kb_csv(const std::vector<SweepRow>& rows, int precision, std::ostream& out);
void write_fsigma_csv(const std::vector<FSigmaRow>& rows, int precision, std::ostream& out);

/// Executes a validated config. Results go to `out` (or the output file),
/// diagnostics to `err`. Returns the exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_config + run with every CliError mapped to its exit code.
int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace lgsim::cli
