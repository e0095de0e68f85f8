// Copyright 2026 The lgsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgsim/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "lgsim/correlations.hpp"
#include "lgsim/errors.hpp"
#include "lgsim/invariants.hpp"
#include "lgsim/measurability.hpp"

namespace lgsim::cli {

namespace {

constexpr std::array<std::string_view, 12> kKeys{
    "command", "j",      "partition", "b",      "sigma",     "theta-over-pi",
    "gaps",    "Omega",  "omega",     "output", "precision", "jobs"};

const std::vector<double> kFigureThetas{0.06, 0.34, 0.50, 0.95};

bool is_known_key(std::string_view key) {
    for (const auto k : kKeys) {
        if (k == key) {
            return true;
        }
    }
    return false;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(std::string_view key, std::string_view text) {
    const std::string_view t = trim(text);
    double value = 0.0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    if (!t.empty() && *first == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (t.empty() || ec != std::errc{} || ptr != last) {
        throw CliError(kExitMalformed,
                       "malformed number '" + std::string(t) + "' for key '" + std::string(key) + "'");
    }
    if (!std::isfinite(value)) {
        throw CliError(kExitOutOfRange, "key '" + std::string(key) + "' must be finite");
    }
    return value;
}

int parse_int_value(std::string_view key, std::string_view text) {
    const std::string_view t = trim(text);
    int value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
        throw CliError(kExitMalformed,
                       "malformed integer '" + std::string(t) + "' for key '" + std::string(key) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return parts;
}

void require(bool present, Command cmd, std::string_view key) {
    if (!present) {
        throw CliError(kExitMissingField, "command '" + std::string(command_name(cmd)) +
                                              "' requires key '" + std::string(key) + "'");
    }
}

// Results are written only once the whole command has succeeded.
int emit(const RunConfig& config, const std::string& body, std::ostream& out, std::ostream& err) {
    if (!config.output) {
        out << body;
        return kExitOk;
    }
    std::ofstream file(*config.output, std::ios::binary | std::ios::trunc);
    if (!file) {
        err << "lgsim: cannot open output file '" << *config.output << "'\n";
        return kExitIo;
    }
    file << body;
    file.close();
    if (!file) {
        err << "lgsim: failed writing '" << *config.output << "'\n";
        return kExitIo;
    }
    return kExitOk;
}

SweepSpec spec_from(const RunConfig& config) {
    SweepSpec spec;
    spec.j = *config.j;
    spec.partition = *config.partition;
    spec.theta_over_pi = config.theta_over_pi;
    spec.b = config.b;
    spec.omega = config.omega;
    spec.Omega = config.Omega;
    return spec;
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
    if (name == "klg") return Command::Klg;
    if (name == "sweep-kb") return Command::SweepKb;
    if (name == "sweep-fsigma") return Command::SweepFSigma;
    if (name == "threshold") return Command::Threshold;
    if (name == "check") return Command::Check;
    return std::nullopt;
}

std::string_view command_name(Command c) {
    switch (c) {
        case Command::Klg:
            return "klg";
        case Command::SweepKb:
            return "sweep-kb";
        case Command::SweepFSigma:
            return "sweep-fsigma";
        case Command::Threshold:
            return "threshold";
        case Command::Check:
            return "check";
    }
    return "?";
}

std::vector<double> parse_number_list(std::string_view key, std::string_view text) {
    std::vector<double> values;
    for (const std::string_view item : split(text, ',')) {
        const std::vector<std::string_view> range = split(item, ':');
        if (range.size() == 1) {
            values.push_back(parse_number(key, item));
        } else if (range.size() == 3) {
            const double lo = parse_number(key, range[0]);
            const double step = parse_number(key, range[1]);
            const double hi = parse_number(key, range[2]);
            try {
                const std::vector<double> grid = linear_grid(lo, hi, step);
                values.insert(values.end(), grid.begin(), grid.end());
            } catch (const InputError& e) {
                throw CliError(kExitMalformed, "bad range '" + std::string(trim(item)) + "' for key '" +
                                                   std::string(key) + "': " + e.what());
            }
        } else {
            throw CliError(kExitMalformed, "malformed list item '" + std::string(trim(item)) +
                                               "' for key '" + std::string(key) + "'");
        }
    }
    return values;
}

std::map<std::string, std::string> parse_config_text(std::string_view text) {
    std::map<std::string, std::string> values;
    int line_no = 0;
    for (std::string_view line : split(text, '\n')) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw CliError(kExitMalformed,
                           "config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (!is_known_key(key)) {
            throw CliError(kExitUnknownKey, "unknown config key '" + key + "' on line " +
                                                std::to_string(line_no));
        }
        if (!values.emplace(key, value).second) {
            throw CliError(kExitUnknownKey, "config key '" + key + "' given twice");
        }
    }
    return values;
}

RunConfig config_from_values(const std::map<std::string, std::string>& values) {
    for (const auto& [key, value] : values) {
        if (!is_known_key(key)) {
            throw CliError(kExitUnknownKey, "unknown key '" + key + "'");
        }
    }
    auto get = [&](std::string_view key) -> std::optional<std::string> {
        const auto it = values.find(std::string(key));
        return it == values.end() ? std::nullopt : std::optional<std::string>(it->second);
    };

    RunConfig cfg;
    const auto command = get("command");
    if (!command) {
        throw CliError(kExitMissingField, "no command given (klg, sweep-kb, sweep-fsigma, threshold, check)");
    }
    const auto cmd = parse_command(*command);
    if (!cmd) {
        throw CliError(kExitUnknownKey, "unknown command '" + *command + "'");
    }
    cfg.command = *cmd;

    if (const auto v = get("j")) {
        try {
            cfg.j = HalfInt::parse(trim(*v));
        } catch (const InputError& e) {
            throw CliError(kExitMalformed, std::string("key 'j': ") + e.what());
        }
        if (cfg.j->twice() < 0) {
            throw CliError(kExitOutOfRange, "key 'j' must be non-negative");
        }
    }
    if (const auto v = get("partition")) {
        try {
            cfg.partition = PartitionChoice::parse(trim(*v));
        } catch (const InputError& e) {
            throw CliError(kExitMalformed, std::string("key 'partition': ") + e.what());
        }
    }

    const auto b_text = get("b");
    const auto sigma_text = get("sigma");
    if (b_text && sigma_text) {
        throw CliError(kExitUnknownKey, "keys 'b' and 'sigma' are mutually exclusive");
    }
    if (b_text) {
        cfg.b = parse_number_list("b", *b_text);
        for (const double b : cfg.b) {
            if (b < 0.0 || b > 1.0) {
                throw CliError(kExitOutOfRange,
                               "key 'b': value " + format_number(b, 12) + " is outside [0, 1]");
            }
        }
    }
    if (sigma_text) {
        cfg.sigma = parse_number_list("sigma", *sigma_text);
        for (const double s : cfg.sigma) {
            if (!(s > 0.0)) {
                throw CliError(kExitOutOfRange,
                               "key 'sigma': value " + format_number(s, 12) + " must be positive");
            }
            cfg.b.push_back(b_from_sigma(s));
        }
    }
    if (const auto v = get("theta-over-pi")) {
        cfg.theta_over_pi = parse_number_list("theta-over-pi", *v);
    }
    if (const auto v = get("gaps")) {
        const std::vector<double> g = parse_number_list("gaps", *v);
        if (g.size() != 3) {
            throw CliError(kExitMalformed, "key 'gaps' takes exactly three values");
        }
        cfg.gaps = std::array<double, 3>{g[0], g[1], g[2]};
    }
    if (const auto v = get("Omega")) {
        cfg.Omega = parse_number("Omega", *v);
    }
    if (const auto v = get("omega")) {
        cfg.omega = parse_number("omega", *v);
    }
    if (const auto v = get("output")) {
        cfg.output = *v;
    }
    if (const auto v = get("precision")) {
        cfg.precision = parse_int_value("precision", *v);
        if (cfg.precision < 1 || cfg.precision > 17) {
            throw CliError(kExitOutOfRange, "key 'precision' must be within 1..17");
        }
    }
    if (const auto v = get("jobs")) {
        cfg.jobs = parse_int_value("jobs", *v);
        if (cfg.jobs < 1) {
            throw CliError(kExitOutOfRange, "key 'jobs' must be at least 1");
        }
    }

    const bool has_measurability = b_text.has_value() || sigma_text.has_value();
    switch (cfg.command) {
        case Command::Klg:
            require(cfg.j.has_value(), cfg.command, "j");
            require(cfg.partition.has_value(), cfg.command, "partition");
            require(has_measurability, cfg.command, "b");
            require(!cfg.theta_over_pi.empty() || cfg.gaps.has_value(), cfg.command, "theta-over-pi");
            break;
        case Command::SweepKb:
            require(cfg.j.has_value(), cfg.command, "j");
            require(cfg.partition.has_value(), cfg.command, "partition");
            if (!has_measurability) {
                cfg.b = linear_grid(0.0, 1.0, 0.01);
            }
            if (cfg.theta_over_pi.empty()) {
                cfg.theta_over_pi = kFigureThetas;
            }
            break;
        case Command::SweepFSigma:
            require(sigma_text.has_value(), cfg.command, "sigma");
            break;
        case Command::Threshold:
            require(cfg.j.has_value(), cfg.command, "j");
            require(cfg.partition.has_value(), cfg.command, "partition");
            require(!cfg.theta_over_pi.empty(), cfg.command, "theta-over-pi");
            break;
        case Command::Check:
            break;
    }
    if ((cfg.command == Command::Klg || cfg.command == Command::SweepKb ||
         cfg.command == Command::Threshold) &&
        cfg.omega == 0.0 && !cfg.theta_over_pi.empty()) {
        throw CliError(kExitOutOfRange, "key 'omega' must be nonzero to realize gap angles");
    }
    return cfg;
}

RunConfig parse_config(const std::vector<std::string>& argv) {
    CLI::App app{"Leggett-Garg violation under a measurability-parameterized spin-j POVM", "lgsim"};
    std::map<std::string, std::string> flags;
    std::string command;
    std::string config_path;

    app.add_option("command", command, "klg | sweep-kb | sweep-fsigma | threshold | check");
    app.add_option("--config", config_path, "key = value config file; flags override it");
    const std::vector<std::pair<std::string, std::string>> options{
        {"j", "spin j as n/2 or an integer"},
        {"partition", "edge5_2 | edge | uniform:<block_size>"},
        {"b", "measurability list in [0,1]; items may be lo:step:hi"},
        {"sigma", "measurability as sigma list (converted to b)"},
        {"theta-over-pi", "equal-gap angles theta/pi"},
        {"gaps", "three gap durations dt12,dt23,dt34 (klg)"},
        {"Omega", "J^2 coefficient (default 0)"},
        {"omega", "J_x coefficient (default 1)"},
        {"output,o", "output file (default stdout)"},
        {"precision", "significant digits (default 12)"},
        {"jobs", "worker threads for sweeps (default 1)"},
    };
    std::vector<std::pair<std::string, CLI::Option*>> registered;
    for (const auto& [name, help] : options) {
        const std::string key = name.substr(0, name.find(','));
        const std::string flag = name.find(',') == std::string::npos
                                     ? "--" + name
                                     : "--" + key + ",-" + name.substr(name.find(',') + 1);
        auto* opt = app.add_option(flag, flags[key], help);
        registered.emplace_back(key, opt);
    }

    std::vector<std::string> args(argv.rbegin(), argv.rend());
    if (!args.empty()) {
        args.pop_back();
    }
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        throw CliError(kExitOk, app.help());
    } catch (const CLI::ExtrasError& e) {
        throw CliError(kExitUnknownKey, e.what());
    } catch (const CLI::ParseError& e) {
        throw CliError(kExitMalformed, e.what());
    }

    std::map<std::string, std::string> values;
    if (!config_path.empty()) {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) {
            throw CliError(kExitIo, "cannot read config file '" + config_path + "'");
        }
        std::ostringstream body;
        body << in.rdbuf();
        values = parse_config_text(body.str());
    }
    for (const auto& [key, opt] : registered) {
        if (opt->count() > 0) {
            values[key] = flags[key];
        }
    }
    if (!command.empty()) {
        values["command"] = command;
    }
    return config_from_values(values);
}

std::string format_number(double value, int precision) {
    if (value == 0.0) {
        value = 0.0;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
    return buf;
}

void write_kb_csv(const std::vector<SweepRow>& rows, int precision, std::ostream& out) {
    out << "theta_over_pi,b,C_theta,C_3theta,K,violated\n";
    for (const SweepRow& r : rows) {
        out << format_number(r.theta_over_pi, precision) << ',' << format_number(r.b, precision)
            << ',' << format_number(r.C_theta, precision) << ','
            << format_number(r.C_3theta, precision) << ',' << format_number(r.K, precision) << ','
            << (r.violated ? "true" : "false") << '\n';
    }
}

void write_fsigma_csv(const std::vector<FSigmaRow>& rows, int precision, std::ostream& out) {
    out << "sigma,a,b,c\n";
    for (const FSigmaRow& r : rows) {
        out << format_number(r.sigma, precision) << ',' << format_number(r.a, precision) << ','
            << format_number(r.b, precision) << ',' << format_number(r.c, precision) << '\n';
    }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    std::ostringstream dst;
    const int p = config.precision;
    try {
        switch (config.command) {
            case Command::Klg: {
                const SpinSystem sys(*config.j);
                const Partition partition = config.partition->build(sys);
                const DynamicsParams dyn{sys, config.omega, config.Omega};
                const DensityMatrix rho = maximally_mixed(sys);
                dst << "theta12_over_pi,theta23_over_pi,theta34_over_pi,b,C12,C23,C34,C14,K,violated\n";
                std::vector<std::array<double, 3>> gap_sets;
                if (config.gaps) {
                    gap_sets.push_back(*config.gaps);
                } else {
                    for (const double t : config.theta_over_pi) {
                        const double dt = t * std::numbers::pi / config.omega;
                        gap_sets.push_back({dt, dt, dt});
                    }
                }
                for (const auto& gaps : gap_sets) {
                    for (const double b : config.b) {
                        const MeasurabilityPovm povm =
                            make_povm(partition, MeasurabilityParam::from_b(b));
                        const LgiResult r = k_lg(povm, rho, dyn, gaps);
                        for (const double th : r.thetas) {
                            dst << format_number(th / std::numbers::pi, p) << ',';
                        }
                        dst << format_number(b, p) << ',' << format_number(r.C12, p) << ','
                            << format_number(r.C23, p) << ',' << format_number(r.C34, p) << ','
                            << format_number(r.C14, p) << ',' << format_number(r.K, p) << ','
                            << (r.violated ? "true" : "false") << '\n';
                    }
                }
                break;
            }
            case Command::SweepKb: {
                const std::vector<SweepRow> rows = sweep_k_vs_b(spec_from(config), config.jobs);
                write_kb_csv(rows, p, dst);
                break;
            }
            case Command::SweepFSigma: {
                write_fsigma_csv(sweep_f_vs_sigma(config.sigma), p, dst);
                break;
            }
            case Command::Threshold: {
                for (const double t : config.theta_over_pi) {
                    SweepSpec spec = spec_from(config);
                    spec.theta_over_pi = {t};
                    const ThresholdReport report = violation_threshold(spec);
                    dst << "theta_over_pi=" << format_number(t, p) << ' ';
                    if (report.roots.empty()) {
                        dst << "none";
                        if (report.kind == ThresholdReport::Kind::AlwaysViolated) {
                            dst << " (violated for every b)";
                        }
                    } else {
                        for (std::size_t i = 0; i < report.roots.size(); ++i) {
                            dst << (i ? "," : "b_star=") << format_number(report.roots[i], p);
                        }
                    }
                    dst << '\n';
                }
                break;
            }
            case Command::Check: {
                bool all = true;
                for (const CheckResult& r : run_invariant_suite()) {
                    all = all && r.passed;
                    dst << (r.passed ? "PASS " : "FAIL ") << r.name
                        << " (worst " << format_number(r.worst, 3) << ", tol "
                        << format_number(r.tolerance, 3) << ")\n";
                }
                if (!all) {
                    emit(config, dst.str(), out, err);
                    err << "lgsim: invariant suite failed\n";
                    return kExitCheckFailed;
                }
                break;
            }
        }
    } catch (const CliError&) {
        throw;
    } catch (const IllPosedError& e) {
        err << "lgsim: ill-posed computation: " << e.what() << '\n';
        return kExitIllPosed;
    } catch (const DomainError& e) {
        err << "lgsim: " << e.what() << '\n';
        return kExitOutOfRange;
    } catch (const InputError& e) {
        err << "lgsim: " << e.what() << '\n';
        return kExitOutOfRange;
    }
    return emit(config, dst.str(), out, err);
}

int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    try {
        const RunConfig config = parse_config(argv);
        return run(config, out, err);
    } catch (const CliError& e) {
        if (e.code() == kExitOk) {
            out << e.what();
            return kExitOk;
        }
        err << "lgsim: " << e.what() << '\n';
        return e.code();
    }
}

}  // namespace lgsim::cli
