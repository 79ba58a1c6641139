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

#include "finkey/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "finkey/asymptotic.hpp"

namespace finkey::cli {

const std::vector<std::string> kKeyRateColumns = {
    "d",  "n",  "beta0", "error_rate", "epsilon", "epsilon_prime",  "S2",
    "S0", "H0", "ell",   "rate",       "rate_clamped", "effective_rate", "asymptotic_rate"};

namespace {

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep))
        parts.push_back(item);
    if (!text.empty() && text.back() == sep)
        parts.emplace_back();
    return parts;
}

Rational parse_decimal(const std::string& text, const std::string& flag)
{
    try {
        return rational_from_decimal(text);
    } catch (const ParseError&) {
        throw UsageError(flag + ": malformed decimal '" + text + "'");
    }
}

std::uint64_t parse_count(const std::string& text, const std::string& flag)
{
    const Rational v = parse_decimal(text, flag);
    if (v.denominator() != 1 || v.sign() <= 0 || !v.numerator().fits_ulong_p())
        throw UsageError(flag + ": expected a positive integer, got '" + text + "'");
    return v.numerator().get_ui();
}

std::vector<Rational> parse_list(const std::string& text, const std::string& flag)
{
    std::vector<Rational> values;
    for (const std::string& part : split(text, ','))
        values.push_back(parse_decimal(part, flag));
    if (values.empty())
        throw UsageError(flag + ": empty list");
    return values;
}

std::vector<Rational> parse_signal_range(const std::string& text)
{
    const std::vector<std::string> parts = split(text, ':');
    if (parts.size() != 3 && !(parts.size() == 4 && parts[3] == "log"))
        throw UsageError("--sweep-n: expected a:b:step or a:b:count:log");
    const std::uint64_t a = parse_count(parts[0], "--sweep-n");
    const std::uint64_t b = parse_count(parts[1], "--sweep-n");
    const std::uint64_t step = parse_count(parts[2], "--sweep-n");
    if (b < a)
        throw UsageError("--sweep-n: stop must not be below start");
    if (parts.size() == 4)
        return SweepSpec::log_grid(a, b, static_cast<std::size_t>(step));
    return SweepSpec::linear_grid(Rational(static_cast<long>(a)), Rational(static_cast<long>(b)),
                                  Rational(static_cast<long>(step)));
}

std::vector<Rational> parse_decimal_range(const std::string& text, const std::string& flag)
{
    const std::vector<std::string> parts = split(text, ':');
    if (parts.size() != 3)
        throw UsageError(flag + ": expected a:b:step");
    const Rational step = parse_decimal(parts[2], flag);
    if (step.sign() <= 0)
        throw UsageError(flag + ": step must be positive");
    auto grid = SweepSpec::linear_grid(parse_decimal(parts[0], flag), parse_decimal(parts[1], flag),
                                       step);
    if (grid.empty())
        throw UsageError(flag + ": empty range");
    return grid;
}

std::string fmt_real(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt_exact(const Rational& q)
{
    if (has_terminating_decimal(q)) {
        std::string s = to_decimal(q, 40);
        if (Rational(rational_from_decimal(s)) == q)
            return s;
    }
    return fmt_real(q.to_double());
}

std::string error_cell(const std::string& message, char sep)
{
    std::string m = message;
    for (char& c : m)
        if (c == sep || c == '\n' || c == '\r')
            c = ';';
    return "ERROR:" + m;
}

class Table {
public:
    Table(std::ostream& out, char sep) : out_(out), sep_(sep) {}

    void row(const std::vector<std::string>& cells)
    {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0)
                out_ << sep_;
            out_ << cells[i];
        }
        out_ << '\n';
    }

    [[nodiscard]] char sep() const noexcept { return sep_; }

private:
    std::ostream& out_;
    char sep_;
};

std::vector<std::string> param_cells(const ProtocolParams& p)
{
    return {std::to_string(p.d), std::to_string(p.n), fmt_exact(p.beta0),
            fmt_exact(p.error_rate()), fmt_exact(p.epsilon), fmt_exact(p.epsilon_prime())};
}

std::vector<std::string> pad_error(std::vector<std::string> cells, std::size_t width,
                                   const std::string& message, char sep)
{
    cells.push_back(error_cell(message, sep));
    cells.resize(width);
    return cells;
}

int run_keyrate(const RunConfig& config, Table& table)
{
    table.row(kKeyRateColumns);
    int status = 0;
    for (const SweepPoint& pt : sweep(config.grid, config.workers)) {
        std::vector<std::string> cells = param_cells(pt.params);
        if (!pt.result) {
            table.row(pad_error(std::move(cells), kKeyRateColumns.size(), pt.error, table.sep()));
            status = 1;
            continue;
        }
        const KeyRateResult& r = *pt.result;
        for (double v : {r.s2_bits, r.s0_bits, r.h0_bits, r.ell_bits, r.rate, r.rate_clamped,
                         r.effective_rate, r.asymptotic_rate})
            cells.push_back(fmt_real(v));
        table.row(cells);
    }
    return status;
}

int run_threshold(const RunConfig& config, Table& table)
{
    const std::vector<std::string> header = {"d",         "n",          "epsilon",
                                             "threshold_error_rate", "bracket_low",
                                             "bracket_high"};
    table.row(header);
    int status = 0;
    for (std::size_t i = 0; i < config.grid.grid.size(); ++i) {
        ProtocolParams p = config.grid.base;
        std::vector<std::string> cells;
        try {
            p = sweep_point_params(config.grid, i);
            cells = {std::to_string(p.d), std::to_string(p.n), fmt_exact(p.epsilon)};
            const ThresholdResult t = threshold_error_rate(p.d, p.n, p.epsilon);
            if (!t.found)
                throw DomainError(t.upper.is_zero()
                                      ? "no positive key length even without errors"
                                      : "key length stays positive over the whole range");
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.4f", t.error_rate());
            cells.insert(cells.end(), {buf, fmt_exact(t.lower), fmt_exact(t.upper)});
            table.row(cells);
        } catch (const std::exception& e) {
            if (cells.empty())
                cells = {std::to_string(p.d), std::to_string(p.n), fmt_exact(p.epsilon)};
            table.row(pad_error(std::move(cells), header.size(), e.what(), table.sep()));
            status = 1;
        }
    }
    return status;
}

int run_asymptotic(const RunConfig& config, Table& table)
{
    const std::vector<std::string> header = {"d", "beta0", "error_rate", "S_XE", "S_E", "H_XY",
                                             "rate"};
    table.row(header);
    int status = 0;
    for (std::size_t i = 0; i < config.grid.grid.size(); ++i) {
        ProtocolParams p = config.grid.base;
        std::vector<std::string> cells;
        try {
            p = sweep_point_params(config.grid, i);
            cells = {std::to_string(p.d), fmt_exact(p.beta0), fmt_exact(p.error_rate())};
            const AsymptoticRate a = asymptotic_rate(p.d, p.beta0);
            for (double v : {a.s_xe, a.s_e, a.h_xy, a.rate})
                cells.push_back(fmt_real(v));
            table.row(cells);
        } catch (const std::exception& e) {
            if (cells.empty())
                cells = {std::to_string(p.d), fmt_exact(p.beta0), fmt_exact(p.error_rate())};
            table.row(pad_error(std::move(cells), header.size(), e.what(), table.sep()));
            status = 1;
        }
    }
    return status;
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args)
{
    CLI::App app{"Finite-key rates for d-dimensional tomographic QKD under symmetric attacks",
                 args.empty() ? "finkey" : args.front()};
    std::string mode;
    std::optional<int> d;
    std::optional<std::string> n;
    std::optional<std::string> beta0;
    std::optional<std::string> error_rate;
    std::optional<std::string> epsilon;
    std::optional<std::string> sweep_n;
    std::optional<std::string> sweep_error;
    std::optional<std::string> sweep_epsilon;
    std::optional<std::string> sweep_d;
    std::optional<std::string> fixed_ntilde;
    std::string out_path;
    std::string format = "csv";
    unsigned workers = 1;

    app.add_option("mode", mode, "compute | sweep | threshold | asymptotic")
        ->required()
        ->check(CLI::IsMember({"compute", "sweep", "threshold", "asymptotic"}));
    app.add_option("--d", d, "dimension of each signal (default 2)");
    app.add_option("--n", n, "sifted signal count");
    auto* b0 = app.add_option("--beta0", beta0, "probability that Alice and Bob agree");
    auto* er = app.add_option("--error-rate", error_rate, "error rate 1 - beta0");
    b0->excludes(er);
    app.add_option("--epsilon", epsilon, "security parameter");
    app.add_option("--sweep-n", sweep_n, "a:b:step or a:b:count:log");
    app.add_option("--sweep-error", sweep_error, "a:b:step");
    app.add_option("--sweep-epsilon", sweep_epsilon, "v1,v2,...");
    app.add_option("--sweep-d", sweep_d, "d1,d2,...");
    app.add_option("--fixed-ntilde", fixed_ntilde, "total resources n(d+1)d; n is derived");
    app.add_option("--out", out_path, "output file (default stdout)");
    app.add_option("--format", format, "csv or tsv")->check(CLI::IsMember({"csv", "tsv"}));
    app.add_option("--workers", workers, "worker threads for sweeps")->check(CLI::PositiveNumber);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    if (args.empty())
        argv.push_back("finkey");
    for (const std::string& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    RunConfig cfg;
    cfg.mode = mode == "compute"     ? Mode::kCompute
               : mode == "sweep"     ? Mode::kSweep
               : mode == "threshold" ? Mode::kThreshold
                                     : Mode::kAsymptotic;
    cfg.out_path = out_path;
    cfg.format = format == "tsv" ? TableFormat::kTsv : TableFormat::kCsv;
    cfg.workers = workers;

    SweepSpec& g = cfg.grid;
    g.base.d = d.value_or(2);
    if (beta0)
        g.base.beta0 = parse_decimal(*beta0, "--beta0");
    else if (error_rate)
        g.base.beta0 = Rational(1) - parse_decimal(*error_rate, "--error-rate");
    if (epsilon)
        g.base.epsilon = parse_decimal(*epsilon, "--epsilon");
    if (n)
        g.base.n = parse_count(*n, "--n");
    if (fixed_ntilde) {
        if (n)
            throw UsageError("--n and --fixed-ntilde are mutually exclusive");
        g.fixed_ntilde = parse_count(*fixed_ntilde, "--fixed-ntilde");
    }

    const int axes = (sweep_n ? 1 : 0) + (sweep_error ? 1 : 0) + (sweep_epsilon ? 1 : 0) +
                     (sweep_d ? 1 : 0);
    if (axes > 1)
        throw UsageError("at most one --sweep-* axis may be given");
    if (cfg.mode == Mode::kCompute && axes != 0)
        throw UsageError("compute evaluates a single point; use sweep for --sweep-* axes");
    if (cfg.mode == Mode::kSweep && axes != 1)
        throw UsageError("sweep requires exactly one --sweep-* axis");

    if (sweep_n) {
        if (cfg.mode == Mode::kThreshold || cfg.mode == Mode::kAsymptotic)
            throw UsageError("--sweep-n is not available in this mode");
        if (n || fixed_ntilde)
            throw UsageError("--sweep-n conflicts with --n and --fixed-ntilde");
        g.axis = SweepAxis::kSignals;
        g.grid = parse_signal_range(*sweep_n);
    } else if (sweep_error) {
        if (cfg.mode == Mode::kThreshold)
            throw UsageError("threshold mode searches the error rate itself");
        if (beta0 || error_rate)
            throw UsageError("--sweep-error conflicts with --beta0 and --error-rate");
        g.axis = SweepAxis::kErrorRate;
        g.grid = parse_decimal_range(*sweep_error, "--sweep-error");
    } else if (sweep_epsilon) {
        if (cfg.mode == Mode::kAsymptotic)
            throw UsageError("--sweep-epsilon is not available in asymptotic mode");
        if (epsilon)
            throw UsageError("--sweep-epsilon conflicts with --epsilon");
        g.axis = SweepAxis::kEpsilon;
        g.grid = parse_list(*sweep_epsilon, "--sweep-epsilon");
    } else if (sweep_d) {
        if (d)
            throw UsageError("--sweep-d conflicts with --d");
        g.axis = SweepAxis::kDimension;
        g.grid = parse_list(*sweep_d, "--sweep-d");
    } else {
        g.axis = SweepAxis::kSignals;
        g.grid = {Rational(static_cast<long>(g.base.n))};
    }

    if (cfg.mode == Mode::kThreshold && (beta0 || error_rate))
        throw UsageError("threshold mode searches the error rate itself");
    if (cfg.mode == Mode::kAsymptotic && (n || fixed_ntilde || epsilon))
        throw UsageError("asymptotic mode takes only --d and the channel");

    const bool needs_signals = cfg.mode != Mode::kAsymptotic && !sweep_n;
    if (needs_signals && !n && !fixed_ntilde)
        throw UsageError("one of --n, --fixed-ntilde or --sweep-n is required");
    const bool needs_channel = cfg.mode != Mode::kThreshold && !sweep_error;
    if (needs_channel && !beta0 && !error_rate)
        throw UsageError("one of --beta0 or --error-rate is required");
    if (cfg.mode != Mode::kAsymptotic && !epsilon && !sweep_epsilon)
        throw UsageError("--epsilon is required");
    return cfg;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    Table table(out, config.format == TableFormat::kTsv ? '\t' : ',');
    int status = 0;
    try {
        switch (config.mode) {
        case Mode::kCompute:
        case Mode::kSweep:
            status = run_keyrate(config, table);
            break;
        case Mode::kThreshold:
            status = run_threshold(config, table);
            break;
        case Mode::kAsymptotic:
            status = run_asymptotic(config, table);
            break;
        }
    } catch (const std::exception& e) {
        err << "finkey: " << e.what() << '\n';
        return 1;
    }
    if (status != 0)
        err << "finkey: one or more rows failed\n";
    return status;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig config;
    try {
        config = parse_args(args);
    } catch (const HelpRequested& h) {
        out << h.what();
        return 0;
    } catch (const UsageError& e) {
        err << "finkey: " << e.what() << "\nRun with --help for usage.\n";
        return 2;
    }
    if (config.out_path.empty())
        return run(config, out, err);
    std::ofstream file(config.out_path, std::ios::binary);
    if (!file) {
        err << "finkey: cannot open " << config.out_path << " for writing\n";
        return 1;
    }
    const int status = run(config, file, err);
    file.flush();
    if (!file) {
        err << "finkey: write to " << config.out_path << " failed\n";
        return 1;
    }
    return status;
}

}  // namespace finkey::cli
