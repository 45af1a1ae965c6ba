#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tep::cli {

enum class Format { Csv, Markdown, Json };

std::optional<Format> parse_format(const std::string& name);

/// Table cell. `digits` is the printed precision used by the markdown
/// rendering; csv and json always carry the full value.
struct Cell {
    std::variant<std::monostate, double, long long, std::string, bool> value;
    int digits = -1;

    static Cell num(double v, int digits = -1) { return {v, digits}; }
    static Cell integer(long long v) { return {v, -1}; }
    static Cell text(std::string v) { return {std::move(v), -1}; }
    static Cell flag(bool v) { return {v, -1}; }
    static Cell empty() { return {std::monostate{}, -1}; }
};

struct Table {
    std::string title;
    std::vector<std::string> headers;
    std::vector<std::vector<Cell>> rows;
};

/// Shortest decimal text that parses back to the same double.
std::string format_full(double v);
/// Fixed-point with half-away-from-zero rounding.
std::string format_fixed(double v, int digits);

/// Renders tables one after another. Json emits an object keyed by title
/// holding arrays of row objects.
std::string render(const std::vector<Table>& tables, Format format);

struct RunConfig {
    std::string command;
    std::vector<int> n;
    std::vector<int> p;
    std::vector<double> tau2;
    std::vector<double> rtau2;
    std::vector<double> r0sq;
    std::vector<double> rho0eta;
    std::optional<double> rho01;
    std::optional<double> sigma1sq;
    std::optional<double> alpha;
    double power = 0.80;
    double ate = 0.22;
    double treat_share = 0.5;
    bool one_sided = false;
    std::vector<std::string> models;
    std::optional<std::string> preset;
    std::string pop_a;
    std::string pop_b;
    std::optional<std::string> id_column;
    std::vector<std::string> columns;
    bool drop_missing = false;
    std::string weights_file;
    int reps = 10000;
    std::optional<std::uint64_t> seed;
    std::optional<double> gate;
    std::string scenario = "within";
    std::string trial_design = "moment-matched";
    int target_units = 400;
    unsigned threads = 0;
    Format format = Format::Markdown;
    std::string out;
};

struct CommandResult {
    std::string document;
    int exit_code = 0;
    /// Diagnostics for stderr (row failures, gate breaches).
    std::vector<std::string> messages;
};

CommandResult cmd_plan(const RunConfig& cfg);
CommandResult cmd_minr2(const RunConfig& cfg);
CommandResult cmd_mdes(const RunConfig& cfg);
CommandResult cmd_shift(const RunConfig& cfg);
CommandResult cmd_weights(const RunConfig& cfg);
CommandResult cmd_simulate(const RunConfig& cfg);

CommandResult dispatch(const RunConfig& cfg);

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Full command-line entry point: parses flags (and an optional JSON
/// --config file), runs the command and writes the document to --out or
/// `out`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tep::cli
