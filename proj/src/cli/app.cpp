#include <tepred/cli.hpp>
#include <tepred/error.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>

namespace tep::cli {

namespace {

const std::vector<std::string> kCommands{"plan", "minr2", "mdes", "shift", "weights", "simulate"};

std::string json_scalar(const nlohmann::json& v) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_boolean()) {
        return v.get<bool>() ? "true" : "false";
    }
    return v.dump();
}

bool flag_given(const std::vector<std::string>& args, const std::string& flag) {
    return std::any_of(args.begin(), args.end(),
                       [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

bool is_bool_flag(const std::string& key) { return key == "one-sided" || key == "drop-missing"; }

/// Expands a JSON config file into flags placed ahead of the command-line
/// flags, skipping any flag the command line already sets.
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        }
    }
    if (path.empty()) {
        return args;
    }
    std::ifstream in(path);
    require(in.good(), ErrorKind::Usage, path + ": cannot open config file");
    nlohmann::json cfg;
    try {
        cfg = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::Usage, path + ": " + e.what());
    }
    require(cfg.is_object(), ErrorKind::Usage, path + ": config must be a JSON object");

    const bool has_command = !args.empty() && args.front().rfind("-", 0) != 0;
    std::vector<std::string> merged;
    if (has_command) {
        merged.push_back(args.front());
    } else if (cfg.contains("command")) {
        merged.push_back(json_scalar(cfg["command"]));
    }
    for (const auto& [key, value] : cfg.items()) {
        if (key == "command" || key == "config") {
            continue;
        }
        const std::string flag = "--" + key;
        if (flag_given(args, flag)) {
            continue;
        }
        if (is_bool_flag(key)) {
            if (value.is_boolean() && value.get<bool>()) {
                merged.push_back(flag);
            }
            continue;
        }
        if (value.is_array()) {
            for (const auto& item : value) {
                merged.push_back(flag);
                merged.push_back(json_scalar(item));
            }
        } else {
            merged.push_back(flag);
            merged.push_back(json_scalar(value));
        }
    }
    merged.insert(merged.end(), args.begin() + (has_command ? 1 : 0), args.end());
    return merged;
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Usage:
    case ErrorKind::Schema:
    case ErrorKind::Parse: return kExitUsage;
    default: return kExitFailure;
    }
}

} // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    std::string format = "markdown";
    std::string config_path;

    CLI::App app{"Treatment-effect prediction planner: prediction error, moderator thresholds, "
                 "distribution shift and weighting diagnostics",
                 "tepred"};
    app.add_option("command", cfg.command, "plan | minr2 | mdes | shift | weights | simulate")
        ->required()
        ->check(CLI::IsMember(kCommands));
    app.add_option("--config", config_path, "JSON file mirroring the flags; flags override it");

    app.add_option("--n", cfg.n, "Per-arm size (plan, minr2, simulate) or total size N (mdes)")->delimiter(',');
    app.add_option("--p", cfg.p, "Number of covariates / moderators")->delimiter(',');
    app.add_option("--tau2", cfg.tau2, "Standardized effect variance tau*^2")->delimiter(',');
    app.add_option("--rtau2", cfg.rtau2, "Share of effect variance explained by moderators")->delimiter(',');
    app.add_option("--r0sq", cfg.r0sq, "Share of control-outcome variance explained by covariates")->delimiter(',');
    app.add_option("--rho0eta", cfg.rho0eta, "Correlation of control residual and idiosyncratic effect")
        ->delimiter(',');
    app.add_option("--rho01", cfg.rho01, "Potential-outcome residual correlation; derives tau*^2 with --sigma1sq");
    app.add_option("--sigma1sq", cfg.sigma1sq, "Treated-arm variance relative to control (with --rho01)");
    app.add_option("--alpha", cfg.alpha, "Error rate: 1 - interval level (default 0.10) or test size for mdes (0.05)");
    app.add_option("--power", cfg.power, "Power for mdes")->capture_default_str();
    app.add_option("--ate", cfg.ate, "Average effect used to centre prediction intervals")->capture_default_str();
    app.add_option("--treat-share", cfg.treat_share, "Share of units treated (mdes)")->capture_default_str();
    app.add_flag("--one-sided", cfg.one_sided, "One-sided test for mdes");
    app.add_option("--model", cfg.models, "raw | ancova | moderator (repeatable)")->delimiter(',');
    app.add_option("--preset", cfg.preset, "table1 | table2 | table3 | appendixB");
    app.add_option("--pop-a", cfg.pop_a, "CSV of the estimation population");
    app.add_option("--pop-b", cfg.pop_b, "CSV of the prediction population");
    app.add_option("--id-column", cfg.id_column, "Unit id column in the population files");
    app.add_option("--columns", cfg.columns, "Covariate columns (default: all but the id)")->delimiter(',');
    app.add_flag("--drop-missing", cfg.drop_missing, "Drop rows with missing covariates instead of failing");
    app.add_option("--weights-file", cfg.weights_file, "Where weights writes its per-unit id,weight CSV");
    app.add_option("--reps", cfg.reps, "Monte Carlo replications")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "Random seed (required for simulate)");
    app.add_option("--gate", cfg.gate, "Relative-error gate for simulate (default 0.05, or 0.15 at <= 100 reps)");
    app.add_option("--scenario", cfg.scenario, "within | shifted | weighted")->capture_default_str();
    app.add_option("--design", cfg.trial_design, "moment-matched | random")->capture_default_str();
    app.add_option("--target-units", cfg.target_units, "Target units scored per replication")->capture_default_str();
    app.add_option("--threads", cfg.threads, "Worker threads for simulate (0 = all cores)");
    app.add_option("--format", format, "csv | markdown | json")->capture_default_str();
    app.add_option("--out", cfg.out, "Write the document here instead of stdout");

    try {
        std::vector<std::string> args = merge_config(raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    }

    const auto fmt = parse_format(format);
    if (!fmt) {
        err << "error: unknown format '" << format << "' (expected csv, markdown or json)\n";
        return kExitUsage;
    }
    cfg.format = *fmt;

    CommandResult result;
    try {
        result = dispatch(cfg);
    } catch (const Error& e) {
        err << "error [" << to_string(e.kind()) << "]: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }

    for (const std::string& m : result.messages) {
        err << m << "\n";
    }
    if (cfg.out.empty()) {
        out << result.document;
    } else {
        std::ofstream f(cfg.out);
        if (!f.good()) {
            err << "error: cannot open " << cfg.out << " for writing\n";
            return kExitUsage;
        }
        f << result.document;
    }
    return result.exit_code;
}

} // namespace tep::cli
