#include <tepred/cli.hpp>
#include <tepred/ingest.hpp>
#include <tepred/oracle.hpp>
#include <tepred/planner.hpp>
#include <tepred/shift.hpp>
#include <tepred/weights.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace tep::cli {

namespace {

using planner::PlanCell;

enum class Preset { Table1, Table2, Table3, AppendixB };

std::optional<Preset> preset_of(const RunConfig& cfg) {
    if (!cfg.preset) {
        return std::nullopt;
    }
    const std::string& s = *cfg.preset;
    if (s == "table1") {
        return Preset::Table1;
    }
    if (s == "table2") {
        return Preset::Table2;
    }
    if (s == "table3") {
        return Preset::Table3;
    }
    if (s == "appendixB" || s == "appendixb" || s == "appendix-b") {
        return Preset::AppendixB;
    }
    fail(ErrorKind::Usage, "unknown preset '" + s + "' (expected table1, table2, table3 or appendixB)");
}

std::vector<PlanCell> preset_grid(Preset p) {
    switch (p) {
    case Preset::Table1: return planner::presets::table1();
    case Preset::Table2: return planner::presets::table2();
    case Preset::Table3: return planner::presets::table3();
    case Preset::AppendixB: return planner::presets::appendix_b();
    }
    return {};
}

template <typename T>
std::vector<T> or_default(const std::vector<T>& v, T fallback) {
    return v.empty() ? std::vector<T>{fallback} : v;
}

/// Cartesian product of the grid flags, in flag order.
std::vector<PlanCell> grid_from_flags(const RunConfig& cfg, double default_alpha) {
    std::vector<double> tau2 = cfg.tau2;
    if (cfg.rho01) {
        require(tau2.empty(), ErrorKind::Usage, "give either --tau2 or --rho01, not both");
        const double s1 = cfg.sigma1sq.value_or(1.0);
        require(s1 >= 0.0, ErrorKind::Usage, "--sigma1sq must be nonnegative");
        tau2 = {core::VarianceSpec::from_raw(1.0, s1, *cfg.rho01).tau_star_sq};
    }
    if (cfg.n.empty() || cfg.p.empty() || tau2.empty()) {
        fail(ErrorKind::Usage, "grid is empty: supply --n, --p and --tau2 (or --rho01), or a --preset");
    }
    std::vector<PlanCell> grid;
    for (int n : cfg.n) {
        for (int p : cfg.p) {
            for (double t : tau2) {
                for (double r : or_default(cfg.rtau2, 0.0)) {
                    for (double r0 : or_default(cfg.r0sq, 0.80)) {
                        for (double rho : or_default(cfg.rho0eta, 0.0)) {
                            PlanCell c;
                            c.n = n;
                            c.p = p;
                            c.tau_star_sq = t;
                            c.rtau_sq = r;
                            c.r0_sq = r0;
                            c.rho0eta = rho;
                            c.alpha = cfg.alpha.value_or(default_alpha);
                            c.ate = cfg.ate;
                            grid.push_back(c);
                        }
                    }
                }
            }
        }
    }
    return grid;
}

std::vector<core::ModelChoice> models_from(const RunConfig& cfg, std::vector<core::ModelChoice> fallback) {
    if (cfg.models.empty()) {
        return fallback;
    }
    std::vector<core::ModelChoice> out;
    for (const std::string& name : cfg.models) {
        const auto m = core::parse_model(name);
        require(m.has_value(), ErrorKind::Usage, "unknown model '" + name + "' (expected raw, ancova or moderator)");
        out.push_back(*m);
    }
    return out;
}

Table plan_rows(const std::vector<planner::PlanRow>& rows, CommandResult& result) {
    Table t{"plan",
            {"n", "p", "tau2", "rtau2", "r0sq", "rho0eta", "alpha", "model", "mspe", "pi_width", "pi_lower", "pi_upper",
             "error"},
            {}};
    for (const planner::PlanRow& r : rows) {
        std::vector<Cell> row{Cell::integer(r.cell.n),         Cell::integer(r.cell.p),
                              Cell::num(r.cell.tau_star_sq),   Cell::num(r.cell.rtau_sq),
                              Cell::num(r.cell.r0_sq),         Cell::num(r.cell.rho0eta),
                              Cell::num(r.cell.alpha),         Cell::text(std::string(core::to_string(r.model)))};
        if (r.result) {
            row.push_back(Cell::num(r.result->mspe, 3));
            row.push_back(Cell::num(r.result->pi_width, 3));
            row.push_back(Cell::num(r.result->pi_lower, 3));
            row.push_back(Cell::num(r.result->pi_upper, 3));
            row.push_back(Cell::empty());
        } else {
            for (int i = 0; i < 4; ++i) {
                row.push_back(Cell::empty());
            }
            row.push_back(Cell::text(r.error));
            result.exit_code = kExitFailure;
            result.messages.push_back("n=" + std::to_string(r.cell.n) + " p=" + std::to_string(r.cell.p) + ": " +
                                      r.error);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table threshold_rows(const std::vector<planner::ThresholdRow>& rows, CommandResult& result) {
    Table t{"minr2", {"n", "p", "tau2", "min_rtau2", "min_rtau2_pct", "ancova_always_preferred", "error"}, {}};
    for (const planner::ThresholdRow& r : rows) {
        std::vector<Cell> row{Cell::integer(r.cell.n), Cell::integer(r.cell.p), Cell::num(r.cell.tau_star_sq)};
        if (r.threshold) {
            row.push_back(Cell::num(r.threshold->value, 4));
            row.push_back(Cell::num(100.0 * r.threshold->value, 0));
            row.push_back(Cell::flag(r.threshold->ancova_always_preferred));
            row.push_back(Cell::empty());
        } else {
            row.insert(row.end(), {Cell::empty(), Cell::empty(), Cell::empty(), Cell::text(r.error)});
            result.exit_code = kExitFailure;
            result.messages.push_back("n=" + std::to_string(r.cell.n) + ": " + r.error);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table comparison_rows(const std::vector<planner::ComparisonRow>& rows, CommandResult& result) {
    Table t{"comparison",
            {"p", "n", "rtau2", "tau2", "mspe_p", "mspe_2p", "width_p", "width_2p", "pct_width_reduction", "error"},
            {}};
    for (const planner::ComparisonRow& r : rows) {
        std::vector<Cell> row{Cell::integer(r.cell.p), Cell::integer(r.cell.n), Cell::num(r.cell.rtau_sq),
                              Cell::num(r.cell.tau_star_sq)};
        if (r.error.empty()) {
            row.insert(row.end(), {Cell::num(r.mspe_p, 3), Cell::num(r.mspe_2p, 3), Cell::num(r.width_p, 2),
                                   Cell::num(r.width_2p, 2), Cell::num(r.pct_width_reduction, 0), Cell::empty()});
        } else {
            for (int i = 0; i < 5; ++i) {
                row.push_back(Cell::empty());
            }
            row.push_back(Cell::text(r.error));
            result.exit_code = kExitFailure;
            result.messages.push_back(r.error);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

ingest::PopulationFile file_spec(const RunConfig& cfg, const std::string& path, const char* flag) {
    require(!path.empty(), ErrorKind::Usage, std::string("missing ") + flag);
    ingest::PopulationFile f;
    f.path = path;
    f.id_column = cfg.id_column;
    f.covariate_columns = cfg.columns;
    f.row_policy = cfg.drop_missing ? ingest::RowPolicy::DropMissing : ingest::RowPolicy::RejectMissing;
    return f;
}

Cell opt_num(const std::optional<double>& v, int digits) { return v ? Cell::num(*v, digits) : Cell::empty(); }

} // namespace

CommandResult cmd_plan(const RunConfig& cfg) {
    CommandResult result;
    const auto preset = preset_of(cfg);
    std::vector<Table> tables;
    if (preset == Preset::Table2) {
        tables.push_back(threshold_rows(planner::threshold_table(preset_grid(*preset)), result));
    } else if (preset == Preset::Table3 || preset == Preset::AppendixB) {
        tables.push_back(comparison_rows(planner::comparison_table(preset_grid(*preset), true), result));
    } else if (preset == Preset::Table1) {
        tables.push_back(plan_rows(planner::plan_table(preset_grid(*preset), {core::ModelChoice::Ancova}), result));
    } else {
        const auto models = models_from(cfg, {core::ModelChoice::Ancova, core::ModelChoice::Moderator});
        tables.push_back(plan_rows(planner::plan_table(grid_from_flags(cfg, 0.10), models), result));
    }
    result.document = render(tables, cfg.format);
    return result;
}

CommandResult cmd_minr2(const RunConfig& cfg) {
    CommandResult result;
    const auto preset = preset_of(cfg);
    require(!preset || preset == Preset::Table2, ErrorKind::Usage, "minr2 only supports --preset table2");
    const auto grid = preset ? preset_grid(*preset) : grid_from_flags(cfg, 0.10);
    result.document = render({threshold_rows(planner::threshold_table(grid), result)}, cfg.format);
    return result;
}

CommandResult cmd_mdes(const RunConfig& cfg) {
    CommandResult result;
    require(!cfg.n.empty(), ErrorKind::Usage, "mdes needs --n (total sample size)");
    const double alpha = cfg.alpha.value_or(0.05);
    const auto sides = cfg.one_sided ? planner::Sidedness::OneSided : planner::Sidedness::TwoSided;
    Table t{"mdes", {"N", "p", "r2", "treat_share", "alpha", "power", "sides", "multiplier", "mdes", "error"}, {}};
    for (int n : cfg.n) {
        for (int p : or_default(cfg.p, 0)) {
            for (double r2 : or_default(cfg.r0sq, 0.0)) {
                std::vector<Cell> row{Cell::integer(n),        Cell::integer(p),         Cell::num(r2),
                                      Cell::num(cfg.treat_share), Cell::num(alpha),      Cell::num(cfg.power),
                                      Cell::text(cfg.one_sided ? "one" : "two")};
                try {
                    const double m = planner::mdes_multiplier(n, p, alpha, cfg.power, sides);
                    const double e = planner::mdes(n, p, r2, cfg.treat_share, alpha, cfg.power, sides);
                    row.insert(row.end(), {Cell::num(m, 3), Cell::num(e, 4), Cell::empty()});
                } catch (const Error& err) {
                    row.insert(row.end(), {Cell::empty(), Cell::empty(), Cell::text(err.what())});
                    result.exit_code = kExitFailure;
                    result.messages.push_back(err.what());
                }
                t.rows.push_back(std::move(row));
            }
        }
    }
    result.document = render({t}, cfg.format);
    return result;
}

CommandResult cmd_shift(const RunConfig& cfg) {
    CommandResult result;
    const ingest::LoadedPopulation a = ingest::load(file_spec(cfg, cfg.pop_a, "--pop-a"));
    const ingest::LoadedPopulation b = ingest::load(file_spec(cfg, cfg.pop_b, "--pop-b"));
    const ingest::DiagnosticsReport rep = ingest::diagnose(a, b);

    Table cov{"covariates",
              {"covariate", "mean_a", "mean_b", "var_a", "var_b", "smd_by_b", "variance_ratio_a_over_b", "smd_flag",
               "ratio_flag", "degenerate_b"},
              {}};
    for (const ingest::CovariateDiagnostic& c : rep.covariates) {
        cov.rows.push_back({Cell::text(c.name), Cell::num(c.mean_a, 3), Cell::num(c.mean_b, 3), Cell::num(c.var_a, 3),
                            Cell::num(c.var_b, 3), opt_num(c.smd, 2), opt_num(c.variance_ratio, 2),
                            Cell::flag(c.smd_flag), Cell::flag(c.ratio_flag), Cell::flag(c.degenerate)});
    }

    const auto p = static_cast<double>(rep.covariates.size());
    std::optional<double> inflation;
    if (rep.combined) {
        inflation = (1.0 + *rep.combined) / (1.0 + p);
    }
    Table summary{"summary",
                  {"direction", "n_a", "n_b", "rows_dropped_a", "rows_dropped_b", "mahalanobis_m", "burg_d", "combined",
                   "inflation_ratio", "coverage", "vif", "n_effective", "max_normalized_weight", "heavy_units",
                   "distance_error", "weights_error"},
                  {}};
    summary.rows.push_back({Cell::text("B measured in A's metric"), Cell::integer(rep.n_a), Cell::integer(rep.n_b),
                            Cell::integer(a.rows_dropped), Cell::integer(b.rows_dropped), opt_num(rep.mahalanobis_m, 3),
                            opt_num(rep.burg_d, 3), opt_num(rep.combined, 3), opt_num(inflation, 3),
                            opt_num(rep.coverage, 3), opt_num(rep.vif, 3), opt_num(rep.n_effective, 1),
                            opt_num(rep.max_normalized_weight, 4),
                            rep.heavy_units ? Cell::integer(*rep.heavy_units) : Cell::empty(),
                            Cell::text(rep.distance_error), Cell::text(rep.weights_error)});
    if (!rep.distance_error.empty()) {
        result.exit_code = kExitFailure;
        result.messages.push_back("distance: " + rep.distance_error);
    }
    if (!rep.weights_error.empty()) {
        result.messages.push_back("weights: " + rep.weights_error);
    }
    result.document = render({summary, cov}, cfg.format);
    return result;
}

CommandResult cmd_weights(const RunConfig& cfg) {
    CommandResult result;
    const ingest::LoadedPopulation a = ingest::load(file_spec(cfg, cfg.pop_a, "--pop-a"));
    const ingest::LoadedPopulation b = ingest::load(file_spec(cfg, cfg.pop_b, "--pop-b"));
    require(a.columns == b.columns, ErrorKind::Schema, "populations do not share a covariate schema");
    weights::SelectionOptions opt;
    opt.names = a.columns;
    const weights::Reweighting rw = weights::reweight(a.x, b.x, opt);
    const weights::WeightSet normed = weights::normalize(rw.weights_a);

    if (!cfg.weights_file.empty()) {
        std::ofstream f(cfg.weights_file);
        require(f.good(), ErrorKind::Usage, cfg.weights_file + ": cannot open for writing");
        ingest::write_weights(f, a.ids, normed.w);
    }

    Table summary{"summary",
                  {"n_a", "n_b", "vif", "n_effective", "coverage", "b_units_outside_support", "max_normalized_weight",
                   "heavy_units", "weight_min", "weight_max", "iterations"},
                  {}};
    summary.rows.push_back({Cell::integer(a.x.rows()), Cell::integer(b.x.rows()), Cell::num(normed.vif, 3),
                            Cell::num(normed.n_effective, 1), Cell::num(rw.support.coverage, 3),
                            Cell::integer(b.x.rows() - static_cast<long long>(rw.support.kept.size())),
                            Cell::num(rw.diagnostics.max_normalized, 4), Cell::integer(rw.diagnostics.heavy_units),
                            Cell::num(rw.weights_a.support_lo, 4), Cell::num(rw.weights_a.support_hi, 4),
                            Cell::integer(rw.model.iterations)});
    std::vector<Table> tables{summary};
    Table per_unit{"weights", {"id", "weight", "raw_weight"}, {}};
    for (std::size_t i = 0; i < a.ids.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        per_unit.rows.push_back({Cell::text(a.ids[i]), Cell::num(normed.w(r), 6), Cell::num(rw.weights_a.w(r), 4)});
    }
    if (cfg.weights_file.empty()) {
        tables.push_back(std::move(per_unit));
    }
    result.document = render(tables, cfg.format);
    return result;
}

CommandResult cmd_simulate(const RunConfig& cfg) {
    CommandResult result;
    require(cfg.seed.has_value(), ErrorKind::Usage, "simulate needs --seed");
    const auto scenario = oracle::parse_scenario(cfg.scenario);
    require(scenario.has_value(), ErrorKind::Usage, "unknown scenario '" + cfg.scenario + "'");
    require(cfg.trial_design == "moment-matched" || cfg.trial_design == "random", ErrorKind::Usage,
            "--design must be moment-matched or random");

    const bool quick = cfg.reps <= 100;
    const double gate = cfg.gate.value_or(quick ? 0.15 : 0.05);

    std::vector<PlanCell> grid;
    std::vector<core::ModelChoice> models;
    const auto preset = preset_of(cfg);
    if (preset) {
        require(preset != Preset::Table2, ErrorKind::Usage, "simulate supports table1, table3 and appendixB");
        if (preset == Preset::Table1) {
            grid = preset_grid(*preset);
            models = {core::ModelChoice::Ancova};
        } else {
            for (const planner::ComparisonRow& r : planner::comparison_table(preset_grid(*preset), true)) {
                grid.push_back(r.cell);
            }
            models = {core::ModelChoice::Ancova, core::ModelChoice::Moderator};
        }
        models = models_from(cfg, models);
    } else {
        grid = grid_from_flags(cfg, 0.10);
        models = models_from(cfg, {});
    }

    oracle::ValidateOptions opt;
    opt.models = models;
    opt.threads = cfg.threads;
    opt.target_units = cfg.target_units;
    opt.trial_design = cfg.trial_design == "random" ? oracle::TrialDesign::Random : oracle::TrialDesign::MomentMatched;

    nlohmann::ordered_json doc;
    doc["gate"] = gate;
    doc["quick_mode"] = quick;
    doc["replications"] = cfg.reps;
    doc["seed"] = *cfg.seed;
    doc["reports"] = nlohmann::ordered_json::array();
    Table t{"simulate",
            {"n", "p", "tau2", "rtau2", "model", "empirical_mspe", "closed_form_mspe", "relative_error",
             "mc_standard_error", "z_score", "within_gate"},
            {}};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const PlanCell& c = grid[i];
        const oracle::SimulationReport rep =
            oracle::validate(c.design(), c.variance(), *scenario, cfg.reps, oracle::stream_seed(*cfg.seed, i), opt);
        doc["reports"].push_back(nlohmann::ordered_json::parse(rep.to_json()));
        for (const oracle::ModelComparison& m : rep.models) {
            const bool ok = m.relative_error <= gate;
            if (!ok) {
                result.exit_code = kExitFailure;
                result.messages.push_back("n=" + std::to_string(c.n) + " p=" + std::to_string(c.p) + " " + m.label +
                                          ": relative error " + format_fixed(100.0 * m.relative_error, 2) +
                                          "% exceeds gate " + format_fixed(100.0 * gate, 0) + "%");
            }
            t.rows.push_back({Cell::integer(c.n), Cell::integer(c.p), Cell::num(c.tau_star_sq), Cell::num(c.rtau_sq),
                              Cell::text(m.label), Cell::num(m.empirical, 4), Cell::num(m.closed_form, 4),
                              Cell::num(m.relative_error, 4), Cell::num(m.mc_se, 5), Cell::num(m.z_score, 2),
                              Cell::flag(ok)});
        }
    }
    if (quick) {
        result.messages.push_back("quick mode: " + std::to_string(cfg.reps) + " replications, gate " +
                                  format_fixed(100.0 * gate, 0) + "%");
    }
    result.document = cfg.format == Format::Json ? doc.dump(2) + "\n" : render({t}, cfg.format);
    return result;
}

CommandResult dispatch(const RunConfig& cfg) {
    if (cfg.command == "plan") {
        return cmd_plan(cfg);
    }
    if (cfg.command == "minr2") {
        return cmd_minr2(cfg);
    }
    if (cfg.command == "mdes") {
        return cmd_mdes(cfg);
    }
    if (cfg.command == "shift") {
        return cmd_shift(cfg);
    }
    if (cfg.command == "weights") {
        return cmd_weights(cfg);
    }
    if (cfg.command == "simulate") {
        return cmd_simulate(cfg);
    }
    fail(ErrorKind::Usage, "unknown command '" + cfg.command + "'");
}

} // namespace tep::cli
