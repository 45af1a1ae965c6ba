#include <tepred/planner.hpp>

namespace tep::planner {

VarianceSpec PlanCell::variance() const {
    VarianceSpec v;
    v.sigma0_sq = sigma0_sq;
    v.rho0eta = rho0eta;
    v.r0p_sq = r0_sq;
    v.rtaup_sq = rtau_sq;
    v.tau_star_sq = tau_star_sq;
    return v;
}

PlanResult plan_cell(const PlanCell& cell, ModelChoice model) {
    const double m = mspe(model, cell.design(), cell.variance());
    const PredictionInterval pi = prediction_interval(cell.ate, m, cell.alpha);
    return {m, pi.width, pi.lower, pi.upper, model};
}

std::vector<PlanRow> plan_table(const std::vector<PlanCell>& grid, const std::vector<ModelChoice>& models) {
    require(!grid.empty(), ErrorKind::Usage, "plan grid is empty");
    require(!models.empty(), ErrorKind::Usage, "no model requested");
    std::vector<PlanRow> rows;
    rows.reserve(grid.size() * models.size());
    for (const PlanCell& cell : grid) {
        for (ModelChoice model : models) {
            PlanRow row{cell, model, std::nullopt, {}};
            try {
                row.result = plan_cell(cell, model);
            } catch (const Error& e) {
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<ThresholdRow> threshold_table(const std::vector<PlanCell>& grid) {
    require(!grid.empty(), ErrorKind::Usage, "threshold grid is empty");
    std::vector<ThresholdRow> rows;
    rows.reserve(grid.size());
    for (const PlanCell& cell : grid) {
        ThresholdRow row{cell, std::nullopt, {}};
        try {
            row.threshold = min_rtau_sq(cell.design(), cell.variance());
        } catch (const Error& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<ComparisonRow> comparison_table(const std::vector<PlanCell>& grid, bool only_moderator_better) {
    require(!grid.empty(), ErrorKind::Usage, "comparison grid is empty");
    std::vector<ComparisonRow> rows;
    for (const PlanCell& cell : grid) {
        ComparisonRow row;
        row.cell = cell;
        try {
            const PlanResult base = plan_cell(cell, ModelChoice::Ancova);
            const PlanResult mod = plan_cell(cell, ModelChoice::Moderator);
            row.mspe_p = base.mspe;
            row.mspe_2p = mod.mspe;
            row.width_p = base.pi_width;
            row.width_2p = mod.pi_width;
            row.pct_width_reduction = 100.0 * width_reduction(mod.mspe, base.mspe);
            row.moderator_better = mod.mspe < base.mspe;
        } catch (const Error& e) {
            row.error = e.what();
        }
        if (only_moderator_better && row.error.empty() && !row.moderator_better) {
            continue;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace tep::planner
