#include <tepred/ingest.hpp>
#include <tepred/shift.hpp>
#include <tepred/weights.hpp>

#include <cmath>

namespace tep::ingest {

namespace {

constexpr double kSmdThreshold = 0.25;
constexpr double kRatioLow = 0.5;
constexpr double kRatioHigh = 2.0;

} // namespace

DiagnosticsReport diagnose(const LoadedPopulation& pop_a, const LoadedPopulation& pop_b) {
    require(pop_a.columns == pop_b.columns, ErrorKind::Schema, "populations do not share a covariate schema");
    const core::PopulationSummary sa = core::summarize(pop_a.x);
    const core::PopulationSummary sb = core::summarize(pop_b.x);

    DiagnosticsReport report;
    report.n_a = static_cast<int>(pop_a.x.rows());
    report.n_b = static_cast<int>(pop_b.x.rows());
    for (Eigen::Index k = 0; k < sa.dim(); ++k) {
        CovariateDiagnostic c;
        c.name = pop_a.columns[static_cast<std::size_t>(k)];
        c.mean_a = sa.mu(k);
        c.mean_b = sb.mu(k);
        c.var_a = sa.sigma(k, k);
        c.var_b = sb.sigma(k, k);
        if (c.var_b > 0.0) {
            c.smd = std::abs(c.mean_a - c.mean_b) / std::sqrt(c.var_b);
            c.variance_ratio = c.var_a / c.var_b;
            c.smd_flag = *c.smd > kSmdThreshold;
            c.ratio_flag = *c.variance_ratio < kRatioLow || *c.variance_ratio > kRatioHigh;
        } else {
            c.degenerate = true;
        }
        report.covariates.push_back(c);
    }

    try {
        const shift::ShiftDiagnostics d =
            shift::diagnostics(core::standardize(sa, sa), core::standardize(sb, sa));
        report.mahalanobis_m = d.mahalanobis_m;
        report.burg_d = d.burg_d;
        report.combined = d.combined;
    } catch (const Error& e) {
        report.distance_error = e.what();
    }

    try {
        weights::SelectionOptions opt;
        opt.names = pop_a.columns;
        const weights::Reweighting rw = weights::reweight(pop_a.x, pop_b.x, opt);
        report.coverage = rw.support.coverage;
        report.vif = rw.weights_a.vif;
        report.n_effective = rw.weights_a.n_effective;
        report.max_normalized_weight = rw.diagnostics.max_normalized;
        report.heavy_units = rw.diagnostics.heavy_units;
    } catch (const Error& e) {
        report.weights_error = e.what();
    }
    return report;
}

} // namespace tep::ingest
