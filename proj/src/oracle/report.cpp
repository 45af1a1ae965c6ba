#include <tepred/oracle.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace tep::oracle {

double SimulationReport::max_relative_error() const {
    double worst = 0.0;
    for (const ModelComparison& m : models) {
        worst = std::max(worst, m.relative_error);
    }
    return worst;
}

double SimulationReport::max_abs_z() const {
    double worst = 0.0;
    for (const ModelComparison& m : models) {
        worst = std::max(worst, std::abs(m.z_score));
    }
    return worst;
}

std::string SimulationReport::to_json(int indent) const {
    nlohmann::ordered_json doc;
    doc["scenario"] = std::string(oracle::to_string(scenario));
    doc["design"] = {{"n0", design.n0}, {"n1", design.n1}, {"p", design.p}};
    doc["variance"] = {{"sigma0_sq", variance.sigma0_sq},     {"tau_star_sq", variance.tau_star_sq},
                       {"r0_sq", variance.r0p_sq},            {"rtau_sq", variance.rtaup_sq},
                       {"rho0eta", variance.rho0eta}};
    doc["replications"] = replications;
    doc["seed"] = seed;
    doc["trial_design"] = trial_design == TrialDesign::MomentMatched ? "moment-matched" : "random";
    doc["target_units"] = target_units;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const ModelComparison& m : models) {
        rows.push_back({{"model", m.label},
                        {"empirical_mspe", m.empirical},
                        {"closed_form_mspe", m.closed_form},
                        {"relative_error", m.relative_error},
                        {"mc_standard_error", m.mc_se},
                        {"z_score", m.z_score}});
    }
    doc["models"] = std::move(rows);
    doc["notes"] = notes;
    return doc.dump(indent);
}

} // namespace tep::oracle
