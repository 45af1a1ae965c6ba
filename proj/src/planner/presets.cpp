#include <tepred/planner.hpp>

#include <array>

namespace tep::planner::presets {

namespace {

constexpr std::array kSizes{40, 100, 500};
constexpr std::array kTauStarSq{0.01, 0.0625, 0.25};
constexpr std::array kRtauSteps{0.2, 0.4, 0.6, 0.8, 1.0};

PlanCell base_cell(int n, int p, double tau_star_sq) {
    PlanCell c;
    c.n = n;
    c.p = p;
    c.tau_star_sq = tau_star_sq;
    c.rho0eta = 0.0;
    c.r0_sq = 0.80;
    c.alpha = 0.10;
    c.sigma0_sq = 1.0;
    c.ate = 0.22;
    return c;
}

std::vector<PlanCell> size_by_p_grid() {
    std::vector<PlanCell> grid;
    for (int n : kSizes) {
        for (int p : {1, 3}) {
            for (double t : kTauStarSq) {
                grid.push_back(base_cell(n, p, t));
            }
        }
    }
    return grid;
}

std::vector<PlanCell> nested_grid(int p) {
    std::vector<PlanCell> grid;
    for (int n : kSizes) {
        for (double t : kTauStarSq) {
            for (double r : kRtauSteps) {
                PlanCell c = base_cell(n, p, t);
                c.rtau_sq = r;
                grid.push_back(c);
            }
        }
    }
    return grid;
}

} // namespace

std::vector<PlanCell> table1() { return size_by_p_grid(); }
std::vector<PlanCell> table2() { return size_by_p_grid(); }
std::vector<PlanCell> table3() { return nested_grid(1); }
std::vector<PlanCell> appendix_b() { return nested_grid(3); }

} // namespace tep::planner::presets
