#include <doctest.h>

#include <tepred/error.hpp>
#include <tepred/planner.hpp>
#include <tepred/weights.hpp>

#include <cmath>
#include <random>

using namespace tep;
using namespace tep::weights;

namespace {

template <class F>
std::optional<ErrorKind> thrown_kind(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

template <class F>
std::string thrown_message(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) {
        out(i++) = x;
    }
    return out;
}

// A population of `counts[k]` units at value values[k], one column.
Matrix stacked(const std::vector<double>& values, const std::vector<int>& counts) {
    int total = 0;
    for (int c : counts) {
        total += c;
    }
    Matrix x(total, 1);
    int row = 0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        for (int i = 0; i < counts[k]; ++i) {
            x(row++, 0) = values[k];
        }
    }
    return x;
}

} // namespace

TEST_CASE("kish vif") {
    CHECK(kish_vif(vec({1, 1, 1, 3})) == 4.0 / 3.0);
    CHECK(kish_vif(vec({2, 2, 2})) == 1.0);
    double prev = 1.0;
    for (double heavy : {2.0, 5.0, 20.0, 100.0}) {
        const double v = kish_vif(vec({heavy, 1, 1, 1, 1}));
        CHECK(v > prev);
        prev = v;
    }
    CHECK(kish_vif(vec({1, 0, 0, 0})) == doctest::Approx(4.0));
    CHECK(thrown_kind([] { kish_vif(vec({1, -1})); }) == ErrorKind::InvalidWeight);
    CHECK(thrown_kind([] { kish_vif(vec({0, 0})); }) == ErrorKind::DegenerateWeights);
}

TEST_CASE("inverse odds") {
    const Vector w = inverse_odds(vec({0.5, 0.25, 0.8}));
    CHECK(w(0) == doctest::Approx(1.0));
    CHECK(w(1) == doctest::Approx(3.0));
    CHECK(w(2) == doctest::Approx(0.25));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(1e-6, 1.0 - 1e-6);
    Vector p(1000);
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        p(i) = u(rng);
    }
    const Vector a = inverse_odds(p);
    const Vector b = inverse_odds((1.0 - p.array()).matrix());
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        CHECK(a(i) * b(i) == doctest::Approx(1.0).epsilon(1e-9));
    }

    CHECK(thrown_kind([] { inverse_odds(vec({0.3, 1.0})); }) == ErrorKind::DegeneratePropensity);
    CHECK(thrown_message([] { inverse_odds(vec({0.3, 0.0})); }).find("unit 1") != std::string::npos);
}

TEST_CASE("normalize") {
    auto n = normalize(WeightSet::from_weights(vec({2, 2})));
    CHECK(n.w(0) == doctest::Approx(0.5));
    CHECK(n.normalized);
    n = normalize(WeightSet::from_weights(vec({1, 3})));
    CHECK(n.w(0) == doctest::Approx(0.25));
    CHECK(n.w(1) == doctest::Approx(0.75));

    std::mt19937_64 rng(4);
    std::exponential_distribution<double> e(1.0);
    Vector w(50);
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        w(i) = e(rng);
    }
    const auto before = WeightSet::from_weights(w);
    const auto after = normalize(before);
    CHECK(after.w.sum() == doctest::Approx(1.0));
    CHECK(after.vif == doctest::Approx(before.vif).epsilon(1e-12));
    CHECK(kish_vif(after.w) == doctest::Approx(kish_vif(w)).epsilon(1e-12));
}

TEST_CASE("effective and required sizes") {
    CHECK(effective_n(100, 4) == doctest::Approx(25.0));
    CHECK(effective_n(80, 1) == doctest::Approx(80.0));
    CHECK(required_n(80, 1.42) == 114);
    CHECK(required_n(80, 1.0) == 80);
    CHECK(required_n(100, 1.5) == 150);
    CHECK(thrown_kind([] { required_n(80, 0.9); }) == ErrorKind::Domain);
}

TEST_CASE("two-by-two selection model recovers the log odds ratio") {
    // x=1 / x=0 counts: a, b in the estimation population; c, d in the target
    const int a = 30, b = 70, c = 55, d = 45;
    const Matrix xa = stacked({1.0, 0.0}, {a, b});
    const Matrix xb = stacked({1.0, 0.0}, {c, d});
    const SelectionModel m = fit_selection(xa, xb);
    CHECK(m.converged);
    CHECK(m.coefficients(1) == doctest::Approx(std::log(double(a) * d / (double(b) * c))).epsilon(1e-6));
    CHECK(std::abs(m.coefficients(1) - std::log(double(a) * d / (double(b) * c))) < 1e-6);
    CHECK(std::abs(m.coefficients(0) - std::log(double(b) / d)) < 1e-6);
}

TEST_CASE("exchangeable populations give flat probabilities") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> z;
    Matrix xa(400, 2), xb(200, 2);
    for (Eigen::Index i = 0; i < xa.rows(); ++i) {
        xa(i, 0) = z(rng);
        xa(i, 1) = z(rng);
    }
    for (Eigen::Index i = 0; i < xb.rows(); ++i) {
        xb(i, 0) = z(rng);
        xb(i, 1) = z(rng);
    }
    const SelectionModel m = fit_selection(xa, xb);
    CHECK(std::abs(m.coefficients(1)) < 0.3);
    CHECK(std::abs(m.coefficients(2)) < 0.3);
    const Vector p = m.prob_in_a(xa);
    CHECK(p.mean() == doctest::Approx(400.0 / 600.0).epsilon(0.01));
}

TEST_CASE("separation names the covariate") {
    Matrix xa(4, 2), xb(4, 2);
    xa << 0.1, 1, 0.5, 2, 0.3, 3, 0.9, 4;
    xb << 0.2, 5, 0.4, 6, 0.8, 7, 0.7, 8;
    SelectionOptions opt;
    opt.names = {"income", "age"};
    CHECK(thrown_kind([&] { fit_selection(xa, xb, opt); }) == ErrorKind::Separation);
    CHECK(thrown_message([&] { fit_selection(xa, xb, opt); }).find("age") != std::string::npos);

    Matrix ca = Matrix::Ones(3, 1), cb = Matrix::Ones(3, 1);
    CHECK(thrown_kind([&] { fit_selection(ca, cb); }) == ErrorKind::Singular);
}

TEST_CASE("common support") {
    const Vector a = vec({0.5, 1.0, 1.5, 2.0});
    CHECK(common_support(a, a).coverage == 1.0);
    CHECK(common_support(a, vec({0.7, 1.9, 1.2})).coverage == 1.0);
    const Vector b = vec({0.5, 0.6, 0.8, 1.0, 1.1, 1.3, 1.7, 1.9, 2.0, 2.6});
    const auto s = common_support(a, b);
    CHECK(s.coverage == doctest::Approx(0.90));
    CHECK(s.kept.size() == 9);
    CHECK(s.kept.back() == 8);
}

TEST_CASE("weighted per-arm fits") {
    std::mt19937_64 rng(6);
    std::normal_distribution<double> z;
    const int n = 60;
    core::TrialData trial;
    trial.x = Matrix(n, 1);
    trial.y = Vector(n);
    trial.t.resize(n);
    std::vector<bool> stratum(n);
    for (int i = 0; i < n; ++i) {
        trial.t[i] = i % 2;
        stratum[i] = (i / 2) % 3 == 0;
        trial.x(i, 0) = z(rng) + (stratum[i] ? 1.5 : 0.0);
        // slopes differ by stratum, so the pooled fit depends on the mix
        const double slope = stratum[i] ? 2.0 : -1.0;
        trial.y(i) = trial.t[i] * slope * trial.x(i, 0) + 0.3 * z(rng);
    }

    SUBCASE("equal weights match the unweighted fit") {
        const auto w = weighted_prediction_model(trial, WeightSet::from_weights(Vector::Constant(n, 2.5)));
        const auto u = core::fit_prediction_model(trial, core::ModelChoice::Moderator);
        CHECK(w.intercept1 == doctest::Approx(u.intercept1));
        CHECK((w.delta() - u.delta()).cwiseAbs().maxCoeff() < 1e-12);
    }

    core::TrialData subset;
    std::vector<Eigen::Index> rows;
    for (int i = 0; i < n; ++i) {
        if (stratum[i]) {
            rows.push_back(i);
        }
    }
    subset.x = trial.x(rows, Eigen::all);
    subset.y = trial.y(rows);
    for (Eigen::Index r : rows) {
        subset.t.push_back(trial.t[static_cast<std::size_t>(r)]);
    }
    const auto sub = core::fit_prediction_model(subset, core::ModelChoice::Moderator);

    SUBCASE("indicator weights reproduce the subset fit") {
        Vector w(n);
        for (int i = 0; i < n; ++i) {
            w(i) = stratum[i] ? 1.0 : 0.0;
        }
        const auto fit = weighted_prediction_model(trial, WeightSet::from_weights(w));
        CHECK(fit.intercept1 == doctest::Approx(sub.intercept1).epsilon(1e-10));
        CHECK(fit.delta()(0) == doctest::Approx(sub.delta()(0)).epsilon(1e-10));
    }

    SUBCASE("concentrating weight approaches the subset fit") {
        double prev_gap = 1e300;
        for (double eps : {0.5, 0.1, 1e-2, 1e-4, 1e-6}) {
            Vector w(n);
            for (int i = 0; i < n; ++i) {
                w(i) = stratum[i] ? 1.0 : eps;
            }
            const auto fit = weighted_prediction_model(trial, WeightSet::from_weights(w));
            const double gap = std::abs(fit.delta()(0) - sub.delta()(0));
            CHECK(gap < prev_gap);
            prev_gap = gap;
        }
        CHECK(prev_gap < 1e-4);
    }

    CHECK(thrown_kind([&] { weighted_prediction_model(trial, WeightSet::from_weights(Vector::Ones(3))); }) ==
          ErrorKind::DimensionMismatch);
}

TEST_CASE("inverse-odds weighting in the source recovers target coefficients") {
    // Three covariate levels with a curved effect, so the best linear fit
    // depends on how units are spread across the levels.
    const std::vector<double> levels{0.0, 1.0, 2.0};
    const Matrix xa = stacked(levels, {50, 30, 20});
    const Matrix xb = stacked(levels, {20, 30, 50});
    auto dummies = [](const Matrix& x) {
        Matrix d(x.rows(), 2);
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            d(i, 0) = x(i, 0) == 1.0;
            d(i, 1) = x(i, 0) == 2.0;
        }
        return d;
    };
    const Reweighting rw = reweight(dummies(xa), dummies(xb));
    CHECK(rw.support.coverage == 1.0);

    auto trial_for = [](const Matrix& x) {
        core::TrialData t;
        const Eigen::Index m = x.rows();
        t.x = Matrix(2 * m, 1);
        t.y = Vector(2 * m);
        for (Eigen::Index i = 0; i < m; ++i) {
            for (int arm = 0; arm < 2; ++arm) {
                const Eigen::Index r = 2 * i + arm;
                t.x(r, 0) = x(i, 0);
                t.y(r) = arm ? 0.5 + x(i, 0) * x(i, 0) : 0.2 * x(i, 0);
                t.t.push_back(arm);
            }
        }
        return t;
    };
    Vector w(2 * xa.rows());
    for (Eigen::Index i = 0; i < xa.rows(); ++i) {
        w(2 * i) = rw.weights_a.w(i);
        w(2 * i + 1) = rw.weights_a.w(i);
    }
    const auto weighted = weighted_prediction_model(trial_for(xa), WeightSet::from_weights(w));
    const auto target = core::fit_prediction_model(trial_for(xb), core::ModelChoice::Moderator);
    const auto source = core::fit_prediction_model(trial_for(xa), core::ModelChoice::Moderator);
    CHECK(weighted.ate() == doctest::Approx(target.ate()).epsilon(1e-6));
    CHECK(weighted.delta()(0) == doctest::Approx(target.delta()(0)).epsilon(1e-6));
    CHECK(std::abs(source.delta()(0) - target.delta()(0)) > 0.1);
}

TEST_CASE("weighted mspe") {
    const auto design = DesignSpec::balanced(80, 1);
    VarianceSpec v;
    v.tau_star_sq = 0.0625;
    v.r0p_sq = 0.8;
    v.rtaup_sq = 0.4;
    CHECK(mspe_weighted(design, v, 1.0).mspe == doctest::Approx(planner::mspe_moderator(design, v)));
    const auto r = mspe_weighted(design, v, 1.5);
    CHECK(r.inflation == doctest::Approx(0.5));
    CHECK(r.estimation_term / r.unweighted_estimation_term == doctest::Approx(1.5));
    CHECK(r.assumes_balance_and_positivity);
    const auto example = mspe_weighted(design, v, 1.42);
    CHECK(example.inflation == doctest::Approx(0.42));
}

TEST_CASE("weight diagnostics") {
    const auto d = diagnose_weights(vec({1, 1, 1, 1, 10}));
    CHECK(d.max_normalized == doctest::Approx(10.0 / 14.0));
    CHECK(d.heavy_units == 1);
    CHECK(diagnose_weights(vec({1, 1, 1, 1, 1, 1})).heavy_units == 0);
}
