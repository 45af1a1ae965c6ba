#include "kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

namespace tep::oracle {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31U);
}

Matrix draw_covariates(const WorldSpec& spec, Eigen::Index n, Rng& rng) {
    std::normal_distribution<double> normal;
    Matrix x(n, spec.p);
    switch (spec.law) {
    case CovariateLaw::StandardNormal:
    case CovariateLaw::Gaussian:
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index k = 0; k < spec.p; ++k) {
                x(i, k) = normal(rng);
            }
        }
        if (spec.law == CovariateLaw::Gaussian && spec.p > 0) {
            const core::SpdFactor factor(spec.law_cov, "covariate covariance");
            x = (x * factor.lower().transpose()).rowwise() + spec.law_mean.transpose();
        }
        break;
    case CovariateLaw::Resample: {
        std::uniform_int_distribution<Eigen::Index> pick(0, spec.law_pool.rows() - 1);
        for (Eigen::Index i = 0; i < n; ++i) {
            x.row(i) = spec.law_pool.row(pick(rng));
        }
        break;
    }
    }
    return x;
}

} // namespace

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

double WorldSpec::tau_sq() const { return core::tau_squared(sigma0, sigma1, rho01); }

void WorldSpec::validate() const {
    require(p >= 0, ErrorKind::Domain, "covariate count must be nonnegative");
    require(beta0.size() == p && beta1.size() == p, ErrorKind::DimensionMismatch,
            "coefficient vectors must have length p=" + std::to_string(p));
    require(sigma0 >= 0.0 && sigma1 >= 0.0, ErrorKind::Domain, "residual SDs must be nonnegative");
    require(rho01 >= -1.0 && rho01 <= 1.0, ErrorKind::Domain,
            "residual correlation " + std::to_string(rho01) + " is outside [-1,1]");
    if (law == CovariateLaw::Gaussian) {
        require(law_mean.size() == p && law_cov.rows() == p && law_cov.cols() == p, ErrorKind::DimensionMismatch,
                "Gaussian covariate law needs a p-vector mean and p x p covariance");
    }
    if (law == CovariateLaw::Resample) {
        require(law_pool.rows() > 0 && law_pool.cols() == p, ErrorKind::DimensionMismatch,
                "resampling pool must be nonempty with p columns");
    }
}

Population generate_world(const WorldSpec& spec, Eigen::Index n_units) {
    spec.validate();
    require(n_units > 0, ErrorKind::Domain, "world needs at least one unit");
    Rng rng(stream_seed(spec.seed, 0));
    Matrix x = draw_covariates(spec, n_units, rng);
    return detail::outcomes_for(spec, std::move(x), rng);
}

core::TrialData draw_trial(const Population& world, int n0, int n1, std::uint64_t seed) {
    require(n0 > 0 && n1 > 0, ErrorKind::Domain, "arm sizes must be positive");
    require(static_cast<Eigen::Index>(n0) + n1 <= world.size(), ErrorKind::InsufficientData,
            "trial of " + std::to_string(n0 + n1) + " units exceeds world size " + std::to_string(world.size()));
    Rng rng(seed);
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(world.size()));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    // Partial Fisher-Yates: the first n0 + n1 slots are a uniform sample in
    // random order, so the leading n1 go to treatment.
    const auto total = static_cast<std::size_t>(n0 + n1);
    for (std::size_t i = 0; i < total; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }

    core::TrialData trial;
    trial.x.resize(static_cast<Eigen::Index>(total), world.x.cols());
    trial.y.resize(static_cast<Eigen::Index>(total));
    trial.t.resize(total);
    for (std::size_t k = 0; k < total; ++k) {
        const auto r = static_cast<Eigen::Index>(k);
        const Eigen::Index unit = idx[k];
        const int arm = k < static_cast<std::size_t>(n1) ? 1 : 0;
        trial.x.row(r) = world.x.row(unit);
        trial.y(r) = arm == 1 ? world.y1(unit) : world.y0(unit);
        trial.t[k] = arm;
    }
    return trial;
}

PredictionModel run_trial(const Population& world, int n0, int n1, ModelChoice model, std::uint64_t seed) {
    return core::fit_prediction_model(draw_trial(world, n0, n1, seed), model);
}

double squared_error(const PredictionModel& model, const Population& target) {
    require(target.size() > 0, ErrorKind::InsufficientData, "target population is empty");
    const Vector pred = model.predict(target.x);
    return (pred - target.delta).squaredNorm() / static_cast<double>(target.size());
}

MspeEstimate summarize_replications(const std::vector<double>& values) {
    require(values.size() >= 2, ErrorKind::InsufficientData, "need at least two replications");
    const auto n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    return {mean, std::sqrt(ss / (n - 1.0) / n), static_cast<int>(values.size())};
}

MspeEstimate empirical_mspe(const std::vector<PredictionModel>& fits, const Population& target) {
    std::vector<double> values;
    values.reserve(fits.size());
    for (const PredictionModel& m : fits) {
        values.push_back(squared_error(m, target));
    }
    return summarize_replications(values);
}

void parallel_for(int count, unsigned threads, const std::function<void(int)>& body) {
    if (threads == 0) {
        threads = std::max(1U, std::thread::hardware_concurrency());
    }
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(count, 1)));
    if (threads <= 1) {
        for (int r = 0; r < count; ++r) {
            body(r);
        }
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (int r = static_cast<int>(t); r < count; r += static_cast<int>(threads)) {
                    body(r);
                }
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

} // namespace tep::oracle
