#include <doctest.h>

#include <tepred/error.hpp>
#include <tepred/ingest.hpp>

#include <cmath>
#include <random>
#include <sstream>

using namespace tep;
using namespace tep::ingest;

namespace {

LoadedPopulation from_text(const std::string& text, RowPolicy policy = RowPolicy::RejectMissing,
                           std::optional<std::string> id = std::nullopt, std::vector<std::string> cols = {}) {
    std::istringstream in(text);
    PopulationFile spec;
    spec.id_column = std::move(id);
    spec.covariate_columns = std::move(cols);
    spec.row_policy = policy;
    return load(in, spec, "fixture.csv");
}

template <class F>
std::pair<std::optional<ErrorKind>, std::string> thrown(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return {e.kind(), e.what()};
    }
    return {std::nullopt, {}};
}

LoadedPopulation from_matrix(const Matrix& x, std::vector<std::string> names) {
    LoadedPopulation p;
    p.x = x;
    p.columns = std::move(names);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        p.ids.push_back(std::to_string(i + 1));
    }
    p.rows_read = static_cast<int>(x.rows());
    return p;
}

} // namespace

TEST_CASE("well-formed file") {
    const auto p = from_text("id,a,b\nu1,1,2\nu2,3,4\nu3,5,6.5\n", RowPolicy::RejectMissing, "id");
    CHECK(p.x.rows() == 3);
    CHECK(p.x.cols() == 2);
    CHECK(p.rows_dropped == 0);
    CHECK(p.rows_read == 3);
    CHECK(p.ids == std::vector<std::string>{"u1", "u2", "u3"});
    CHECK(p.columns == std::vector<std::string>{"a", "b"});
    CHECK(p.x(2, 1) == 6.5);
}

TEST_CASE("column selection and quoting") {
    const auto p = from_text("\"name, full\",b,a\n\"x, \"\"y\"\"\",2,1\nz,4,3\n", RowPolicy::RejectMissing,
                             "name, full", {"a"});
    CHECK(p.columns == std::vector<std::string>{"a"});
    CHECK(p.ids.front() == "x, \"y\"");
    CHECK(p.x(1, 0) == 3.0);
}

TEST_CASE("missing values") {
    const std::string text = "a,b\n1,2\n3,\n5,6\n7,NA\n";
    const auto dropped = from_text(text, RowPolicy::DropMissing);
    CHECK(dropped.x.rows() == 2);
    CHECK(dropped.rows_dropped == 2);
    CHECK(dropped.columns == std::vector<std::string>{"a", "b"});
    CHECK(dropped.ids == std::vector<std::string>{"1", "3"});

    const auto [kind, msg] = thrown([&] { from_text(text); });
    CHECK(kind == ErrorKind::Parse);
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(msg.find("column 'b'") != std::string::npos);
}

TEST_CASE("malformed input") {
    auto r = thrown([] { from_text("a,b\n1,x\n2,3\n"); });
    CHECK(r.first == ErrorKind::Parse);
    CHECK(r.second.find("'x'") != std::string::npos);

    r = thrown([] { from_text("a,b\n1,2\n", RowPolicy::RejectMissing, std::nullopt, {"c"}); });
    CHECK(r.first == ErrorKind::Schema);
    CHECK(r.second.find("'c'") != std::string::npos);

    r = thrown([] { from_text("a,b\n1,2\n"); });
    CHECK(r.first == ErrorKind::InsufficientData);

    r = thrown([] { from_text("a,b\n1,2\n3\n"); });
    CHECK(r.first == ErrorKind::Parse);

    r = thrown([] { from_text("a,b\n1,2\n3,\n", RowPolicy::DropMissing); });
    CHECK(r.first == ErrorKind::InsufficientData);
}

TEST_CASE("weights file round trip") {
    std::ostringstream out;
    Vector w(2);
    w << 0.5, 3.0;
    write_weights(out, {"a", "b"}, w);
    const auto back = from_text(out.str(), RowPolicy::RejectMissing, "id");
    CHECK(back.ids == std::vector<std::string>{"a", "b"});
    CHECK(back.x(1, 0) == 3.0);
    CHECK_THROWS_AS(write_weights(out, {"a"}, w), Error);
}

TEST_CASE("identical populations") {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> z;
    Matrix x(200, 3);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (int k = 0; k < 3; ++k) {
            x(i, k) = z(rng) * (k + 1);
        }
    }
    const auto a = from_matrix(x, {"u", "v", "w"});
    const auto r = diagnose(a, a);
    for (const auto& c : r.covariates) {
        CHECK(*c.smd == 0.0);
        CHECK(*c.variance_ratio == 1.0);
        CHECK(!c.smd_flag);
    }
    CHECK(*r.mahalanobis_m == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
    CHECK(*r.burg_d == doctest::Approx(3.0));
    CHECK(*r.vif == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(*r.coverage == 1.0);
}

TEST_CASE("one covariate with a unit mean gap") {
    Matrix xa(4, 1), xb(4, 1);
    xa << -1, -1, 1, 1; // mean 0, variance 1
    xb << 0, 0, 2, 2;   // mean 1, variance 1
    const auto r = diagnose(from_matrix(xa, {"x"}), from_matrix(xb, {"x"}));
    CHECK(*r.covariates[0].smd == doctest::Approx(1.0));
    CHECK(*r.covariates[0].variance_ratio == doctest::Approx(1.0));
    CHECK(r.covariates[0].smd_flag);
    CHECK(*r.mahalanobis_m == doctest::Approx(1.0));
    CHECK(*r.burg_d == doctest::Approx(1.0));
}

TEST_CASE("planted-shift fixture against a scripted recomputation") {
    // x1 is binary, so the selection model is saturated and its weights are
    // count ratios; x2 is continuous and shifted.
    const int na = 120, nb = 80;
    Matrix xa(na, 2), xb(nb, 2);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> z;
    for (int i = 0; i < na; ++i) {
        xa(i, 0) = i < 36 ? 1.0 : 0.0;
        xa(i, 1) = z(rng);
    }
    for (int i = 0; i < nb; ++i) {
        xb(i, 0) = i < 48 ? 1.0 : 0.0;
        xb(i, 1) = 0.6 + 1.3 * z(rng);
    }
    const auto r = diagnose(from_matrix(xa, {"urban", "score"}), from_matrix(xb, {"urban", "score"}));

    auto moments = [](const Matrix& x, int k, double& mean, double& var) {
        mean = 0.0;
        for (Eigen::Index i = 0; i < x.rows(); ++i) mean += x(i, k);
        mean /= double(x.rows());
        var = 0.0;
        for (Eigen::Index i = 0; i < x.rows(); ++i) var += (x(i, k) - mean) * (x(i, k) - mean);
        var /= double(x.rows());
    };
    double ma[2], va[2], mb[2], vb[2];
    for (int k = 0; k < 2; ++k) {
        moments(xa, k, ma[k], va[k]);
        moments(xb, k, mb[k], vb[k]);
        CHECK(r.covariates[k].mean_a == doctest::Approx(ma[k]).epsilon(1e-12));
        CHECK(*r.covariates[k].smd == doctest::Approx(std::abs(ma[k] - mb[k]) / std::sqrt(vb[k])).epsilon(1e-10));
        CHECK(*r.covariates[k].variance_ratio == doctest::Approx(va[k] / vb[k]).epsilon(1e-10));
    }

    // covariances and the 2x2 inverse written out
    auto cov = [](const Matrix& x, double m0, double m1) {
        double c = 0.0;
        for (Eigen::Index i = 0; i < x.rows(); ++i) c += (x(i, 0) - m0) * (x(i, 1) - m1);
        return c / double(x.rows());
    };
    const double ca = cov(xa, ma[0], ma[1]);
    const double cb = cov(xb, mb[0], mb[1]);
    const double det = va[0] * va[1] - ca * ca;
    const double i00 = va[1] / det, i11 = va[0] / det, i01 = -ca / det;
    const double g0 = mb[0] - ma[0], g1 = mb[1] - ma[1];
    const double m = g0 * g0 * i00 + 2 * g0 * g1 * i01 + g1 * g1 * i11;
    const double d = i00 * vb[0] + 2 * i01 * cb + i11 * vb[1];
    CHECK(std::abs(*r.mahalanobis_m - m) < 1e-8);
    CHECK(std::abs(*r.burg_d - d) < 1e-8);
    CHECK(r.mahalanobis_m != doctest::Approx(0.0));
    CHECK(r.weights_error.empty());
    CHECK(*r.coverage > 0.0);
}

TEST_CASE("saturated binary fixture gives count-ratio weights") {
    Matrix xa(10, 1), xb(10, 1);
    xa << 1, 1, 0, 0, 0, 0, 0, 0, 0, 0;  // 2 of 10
    xb << 1, 1, 1, 1, 1, 1, 0, 0, 0, 0;  // 6 of 10
    const auto r = diagnose(from_matrix(xa, {"x"}), from_matrix(xb, {"x"}));
    // weights 6/2 on the two x=1 units and 4/8 on the rest
    const double mean = (2 * 3.0 + 8 * 0.5) / 10.0;
    const double var = (2 * std::pow(3.0 - mean, 2) + 8 * std::pow(0.5 - mean, 2)) / 10.0;
    CHECK(std::abs(*r.vif - (1.0 + var / (mean * mean))) < 1e-8);
    CHECK(*r.coverage == 1.0);
    CHECK(*r.n_effective == doctest::Approx(10.0 / *r.vif).epsilon(1e-8));
}

TEST_CASE("distances depend on the direction") {
    Matrix xa(4, 1), xb(4, 1);
    xa << -1, -1, 1, 1;
    xb << -1, -1, 3, 3; // mean 1, variance 4
    const auto ab = diagnose(from_matrix(xa, {"x"}), from_matrix(xb, {"x"}));
    const auto ba = diagnose(from_matrix(xb, {"x"}), from_matrix(xa, {"x"}));
    CHECK(*ab.mahalanobis_m == doctest::Approx(1.0));
    CHECK(*ba.mahalanobis_m == doctest::Approx(0.25));
    CHECK(*ab.burg_d == doctest::Approx(4.0));
    CHECK(*ba.burg_d == doctest::Approx(0.25));
}

TEST_CASE("degenerate target column is flagged, not fatal") {
    Matrix xa(4, 2), xb(4, 2);
    xa << 1, 0, 2, 1, 3, 0, 4, 1;
    xb << 1, 5, 2, 5, 3, 5, 5, 5;
    const auto r = diagnose(from_matrix(xa, {"a", "b"}), from_matrix(xb, {"a", "b"}));
    CHECK(!r.covariates[0].degenerate);
    CHECK(r.covariates[1].degenerate);
    CHECK(!r.covariates[1].smd);
    CHECK_THROWS_AS(diagnose(from_matrix(xa, {"a", "b"}), from_matrix(xb, {"a", "c"})), Error);
}
