#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "svarkit/diagnostics.hpp"
#include "svarkit/error.hpp"
#include "svarkit/rng.hpp"

using namespace svarkit;
using svarkit::testing::mat2;
using svarkit::testing::simulate_var;

namespace {

Eigen::MatrixXd normal_matrix(int n, int k, std::uint64_t seed) {
    Rng rng(seed);
    Eigen::MatrixXd out(n, k);
    for (int t = 0; t < n; ++t) {
        for (int j = 0; j < k; ++j) out(t, j) = rng.normal();
    }
    return out;
}

const std::vector<Eigen::MatrixXd> kLags1{mat2(0.5, 0.1, 0.2, 0.3)};
const std::vector<Eigen::MatrixXd> kLags4{mat2(0.2, 0.05, 0.05, 0.1), mat2(0.1, 0.0, 0.05, 0.1),
                                          mat2(0.05, 0.0, 0.0, 0.05), mat2(0.05, 0.0, 0.0, 0.05)};
const Eigen::MatrixXd kChol = mat2(1.0, 0.0, 0.4, 0.8);

}  // namespace

TEST_CASE("Jarque-Bera on a sample with normal moments is zero") {
    const double r = 1.0 + std::numbers::sqrt2;
    Eigen::MatrixXd v(8, 2);
    v.col(0) << 0, 0, 0, 0, 1, -1, r, -r;
    v.col(1) << r, 0, -1, 0, 0, 1, 0, -r;
    const auto jb = jarque_bera(v);
    REQUIRE(jb.components.size() == 2);
    for (const auto& c : jb.components) {
        CHECK(std::fabs(c.skewness) < 1e-14);
        CHECK(std::fabs(c.kurtosis - 3.0) < 1e-14);
        CHECK(c.statistic < 1e-25);
        CHECK(c.p_value == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(jb.joint_df == 4);
}

TEST_CASE("Jarque-Bera hand computation and invariants") {
    Eigen::MatrixXd v(5, 1);
    v << 1, 2, 3, 4, 10;
    // mean 4; deviations -3,-2,-1,0,6; m2 = 10, m3 = 36, m4 = 278.8
    const double s = 36.0 / std::pow(10.0, 1.5);
    const double k = 278.8 / 100.0;
    const auto jb = jarque_bera(v);
    CHECK(jb.components[0].skewness == doctest::Approx(s).epsilon(1e-13));
    CHECK(jb.components[0].kurtosis == doctest::Approx(k).epsilon(1e-13));
    CHECK(jb.components[0].statistic ==
          doctest::Approx(5.0 * (s * s / 6.0 + (k - 3.0) * (k - 3.0) / 24.0)).epsilon(1e-13));

    const Eigen::MatrixXd x = normal_matrix(300, 2, 8).array().cube().matrix();
    const auto a = jarque_bera(x);
    Eigen::MatrixXd scaled = x;
    scaled.col(0) *= 123.4;
    scaled.col(1) *= 0.002;
    const auto b = jarque_bera(scaled);
    CHECK(std::fabs(a.joint_statistic - b.joint_statistic) < 1e-10 * a.joint_statistic);
    CHECK(a.joint_statistic == doctest::Approx(a.components[0].statistic + a.components[1].statistic));
    CHECK(a.joint_p_value < 1e-6);
    CHECK_THROWS_AS(jarque_bera(Eigen::MatrixXd::Ones(20, 2)), ModelError);
}

TEST_CASE("Monte Carlo: Jarque-Bera on Gaussian samples, T = 10000") {
    int accepted = 0;
    constexpr int kReps = 200;
    for (int r = 0; r < kReps; ++r) {
        if (jarque_bera(normal_matrix(10000, 2, split_seed(0x1b, static_cast<std::uint64_t>(r)))).joint_p_value > 0.05) {
            ++accepted;
        }
    }
    MESSAGE("JB non-rejections " << accepted << "/" << kReps);
    CHECK(accepted >= 190);
}

TEST_CASE("White test mechanics") {
    const Eigen::MatrixXd y = simulate_var(kLags1, kChol, Eigen::Vector2d(1, 1), 400, 3);
    const VarModel m = fit_var(y, 1);
    const auto w = white_test(m);
    CHECK(w.r_squared.size() == 3);
    CHECK(w.auxiliary_regressors == 5);
    CHECK(w.df == 3 * 4);
    CHECK(w.statistic >= 0.0);
    CHECK(w.p_value >= 0.0);
    CHECK(w.p_value <= 1.0);
    double sum = 0;
    for (double r2 : w.r_squared) sum += r2;
    CHECK(w.sum_r_squared_statistic == doctest::Approx(m.t_eff * sum).epsilon(1e-12));

    SUBCASE("shifting the regressors leaves the statistic unchanged") {
        const Eigen::MatrixXd x = m.regressors.rightCols(m.regressors.cols() - 1);
        const auto base = white_test(m.residuals, x);
        const Eigen::MatrixXd shifted = (x.array() + 17.0).matrix();
        const auto moved = white_test(m.residuals, shifted);
        CHECK(std::fabs(base.statistic - moved.statistic) < 1e-8);
        CHECK(std::fabs(base.sum_r_squared_statistic - moved.sum_r_squared_statistic) < 1e-8);
    }
    SUBCASE("collinear squares are dropped and recorded") {
        Eigen::MatrixXd x(m.t_eff, 3);
        x.leftCols(2) = m.regressors.rightCols(2);
        for (int t = 0; t < m.t_eff; ++t) x(t, 2) = t % 2;
        const auto d = white_test(m.residuals, x);
        CHECK(d.dropped_columns == std::vector<int>{5});
        CHECK(d.auxiliary_regressors == 6);
        CHECK(d.df == 3 * 5);
    }
    SUBCASE("single equation reduces to T R^2") {
        const Eigen::MatrixXd e = m.residuals.leftCols(1);
        const auto one = white_test(e, m.regressors.rightCols(2));
        CHECK(one.statistic == doctest::Approx(one.sum_r_squared_statistic).epsilon(1e-10));
    }
}

// VAR(4), the lag order typical of the empirical application.
TEST_CASE("Monte Carlo: White test size and power, T = 2000") {
    constexpr int kReps = 500;
    int size_rej = 0;
    int power_rej = 0;
    for (int r = 0; r < kReps; ++r) {
        const auto seed = split_seed(0x3417e, static_cast<std::uint64_t>(r));
        const Eigen::MatrixXd y0 = simulate_var(kLags4, kChol, Eigen::Vector2d(0, 0), 2000, seed);
        if (white_test(fit_var(y0, 4)).p_value < 0.05) ++size_rej;
        const Eigen::MatrixXd y1 = simulate_var(kLags4, kChol, Eigen::Vector2d(0, 0), 2000, seed ^ 0xabc,
                                                [](int t) { return t >= 1000 ? std::numbers::sqrt2 : 1.0; });
        if (white_test(fit_var(y1, 4)).p_value < 0.05) ++power_rej;
    }
    const double size = static_cast<double>(size_rej) / kReps;
    const double power = static_cast<double>(power_rej) / kReps;
    MESSAGE("White size " << size << ", power " << power);
    CHECK(size >= 0.02);
    CHECK(size <= 0.08);
    CHECK(power >= 0.80);
}

TEST_CASE("LM autocorrelation mechanics") {
    CHECK(lm_statistic(mat2(2, 0.3, 0.3, 1), mat2(2, 0.3, 0.3, 1), 100) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(std::fabs(lm_statistic(mat2(2, 0.3, 0.3, 1), mat2(2, 0.3, 0.3, 1), 100)) < 1e-10);
    const Eigen::MatrixXd y = simulate_var(kLags1, kChol, Eigen::Vector2d(1, 1), 400, 3);
    const VarModel m = fit_var(y, 1);
    for (int h = 1; h <= 4; ++h) {
        const auto e = lm_autocorrelation(m, h);
        CHECK(e.lag == h);
        CHECK(e.df == 4);
        CHECK(e.statistic >= 0.0);
        CHECK(e.p_value >= 0.0);
        CHECK(e.p_value <= 1.0);
    }
    CHECK_THROWS_AS(lm_autocorrelation(m, 0), DataError);
}

TEST_CASE("Monte Carlo: LM size on white noise and power against an underfit VAR, T = 2000") {
    constexpr int kReps = 500;
    std::vector<int> size_rej(4, 0);
    int power_rej = 0;
    const std::vector<Eigen::MatrixXd> lags2{mat2(0.3, 0.1, 0.1, 0.2), mat2(0.25, 0.0, 0.05, 0.25)};
    for (int r = 0; r < kReps; ++r) {
        const auto seed = split_seed(0x19, static_cast<std::uint64_t>(r));
        const VarModel wn = fit_var(normal_matrix(2000, 2, seed), 1);
        for (int h = 1; h <= 4; ++h) {
            if (lm_autocorrelation(wn, h).p_value < 0.05) ++size_rej[static_cast<std::size_t>(h - 1)];
        }
        const Eigen::MatrixXd y = simulate_var(lags2, kChol, Eigen::Vector2d(0, 0), 2000, seed ^ 0x77);
        if (lm_autocorrelation(fit_var(y, 1), 1).p_value < 0.05) ++power_rej;
    }
    for (int h = 1; h <= 4; ++h) {
        const double size = static_cast<double>(size_rej[static_cast<std::size_t>(h - 1)]) / kReps;
        MESSAGE("LM size at h=" << h << ": " << size);
        CHECK(size >= 0.02);
        CHECK(size <= 0.08);
    }
    MESSAGE("LM power " << static_cast<double>(power_rej) / kReps);
    CHECK(power_rej >= 400);
}

TEST_CASE("diagnose assembles every block") {
    const Eigen::MatrixXd y = simulate_var(kLags1, kChol, Eigen::Vector2d(1, 1), 300, 21);
    const VarModel m = fit_var(y, 1);
    const auto sm = identify_long_run(m);
    const std::vector<int> lags{1, 2, 3, 4};
    const auto rep = diagnose(sm, m, lags);
    CHECK(rep.lm.size() == 4);
    CHECK(rep.jb.components.size() == 2);
    CHECK(rep.white.df > 0);
    // Structural orthogonalization: JB runs on B^-1 e.
    const Eigen::MatrixXd v = sm.impact.fullPivLu().solve(m.residuals.transpose()).transpose();
    CHECK(rep.jb.joint_statistic == doctest::Approx(jarque_bera(v).joint_statistic).epsilon(1e-12));
}
