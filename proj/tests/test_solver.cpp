#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "srtk/metrics.hpp"
#include "srtk/solver.hpp"

using namespace srtk;

namespace {

ObservationSet random_problem(int size, int k, std::uint64_t seed, double snr_db = 0.0) {
    Image hr = oracles::random_image(size, size, 0.0, 255.0, seed);
    DegradationSpec spec;
    spec.blur_length = 3.0;
    spec.blur_angle_deg = 20.0;
    spec.decim_rows = 2;
    spec.decim_cols = 2;
    spec.seed = seed;
    if (snr_db > 0.0) spec.snr_db = snr_db;
    return synthesize(hr, k, spec, 2.0);
}

ObservationSet identity_set(int size, int k) {
    ObservationSet obs;
    obs.hr_width = size;
    obs.hr_height = size;
    DegradationSpec spec;
    for (int i = 0; i < k; ++i) {
        ObservationOperator op = build_operator(spec, size, size);
        obs.frames.push_back({Image(size, size, 0.0), std::move(op)});
    }
    return obs;
}

ObservationSet quarter_shift_set(const Image& hr) {
    ObservationSet obs;
    obs.hr_width = hr.width;
    obs.hr_height = hr.height;
    for (auto [dx, dy] : {std::pair{0.0, 0.0}, {0.5, 0.0}, {0.0, 0.5}, {0.5, 0.5}}) {
        DegradationSpec spec;
        spec.shift_x = dx;
        spec.shift_y = dy;
        spec.decim_rows = 2;
        spec.decim_cols = 2;
        ObservationOperator op = build_operator(spec, hr.width, hr.height);
        Image g = apply(op, hr);
        obs.frames.push_back({std::move(g), std::move(op)});
    }
    return obs;
}

}  // namespace

TEST_CASE("adaptive lambda is m*sigma2 + c") {
    CHECK(adaptive_lambda(123.0, {0.0, 0.5}) == 0.5);
    CHECK(adaptive_lambda(100.0, {1e-10, 0.0}) == doctest::Approx(1e-8).epsilon(1e-15));
    CHECK(adaptive_lambda(0.0, {1e-10, 0.0}) == 0.0);
    CHECK_THROWS_AS(adaptive_lambda(-1.0, {1.0, 0.0}), input_error);
}

TEST_CASE("adaptive lambda is affine in sigma2") {
    LambdaModel model{3.7e-4, 0.21};
    double base = adaptive_lambda(0.0, model);
    double one = adaptive_lambda(50.0, model);
    for (double a : {0.0, 0.5, 2.0, 10.0})
        CHECK(adaptive_lambda(a * 50.0, model) - base ==
              doctest::Approx(a * (one - base)).epsilon(1e-12));
}

TEST_CASE("cost of zero is the observation energy") {
    ObservationSet obs = random_problem(8, 3, 1);
    double expected = 0.0;
    for (const auto& f : obs.frames)
        for (double v : f.g.data) expected += v * v;
    Image zero(8, 8, 0.0);
    CHECK(cost(obs, zero, 0.0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("cost is zero on a noiseless pre-image") {
    Image hr = oracles::random_image(8, 8, 0.0, 255.0, 3);
    ObservationSet obs = quarter_shift_set(hr);
    CHECK(cost(obs, hr, 0.0) == 0.0);
}

TEST_CASE("cost hand example with the identity operator") {
    ObservationSet obs = identity_set(1, 1);
    obs.frames[0].g.data[0] = 4.0;
    Image x(1, 1, 2.0);
    CHECK(cost(obs, x, 1.0) == doctest::Approx(8.0).epsilon(1e-15));
}

TEST_CASE("gradient vanishes at a noiseless pre-image") {
    Image hr = oracles::random_image(8, 8, 0.0, 255.0, 5);
    ObservationSet obs = quarter_shift_set(hr);
    Image grad = cost_gradient(obs, hr, 0.0);
    for (double v : grad.data) CHECK(std::fabs(v) <= 1e-9);
}

TEST_CASE("gradient at the origin is the back-projection term") {
    ObservationSet obs = random_problem(8, 2, 9);
    Image zero(8, 8, 0.0);
    Image grad = cost_gradient(obs, zero, 5.0);
    Image expected(8, 8, 0.0);
    for (const auto& f : obs.frames) {
        Image bp = apply_adjoint(f.op, f.g);
        for (std::size_t m = 0; m < expected.data.size(); ++m)
            expected.data[m] -= 2.0 * bp.data[m];
    }
    for (std::size_t m = 0; m < grad.data.size(); ++m)
        CHECK(grad.data[m] == doctest::Approx(expected.data[m]).epsilon(1e-12));
}

TEST_CASE("gradient matches central finite differences") {
    for (int t = 0; t < 3; ++t) {
        ObservationSet obs = random_problem(8, 2, 100 + t, 20.0);
        Image x = oracles::random_image(8, 8, 0.0, 255.0, 200 + t);
        double lambda = 0.37;
        Image grad = cost_gradient(obs, x, lambda);
        Image fd = oracles::fd_cost_gradient(obs, x, lambda, 1e-4);
        for (std::size_t m = 0; m < grad.data.size(); ++m) {
            double denom = std::max({1.0, std::fabs(grad.data[m]), std::fabs(fd.data[m])});
            CHECK(std::fabs(grad.data[m] - fd.data[m]) / denom <= 1e-5);
        }
    }
}

TEST_CASE("operator norm of identity stacks") {
    CHECK(estimate_operator_norm(identity_set(4, 1), 10) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(estimate_operator_norm(identity_set(4, 5), 10) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("operator norm matches a dense eigenvalue solve") {
    ObservationSet obs = random_problem(8, 2, 77);
    Eigen::MatrixXd h = oracles::stacked_matrix(obs);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h.transpose() * h);
    double truth = eig.eigenvalues().maxCoeff();
    double est = estimate_operator_norm(obs, 100);
    CHECK(std::fabs(est - truth) <= 0.05 * truth);
}

TEST_CASE("huge lambda drives the solution toward zero") {
    ObservationSet obs = random_problem(8, 2, 31);
    Image x0 = initial_estimate(obs, 2, 2);
    RegSolverConfig cfg;
    cfg.lambda_model = {0.0, 1e6};
    cfg.max_iters = 200;
    cfg.rel_tol = 0.0;
    cfg.clamp_amplitude = false;
    SolveResult res = reconstruct_regularized(obs, x0, cfg);
    CHECK(l2_norm(res.image) < l2_norm(x0) / 10.0);
}

TEST_CASE("noiseless determined problem matches the dense solve") {
    Image hr = oracles::random_image(12, 12, 20.0, 235.0, 41);
    ObservationSet obs = quarter_shift_set(hr);
    double lambda_c = 1e-3;

    RegSolverConfig cfg;
    cfg.lambda_model = {0.0, lambda_c};
    cfg.max_iters = 30000;
    cfg.rel_tol = 0.0;
    cfg.clamp_amplitude = false;
    Image x0 = initial_estimate(obs, 2, 2);
    SolveResult res = reconstruct_regularized(obs, x0, cfg);

    Image direct = oracles::solve_normal_equations(obs, lambda_c);
    CHECK(l2_distance(res.image, direct) <= 1e-4 * l2_norm(direct));
}

TEST_CASE("J is non-increasing in pure mode") {
    ObservationSet obs = random_problem(8, 3, 51, 20.0);
    Image x0 = initial_estimate(obs, 2, 2);
    RegSolverConfig cfg;
    cfg.lambda_model = {1e-10, 0.0};
    cfg.max_iters = 100;
    cfg.rel_tol = 0.0;
    SolveResult res = reconstruct_regularized(obs, x0, cfg);
    REQUIRE(!res.trace.records.empty());
    for (std::size_t i = 1; i < res.trace.records.size(); ++i)
        CHECK(*res.trace.records[i].cost <= *res.trace.records[i - 1].cost);
}

TEST_CASE("larger lambda never grows the solution energy") {
    ObservationSet obs = random_problem(8, 2, 61, 20.0);
    Image x0 = initial_estimate(obs, 2, 2);
    RegSolverConfig cfg;
    cfg.max_iters = 5000;
    cfg.rel_tol = 0.0;
    cfg.clamp_amplitude = false;

    cfg.lambda_model = {0.0, 0.01};
    double norm_a = l2_norm(reconstruct_regularized(obs, x0, cfg).image);
    cfg.lambda_model = {0.0, 1.0};
    double norm_b = l2_norm(reconstruct_regularized(obs, x0, cfg).image);
    CHECK(norm_b <= norm_a * (1.0 + 1e-6));
}

TEST_CASE("hybrid mode runs POCS sweeps and stays finite") {
    ObservationSet obs = random_problem(8, 4, 71, 20.0);
    Image x0 = initial_estimate(obs, 2, 2);
    RegSolverConfig cfg;
    cfg.lambda_model = {1e-10, 0.0};
    cfg.hybrid_pocs = true;
    cfg.max_iters = 20;
    SolveResult res = reconstruct_regularized(obs, x0, cfg);
    for (double v : res.image.data) {
        CHECK(std::isfinite(v));
        CHECK(v >= 0.0);
        CHECK(v <= 255.0);
    }
}

TEST_CASE("reconstruct_regularized validates its inputs") {
    ObservationSet empty;
    empty.hr_width = 4;
    empty.hr_height = 4;
    RegSolverConfig cfg;
    CHECK_THROWS_AS(reconstruct_regularized(empty, Image(4, 4, 0.0), cfg), input_error);
}
