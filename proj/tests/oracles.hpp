// Test-only reference implementations, independent of the library's sparse
// application path: dense operator materialization, normal-equations solves,
// and finite differences.
#pragma once

#include <random>

#include <Eigen/Dense>

#include "srtk/degradation.hpp"
#include "srtk/solver.hpp"

namespace oracles {

inline Eigen::MatrixXd dense_matrix(const srtk::ObservationOperator& op) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(long(op.rows.size()),
                                              long(op.hr_width) * op.hr_height);
    for (std::size_t n = 0; n < op.rows.size(); ++n)
        for (const auto& e : op.rows[n]) m(long(n), e.index) += e.weight;
    return m;
}

inline Eigen::VectorXd to_vector(const srtk::Image& img) {
    Eigen::VectorXd v(long(img.data.size()));
    for (std::size_t i = 0; i < img.data.size(); ++i) v[long(i)] = img.data[i];
    return v;
}

inline srtk::Image to_image(const Eigen::VectorXd& v, int width, int height) {
    srtk::Image img(width, height, 0.0);
    for (long i = 0; i < v.size(); ++i) img.data[std::size_t(i)] = v[i];
    return img;
}

// Stacked forward matrix H = (H_1; ...; H_K) and observation vector Y.
inline Eigen::MatrixXd stacked_matrix(const srtk::ObservationSet& obs) {
    long cols = long(obs.hr_width) * obs.hr_height;
    long rows = 0;
    for (const auto& f : obs.frames) rows += long(f.op.rows.size());
    Eigen::MatrixXd h(rows, cols);
    long at = 0;
    for (const auto& f : obs.frames) {
        h.middleRows(at, long(f.op.rows.size())) = dense_matrix(f.op);
        at += long(f.op.rows.size());
    }
    return h;
}

inline Eigen::VectorXd stacked_rhs(const srtk::ObservationSet& obs) {
    long rows = 0;
    for (const auto& f : obs.frames) rows += long(f.g.data.size());
    Eigen::VectorXd y(rows);
    long at = 0;
    for (const auto& f : obs.frames) {
        y.segment(at, long(f.g.data.size())) = to_vector(f.g);
        at += long(f.g.data.size());
    }
    return y;
}

// Direct solve of (H^T H + lambda I) x = H^T Y.
inline srtk::Image solve_normal_equations(const srtk::ObservationSet& obs, double lambda) {
    Eigen::MatrixXd h = stacked_matrix(obs);
    Eigen::VectorXd y = stacked_rhs(obs);
    Eigen::MatrixXd a = h.transpose() * h;
    a.diagonal().array() += lambda;
    Eigen::VectorXd x = Eigen::FullPivLU<Eigen::MatrixXd>(a).solve(h.transpose() * y);
    return to_image(x, obs.hr_width, obs.hr_height);
}

// Central finite differences of the cost, per coordinate.
inline srtk::Image fd_cost_gradient(const srtk::ObservationSet& obs, const srtk::Image& x,
                                    double lambda, double h) {
    srtk::Image grad(x.width, x.height, 0.0);
    srtk::Image probe = x;
    for (std::size_t m = 0; m < x.data.size(); ++m) {
        double orig = probe.data[m];
        probe.data[m] = orig + h;
        double jp = srtk::cost(obs, probe, lambda);
        probe.data[m] = orig - h;
        double jm = srtk::cost(obs, probe, lambda);
        probe.data[m] = orig;
        grad.data[m] = (jp - jm) / (2.0 * h);
    }
    return grad;
}

inline srtk::Image random_image(int width, int height, double lo, double hi,
                                std::uint64_t seed) {
    srtk::Image img(width, height, 0.0);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    for (double& v : img.data) v = u(rng);
    return img;
}

}  // namespace oracles
