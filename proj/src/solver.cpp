#include "srtk/solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "srtk/metrics.hpp"

namespace srtk {

double adaptive_lambda(double sigma2, const LambdaModel& model) {
    if (sigma2 < 0.0) throw input_error("adaptive_lambda: sigma2 must be >= 0");
    if (model.m < 0.0 || model.c < 0.0)
        throw input_error("adaptive_lambda: m and c must be >= 0");
    return model.m * sigma2 + model.c;
}

double cost(const ObservationSet& obs, const Image& x, double lambda) {
    if (lambda < 0.0) throw input_error("cost: lambda must be >= 0");
    if (x.width != obs.hr_width || x.height != obs.hr_height)
        throw input_error("cost: image dimensions do not match the observation set");
    double j = 0.0;
    for (const auto& frame : obs.frames) {
        Image pred = apply(frame.op, x);
        for (std::size_t n = 0; n < pred.data.size(); ++n) {
            double d = frame.g.data[n] - pred.data[n];
            j += d * d;
        }
    }
    for (double v : x.data) j += lambda * v * v;
    return j;
}

Image cost_gradient(const ObservationSet& obs, const Image& x, double lambda) {
    if (x.width != obs.hr_width || x.height != obs.hr_height)
        throw input_error("cost_gradient: image dimensions do not match the observation set");
    Image grad(x.width, x.height, 0.0);
    for (const auto& frame : obs.frames) {
        Image res = apply(frame.op, x);
        for (std::size_t n = 0; n < res.data.size(); ++n)
            res.data[n] = frame.g.data[n] - res.data[n];
        Image back = apply_adjoint(frame.op, res);
        for (std::size_t m = 0; m < grad.data.size(); ++m)
            grad.data[m] -= 2.0 * back.data[m];
    }
    for (std::size_t m = 0; m < grad.data.size(); ++m)
        grad.data[m] += 2.0 * lambda * x.data[m];
    return grad;
}

double estimate_operator_norm(const ObservationSet& obs, int iters) {
    if (obs.frames.empty()) throw input_error("estimate_operator_norm: empty observation set");
    if (iters < 1) throw input_error("estimate_operator_norm: iters must be >= 1");

    Image v(obs.hr_width, obs.hr_height, 1.0);
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> jitter(-0.5, 0.5);
    for (double& e : v.data) e += jitter(rng);

    double eig = 0.0;
    for (int it = 0; it < iters; ++it) {
        Image av(obs.hr_width, obs.hr_height, 0.0);
        for (const auto& frame : obs.frames) {
            Image hv = apply(frame.op, v);
            Image hthv = apply_adjoint(frame.op, hv);
            for (std::size_t m = 0; m < av.data.size(); ++m) av.data[m] += hthv.data[m];
        }
        double vv = 0.0, vav = 0.0;
        for (std::size_t m = 0; m < v.data.size(); ++m) {
            vv += v.data[m] * v.data[m];
            vav += v.data[m] * av.data[m];
        }
        eig = vav / vv;
        double norm = l2_norm(av);
        if (norm == 0.0) return 0.0;
        for (std::size_t m = 0; m < v.data.size(); ++m) v.data[m] = av.data[m] / norm;
    }
    return eig;
}

namespace {

// One Gauss-Seidel data-consistency sweep, as in pocs_reconstruct.
long pocs_sweep(Image& x, const ObservationSet& obs, double phi0, double relaxation,
                long* skipped) {
    long violated = 0;
    for (const auto& frame : obs.frames) {
        int n_pixels = frame.op.lr_width * frame.op.lr_height;
        for (int n = 0; n < n_pixels; ++n) {
            if (project_data_consistency(x, frame.op, frame.g, n, phi0, relaxation, skipped))
                ++violated;
        }
    }
    return violated;
}

}  // namespace

SolveResult reconstruct_regularized(const ObservationSet& obs, const Image& x0,
                                    const RegSolverConfig& cfg, const Image* ground_truth) {
    if (obs.frames.empty()) throw input_error("reconstruct_regularized: empty observation set");
    if (x0.width != obs.hr_width || x0.height != obs.hr_height)
        throw input_error("reconstruct_regularized: x0 dimensions do not match");
    if (cfg.max_iters < 1) throw input_error("reconstruct_regularized: max_iters must be >= 1");

    double lambda = adaptive_lambda(obs.sigma2, cfg.lambda_model);

    double beta0;
    if (cfg.step_policy == StepPolicy::Fixed) {
        if (cfg.fixed_step <= 0.0)
            throw input_error("reconstruct_regularized: fixed step must be > 0");
        beta0 = cfg.fixed_step;
    } else {
        double norm_est = estimate_operator_norm(obs, cfg.power_iters);
        beta0 = 1.0 / (norm_est + lambda);
    }

    double phi0 = cfg.hybrid_pocs ? phi0_from_noise(obs.sigma2, cfg.pocs_cfg) : 0.0;

    SolveResult result{x0, {}};
    Image& x = result.image;
    double j_prev = cost(obs, x, lambda);

    for (int it = 1; it <= cfg.max_iters; ++it) {
        Image grad = cost_gradient(obs, x, lambda);

        Image candidate = x;
        double beta = beta0;
        double j_cand = j_prev;
        bool moved = false;
        for (int bt = 0; bt < 60; ++bt) {
            candidate = x;
            for (std::size_t m = 0; m < x.data.size(); ++m)
                candidate.data[m] = x.data[m] - beta * grad.data[m];
            if (cfg.clamp_amplitude) project_amplitude_inplace(candidate);
            j_cand = cost(obs, candidate, lambda);
            if (cfg.hybrid_pocs) {
                moved = true;
                break;
            }
            // Armijo sufficient decrease; <g, dx> <= 0 for a projected
            // gradient step, so acceptance implies J is non-increasing.
            double gdx = 0.0;
            for (std::size_t m = 0; m < x.data.size(); ++m)
                gdx += grad.data[m] * (candidate.data[m] - x.data[m]);
            if (j_cand <= j_prev + 1e-4 * gdx) {
                moved = true;
                break;
            }
            beta *= 0.5;
        }
        if (!moved) {
            // Step underflowed without descent; x is numerically stationary.
            candidate = x;
            j_cand = j_prev;
        }

        long violated = 0;
        if (cfg.hybrid_pocs) {
            violated = pocs_sweep(candidate, obs, phi0, cfg.pocs_cfg.relaxation,
                                  &result.trace.skipped_zero_norm_rows);
            if (cfg.clamp_amplitude) project_amplitude_inplace(candidate);
            j_cand = cost(obs, candidate, lambda);
        }

        IterationRecord rec;
        rec.iter = it;
        rec.violated = violated;
        rec.rel_change = l2_distance(candidate, x) / std::max(l2_norm(x), 1.0);
        rec.cost = j_cand;
        if (ground_truth) rec.psnr_db = psnr(*ground_truth, candidate).psnr_db;
        result.trace.records.push_back(rec);

        x = std::move(candidate);
        j_prev = j_cand;
        if (rec.rel_change < cfg.rel_tol) break;
    }
    return result;
}

}  // namespace srtk
