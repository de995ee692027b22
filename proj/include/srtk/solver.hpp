#pragma once

#include "srtk/pocs.hpp"

namespace srtk {

// lambda = m * sigma2 + c, a regularization strength linear in noise variance.
struct LambdaModel {
    double m = 0.0;
    double c = 0.0;
};

double adaptive_lambda(double sigma2, const LambdaModel& model);

enum class StepPolicy {
    PowerIteration,  // beta = 1 / (largest-eigenvalue estimate + lambda)
    Fixed,           // beta = fixed_step
};

struct RegSolverConfig {
    LambdaModel lambda_model;
    int max_iters = 50;
    double rel_tol = 1e-6;
    StepPolicy step_policy = StepPolicy::PowerIteration;
    double fixed_step = 0.0;
    int power_iters = 50;
    bool hybrid_pocs = false;    // interleave one POCS sweep per iteration
    bool clamp_amplitude = true; // project onto [0,255] each iteration
    PocsConfig pocs_cfg;         // phi0/relaxation used in hybrid mode
};

// J(X) = sum_k ||G_k - H_k x||^2 + lambda ||x||^2.
double cost(const ObservationSet& obs, const Image& x, double lambda);

// grad J = -2 sum_k H_k^T (G_k - H_k x) + 2 lambda x.
Image cost_gradient(const ObservationSet& obs, const Image& x, double lambda);

// Power iteration on x -> sum_k H_k^T H_k x; largest-eigenvalue estimate.
double estimate_operator_norm(const ObservationSet& obs, int iters);

struct SolveResult {
    Image image;
    ReconstructionTrace trace;
};

// Projected gradient descent on J with lambda = adaptive_lambda(obs.sigma2).
// In pure mode the step backtracks (halving) so the recorded J sequence is
// non-increasing. In hybrid mode each gradient step is followed by one POCS
// data-consistency sweep and an amplitude clamp.
SolveResult reconstruct_regularized(const ObservationSet& obs, const Image& x0,
                                    const RegSolverConfig& cfg,
                                    const Image* ground_truth = nullptr);

}  // namespace srtk
