#pragma once

#include <optional>
#include <vector>

#include "srtk/degradation.hpp"

namespace srtk {

struct PocsConfig {
    double phi0_confidence = 3.0;  // phi0 = confidence * sqrt(sigma2); 3-sigma bound
    double phi0_floor = 0.0;       // phi0 when sigma2 = 0
    double relaxation = 1.0;       // in (0, 1]
    int max_iters = 50;
    double rel_tol = 1e-4;  // stop when ||x_t+1 - x_t|| / max(||x_t||, 1) < rel_tol
};

struct IterationRecord {
    int iter = 0;
    long violated = 0;  // constraints outside the deadband this sweep
    double rel_change = 0.0;
    std::optional<double> cost;     // J value (regularized solver only)
    std::optional<double> psnr_db;  // vs ground truth, when provided
};

struct ReconstructionTrace {
    std::vector<IterationRecord> records;
    long skipped_zero_norm_rows = 0;
};

// r = g[n] - sum over the row of weight * x[index].
double residual(const ObservationOperator& op, const Image& x, const Image& g, int n);

// Relaxed projection of x onto the data-consistency set of LR pixel n:
// residuals beyond the +-phi0 deadband are pulled back onto its boundary
// along the row direction, scaled by the row's squared norm. Returns true
// when x was updated. Zero-norm rows are skipped and counted in *skipped.
bool project_data_consistency(Image& x, const ObservationOperator& op, const Image& g, int n,
                              double phi0, double relaxation, long* skipped = nullptr);

// Pixel-wise clamp to [0,255].
Image project_amplitude(const Image& x);
void project_amplitude_inplace(Image& x);

// phi0 = phi0_confidence * sqrt(sigma2), or phi0_floor when sigma2 = 0.
double phi0_from_noise(double sigma2, const PocsConfig& cfg);

struct PocsResult {
    Image image;
    ReconstructionTrace trace;
};

// Gauss-Seidel POCS: per outer iteration, sweep frames in index order and LR
// pixels in raster order with immediate updates, then clamp amplitudes once.
// Deterministic given its inputs. ground_truth, when given, only adds PSNR
// to the trace.
PocsResult pocs_reconstruct(const ObservationSet& obs, const Image& x0, const PocsConfig& cfg,
                            const Image* ground_truth = nullptr);

}  // namespace srtk
