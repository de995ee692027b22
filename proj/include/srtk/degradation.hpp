#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "srtk/image.hpp"

namespace srtk {

// Parameters of one simulated acquisition: sub-pixel shift, linear motion
// blur, integer decimation, and additive white Gaussian noise at a given SNR
// (nullopt = noiseless). The seed makes every draw reproducible.
struct DegradationSpec {
    double shift_x = 0.0;  // pixels, along image columns
    double shift_y = 0.0;  // pixels, along image rows
    double blur_length = 1.0;
    double blur_angle_deg = 0.0;
    int decim_rows = 1;  // L1: vertical decimation factor
    int decim_cols = 1;  // L2: horizontal decimation factor
    std::optional<double> snr_db = std::nullopt;
    std::uint64_t seed = 0;
};

struct BlurTap {
    int di;  // row offset
    int dj;  // column offset
    double weight;
};

// Rasterized line-segment motion kernel: length taps at unit arc-length
// steps centered on the origin, each splatted bilinearly onto the integer
// grid, weights normalized to sum 1.
std::vector<BlurTap> build_blur_kernel(double length, double angle_deg);

struct OperatorEntry {
    int index;      // HR pixel index, row-major
    double weight;  // h(m1,m2; n1,n2)
};

// One frame's observation map from the HR grid to its LR grid: per LR pixel
// a sparse row of HR-pixel weights realizing shift -> blur -> box decimation.
// Edge replication guarantees every row is nonempty and sums to 1.
struct ObservationOperator {
    int hr_width = 0, hr_height = 0;
    int lr_width = 0, lr_height = 0;
    double shift_x = 0.0, shift_y = 0.0;  // true shift used (motion is known)
    int decim_rows = 1, decim_cols = 1;
    std::vector<std::vector<OperatorEntry>> rows;  // one per LR pixel, raster order
    std::vector<double> row_norm2;                 // sum of squared weights per row
};

ObservationOperator build_operator(const DegradationSpec& spec, int hr_width, int hr_height);

// LR prediction: out[n] = sum over the row of weight * x[index].
Image apply(const ObservationOperator& op, const Image& x);

// Transpose map: out[m] = sum over LR pixels n of weight(n,m) * g[n].
Image apply_adjoint(const ObservationOperator& op, const Image& g);

struct NoisyImage {
    Image image;
    double sigma2;
};

// sigma2 = mean(img^2) / 10^(snr_db/10); adds seeded zero-mean Gaussian noise
// of that variance. Values are not clamped. nullopt snr = image unchanged.
NoisyImage add_awgn(const Image& img, std::optional<double> snr_db, std::uint64_t seed);

struct ObservedFrame {
    Image g;                 // observed LR image
    ObservationOperator op;  // its known forward map
};

struct ObservationSet {
    int hr_width = 0, hr_height = 0;
    double sigma2 = 0.0;  // AWGN variance actually used (0 if noiseless)
    std::vector<ObservedFrame> frames;
};

// Simulates frame_count acquisitions of hr: per-frame shifts drawn uniformly
// from [-shift_range, shift_range]^2 (deterministic from base.seed), the
// spec's blur/decimation, and fresh AWGN. sigma2 is computed once from frame
// 1's clean LR signal power and reused for all frames.
ObservationSet synthesize(const Image& hr, int frame_count, const DegradationSpec& base,
                          double shift_range = 10.0);

// Starting estimate for the iterative solvers: each LR frame upsampled by
// (L1, L2) with bilinear interpolation, shifted back by the negation of its
// known shift, averaged over frames, clamped to [0,255].
Image initial_estimate(const ObservationSet& obs, int decim_rows, int decim_cols);

}  // namespace srtk
