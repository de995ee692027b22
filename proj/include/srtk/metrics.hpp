#pragma once

#include <optional>

#include "srtk/image.hpp"

namespace srtk {

struct QualityReport {
    std::optional<double> psnr_db;  // nullopt = infinite (zero MSE)
    double mse = 0.0;
    long n_pixels = 0;
};

// Mean squared difference over all pixels.
double mse(const Image& a, const Image& b);

// 10 * log10(255^2 / mse); zero MSE reports the infinite sentinel.
QualityReport psnr(const Image& reference, const Image& test);

// Noise variance for a target SNR: mean(clean^2) / 10^(snr_db/10).
double sigma2_from_snr(const Image& clean, double snr_db);

// Robust AWGN variance estimate from the discrete Laplacian:
// (1.4826 * MAD(laplacian) / sqrt(20))^2. Needs at least 3x3 pixels.
double estimate_noise_variance(const Image& img);

}  // namespace srtk
