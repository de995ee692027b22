#include "srtk/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace srtk {

double mse(const Image& a, const Image& b) {
    if (!a.same_dims(b)) throw input_error("mse: image dimensions differ");
    double s = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        double d = a.data[i] - b.data[i];
        s += d * d;
    }
    return s / double(a.data.size());
}

QualityReport psnr(const Image& reference, const Image& test) {
    QualityReport rep;
    rep.mse = mse(reference, test);
    rep.n_pixels = long(reference.data.size());
    if (rep.mse > 0.0) rep.psnr_db = 10.0 * std::log10(255.0 * 255.0 / rep.mse);
    return rep;
}

double sigma2_from_snr(const Image& clean, double snr_db) {
    if (clean.data.empty()) throw input_error("sigma2_from_snr: empty image");
    double power = 0.0;
    for (double v : clean.data) power += v * v;
    power /= double(clean.data.size());
    return power / std::pow(10.0, snr_db / 10.0);
}

double estimate_noise_variance(const Image& img) {
    if (img.width < 3 || img.height < 3)
        throw input_error("estimate_noise_variance: image must be at least 3x3");

    // 5-point Laplacian on interior pixels; its AWGN gain is sqrt(1+1+1+1+16) = sqrt(20).
    std::vector<double> lap;
    lap.reserve(std::size_t(img.width - 2) * (img.height - 2));
    for (int i = 1; i < img.height - 1; ++i) {
        for (int j = 1; j < img.width - 1; ++j) {
            lap.push_back(img.at(i - 1, j) + img.at(i + 1, j) + img.at(i, j - 1) +
                          img.at(i, j + 1) - 4.0 * img.at(i, j));
        }
    }

    auto median_of = [](std::vector<double>& v) {
        std::size_t mid = v.size() / 2;
        std::nth_element(v.begin(), v.begin() + mid, v.end());
        double m = v[mid];
        if (v.size() % 2 == 0) {
            std::nth_element(v.begin(), v.begin() + mid - 1, v.begin() + mid);
            m = 0.5 * (m + v[mid - 1]);
        }
        return m;
    };

    double med = median_of(lap);
    for (double& v : lap) v = std::fabs(v - med);
    double mad = median_of(lap);

    double sigma = 1.4826 * mad / std::sqrt(20.0);
    return sigma * sigma;
}

}  // namespace srtk
