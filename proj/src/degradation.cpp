#include "srtk/degradation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace srtk {

namespace {

constexpr double kPi = 3.14159265358979323846;

int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

// Per-frame noise stream decorrelated from the shift stream.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t k) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (k + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::vector<BlurTap> build_blur_kernel(double length, double angle_deg) {
    if (length < 1.0)
        throw input_error("blur length must be >= 1 (got " + std::to_string(length) + ")");

    int n_taps = std::max(1, int(std::lround(length)));
    double theta = angle_deg * kPi / 180.0;
    double ux = std::cos(theta);
    double uy = std::sin(theta);

    // Accumulate bilinear splats on a small map keyed by (di, dj).
    std::vector<BlurTap> taps;
    auto splat = [&taps](int di, int dj, double w) {
        if (w == 0.0) return;
        for (auto& t : taps) {
            if (t.di == di && t.dj == dj) {
                t.weight += w;
                return;
            }
        }
        taps.push_back({di, dj, w});
    };

    double mass = 1.0 / n_taps;
    for (int s = 0; s < n_taps; ++s) {
        double t = s - 0.5 * (n_taps - 1);
        double x = t * ux;
        double y = t * uy;
        int x0 = int(std::floor(x));
        int y0 = int(std::floor(y));
        double fx = x - x0;
        double fy = y - y0;
        splat(y0, x0, mass * (1.0 - fx) * (1.0 - fy));
        splat(y0, x0 + 1, mass * fx * (1.0 - fy));
        splat(y0 + 1, x0, mass * (1.0 - fx) * fy);
        splat(y0 + 1, x0 + 1, mass * fx * fy);
    }

    double sum = 0.0;
    for (const auto& t : taps) sum += t.weight;
    for (auto& t : taps) t.weight /= sum;
    std::sort(taps.begin(), taps.end(), [](const BlurTap& a, const BlurTap& b) {
        return a.di != b.di ? a.di < b.di : a.dj < b.dj;
    });
    return taps;
}

ObservationOperator build_operator(const DegradationSpec& spec, int hr_width, int hr_height) {
    if (hr_width < 1 || hr_height < 1) throw input_error("HR dimensions must be positive");
    if (spec.decim_rows < 1 || spec.decim_cols < 1)
        throw input_error("decimation factors must be >= 1");
    if (hr_height % spec.decim_rows != 0 || hr_width % spec.decim_cols != 0)
        throw input_error("HR dimensions must be divisible by the decimation factors");

    const int L1 = spec.decim_rows;
    const int L2 = spec.decim_cols;
    const auto blur = build_blur_kernel(spec.blur_length, spec.blur_angle_deg);

    ObservationOperator op;
    op.hr_width = hr_width;
    op.hr_height = hr_height;
    op.lr_width = hr_width / L2;
    op.lr_height = hr_height / L1;
    op.shift_x = spec.shift_x;
    op.shift_y = spec.shift_y;
    op.decim_rows = L1;
    op.decim_cols = L2;
    op.rows.resize(std::size_t(op.lr_width) * op.lr_height);
    op.row_norm2.resize(op.rows.size());

    const double block_w = 1.0 / (L1 * L2);
    std::vector<OperatorEntry> scratch;

    for (int n1 = 0; n1 < op.lr_height; ++n1) {
        for (int n2 = 0; n2 < op.lr_width; ++n2) {
            scratch.clear();
            // Box-average decimation over the (L1 x L2) block ...
            for (int bi = 0; bi < L1; ++bi) {
                for (int bj = 0; bj < L2; ++bj) {
                    int pi = n1 * L1 + bi;
                    int pj = n2 * L2 + bj;
                    // ... of the blurred warped image ...
                    for (const auto& tap : blur) {
                        int qi = clampi(pi + tap.di, 0, hr_height - 1);
                        int qj = clampi(pj + tap.dj, 0, hr_width - 1);
                        double wb = block_w * tap.weight;
                        // ... where the warp samples the HR image bilinearly
                        // at the shifted position.
                        BilinearTaps bt = bilinear_taps(hr_width, hr_height,
                                                        qj + spec.shift_x, qi + spec.shift_y);
                        for (int i = 0; i < 4; ++i) {
                            if (bt.weight[i] != 0.0)
                                scratch.push_back({bt.index[i], wb * bt.weight[i]});
                        }
                    }
                }
            }
            std::sort(scratch.begin(), scratch.end(),
                      [](const OperatorEntry& a, const OperatorEntry& b) {
                          return a.index < b.index;
                      });
            auto& row = op.rows[std::size_t(n1) * op.lr_width + n2];
            for (const auto& e : scratch) {
                if (!row.empty() && row.back().index == e.index)
                    row.back().weight += e.weight;
                else
                    row.push_back(e);
            }
            double norm2 = 0.0;
            for (const auto& e : row) norm2 += e.weight * e.weight;
            op.row_norm2[std::size_t(n1) * op.lr_width + n2] = norm2;
        }
    }
    return op;
}

Image apply(const ObservationOperator& op, const Image& x) {
    if (x.width != op.hr_width || x.height != op.hr_height)
        throw input_error("apply: image dimensions do not match the operator's HR grid");
    Image out(op.lr_width, op.lr_height, 0.0);
    for (std::size_t n = 0; n < op.rows.size(); ++n) {
        double s = 0.0;
        for (const auto& e : op.rows[n]) s += e.weight * x.data[e.index];
        out.data[n] = s;
    }
    return out;
}

Image apply_adjoint(const ObservationOperator& op, const Image& g) {
    if (g.width != op.lr_width || g.height != op.lr_height)
        throw input_error("apply_adjoint: image dimensions do not match the operator's LR grid");
    Image out(op.hr_width, op.hr_height, 0.0);
    for (std::size_t n = 0; n < op.rows.size(); ++n) {
        double v = g.data[n];
        for (const auto& e : op.rows[n]) out.data[e.index] += e.weight * v;
    }
    return out;
}

NoisyImage add_awgn(const Image& img, std::optional<double> snr_db, std::uint64_t seed) {
    if (img.data.empty()) throw input_error("add_awgn: empty image");
    if (!snr_db) return {img, 0.0};

    double power = 0.0;
    for (double v : img.data) power += v * v;
    power /= double(img.data.size());
    double sigma2 = power / std::pow(10.0, *snr_db / 10.0);

    NoisyImage out{img, sigma2};
    if (sigma2 > 0.0) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> noise(0.0, std::sqrt(sigma2));
        for (double& v : out.image.data) v += noise(rng);
    }
    return out;
}

ObservationSet synthesize(const Image& hr, int frame_count, const DegradationSpec& base,
                          double shift_range) {
    if (frame_count < 1) throw input_error("synthesize: frame count must be >= 1");

    std::mt19937_64 shift_rng(base.seed);
    std::uniform_real_distribution<double> shift(-shift_range, shift_range);

    ObservationSet obs;
    obs.hr_width = hr.width;
    obs.hr_height = hr.height;

    double sigma2 = 0.0;
    for (int k = 0; k < frame_count; ++k) {
        DegradationSpec spec = base;
        spec.shift_x = shift(shift_rng);
        spec.shift_y = shift(shift_rng);

        ObservationOperator op = build_operator(spec, hr.width, hr.height);
        Image clean = apply(op, hr);

        if (k == 0 && base.snr_db) {
            double power = 0.0;
            for (double v : clean.data) power += v * v;
            power /= double(clean.data.size());
            sigma2 = power / std::pow(10.0, *base.snr_db / 10.0);
        }

        Image g = clean;
        if (sigma2 > 0.0) {
            std::mt19937_64 noise_rng(mix_seed(base.seed, std::uint64_t(k)));
            std::normal_distribution<double> noise(0.0, std::sqrt(sigma2));
            for (double& v : g.data) v += noise(noise_rng);
        }
        obs.frames.push_back({std::move(g), std::move(op)});
    }
    obs.sigma2 = sigma2;
    return obs;
}

Image initial_estimate(const ObservationSet& obs, int decim_rows, int decim_cols) {
    if (obs.frames.empty()) throw input_error("initial_estimate: empty observation set");
    const int L1 = decim_rows;
    const int L2 = decim_cols;
    // Box decimation of a (L1 x L2) block centers at offset (L-1)/2.
    const double off_y = 0.5 * (L1 - 1);
    const double off_x = 0.5 * (L2 - 1);

    Image acc(obs.hr_width, obs.hr_height, 0.0);
    for (const auto& frame : obs.frames) {
        for (int i = 0; i < acc.height; ++i) {
            for (int j = 0; j < acc.width; ++j) {
                double x = (j - frame.op.shift_x - off_x) / L2;
                double y = (i - frame.op.shift_y - off_y) / L1;
                acc.at(i, j) += bilinear_sample(frame.g, x, y);
            }
        }
    }
    double inv_k = 1.0 / double(obs.frames.size());
    for (double& v : acc.data) v = std::clamp(v * inv_k, 0.0, 255.0);
    return acc;
}

}  // namespace srtk
