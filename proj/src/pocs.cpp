#include "srtk/pocs.hpp"

#include <algorithm>
#include <cmath>

#include "srtk/metrics.hpp"

namespace srtk {

double residual(const ObservationOperator& op, const Image& x, const Image& g, int n) {
    if (n < 0 || std::size_t(n) >= op.rows.size())
        throw input_error("residual: LR pixel index out of range");
    if (x.width != op.hr_width || x.height != op.hr_height)
        throw input_error("residual: HR image dimensions do not match the operator");
    if (g.width != op.lr_width || g.height != op.lr_height)
        throw input_error("residual: LR image dimensions do not match the operator");
    double s = 0.0;
    for (const auto& e : op.rows[n]) s += e.weight * x.data[e.index];
    return g.data[n] - s;
}

bool project_data_consistency(Image& x, const ObservationOperator& op, const Image& g, int n,
                              double phi0, double relaxation, long* skipped) {
    if (phi0 < 0.0) throw input_error("project_data_consistency: phi0 must be >= 0");
    double norm2 = op.row_norm2[std::size_t(n)];
    if (norm2 <= 0.0) {
        if (skipped) ++*skipped;
        return false;
    }
    double r = residual(op, x, g, n);
    double excess;
    if (r > phi0)
        excess = r - phi0;
    else if (r < -phi0)
        excess = r + phi0;
    else
        return false;  // already inside the set

    double scale = relaxation * excess / norm2;
    for (const auto& e : op.rows[n]) x.data[e.index] += scale * e.weight;
    return true;
}

Image project_amplitude(const Image& x) {
    Image out = x;
    project_amplitude_inplace(out);
    return out;
}

void project_amplitude_inplace(Image& x) {
    for (double& v : x.data) v = std::clamp(v, 0.0, 255.0);
}

double phi0_from_noise(double sigma2, const PocsConfig& cfg) {
    if (sigma2 < 0.0) throw input_error("phi0_from_noise: sigma2 must be >= 0");
    if (sigma2 == 0.0) return cfg.phi0_floor;
    return cfg.phi0_confidence * std::sqrt(sigma2);
}

PocsResult pocs_reconstruct(const ObservationSet& obs, const Image& x0, const PocsConfig& cfg,
                            const Image* ground_truth) {
    if (obs.frames.empty()) throw input_error("pocs_reconstruct: empty observation set");
    if (x0.width != obs.hr_width || x0.height != obs.hr_height)
        throw input_error("pocs_reconstruct: x0 dimensions do not match the observation set");
    if (cfg.max_iters < 1) throw input_error("pocs_reconstruct: max_iters must be >= 1");
    if (!(cfg.relaxation > 0.0 && cfg.relaxation <= 1.0))
        throw input_error("pocs_reconstruct: relaxation must be in (0,1]");

    double phi0 = phi0_from_noise(obs.sigma2, cfg);

    PocsResult result{x0, {}};
    Image& x = result.image;

    for (int it = 1; it <= cfg.max_iters; ++it) {
        Image prev = x;
        long violated = 0;
        for (const auto& frame : obs.frames) {
            int n_pixels = frame.op.lr_width * frame.op.lr_height;
            for (int n = 0; n < n_pixels; ++n) {
                if (project_data_consistency(x, frame.op, frame.g, n, phi0, cfg.relaxation,
                                             &result.trace.skipped_zero_norm_rows))
                    ++violated;
            }
        }
        project_amplitude_inplace(x);

        IterationRecord rec;
        rec.iter = it;
        rec.violated = violated;
        rec.rel_change = l2_distance(x, prev) / std::max(l2_norm(prev), 1.0);
        if (ground_truth) rec.psnr_db = psnr(*ground_truth, x).psnr_db;
        result.trace.records.push_back(rec);

        if (rec.rel_change < cfg.rel_tol) break;
    }
    return result;
}

}  // namespace srtk
