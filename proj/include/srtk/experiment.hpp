#pragma once

#include <string>
#include <vector>

#include "srtk/config.hpp"
#include "srtk/metrics.hpp"

namespace srtk {

// 8-bit quantization used at file output: clamp to [0,255], round half-up.
Image quantize_to_8bit(const Image& img);

// Short label for report rows ("blob" for builtin:blob:128, file stem otherwise).
std::string image_label(const std::string& input_spec);

std::string format_psnr(const QualityReport& rep);  // "inf" or 2 decimals

struct RunOutcome {
    Image reconstruction;  // real-valued result
    ReconstructionTrace trace;
    QualityReport report;  // PSNR of the 8-bit-quantized result vs the HR input
};

// Runs one algorithm on an already synthesized observation set.
RunOutcome run_algorithm(const ExperimentConfig& cfg, Algorithm algorithm, const Image& hr,
                         const ObservationSet& obs);

// Full single experiment: synthesize, reconstruct with cfg.algorithm, write
// the reconstructed PGM, the per-iteration trace CSV, and a report.csv line.
QualityReport run_single(const ExperimentConfig& cfg);

// Synthesize only: writes the LR frames as PGM plus a manifest with the true
// per-frame shifts and the noise variance.
void run_degrade(const ExperimentConfig& cfg);

// Table-I style sweep: for each m runs the solver with lambda = m*sigma2 (c
// forced to 0) and reports PSNR; one CSV row per image, one column per m,
// plus the argmax column. cfg.algorithm selects regularized or the hybrid.
std::string run_m_sweep(const ExperimentConfig& cfg, const std::vector<double>& m_values);

// Table-II style comparison: per config, POCS and proposed-hybrid run on the
// same synthesized observations; rows image,size,frames,psnr_pocs,
// psnr_proposed,delta.
std::string run_comparison(const std::vector<ExperimentConfig>& cfgs);

}  // namespace srtk
