#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "srtk/experiment.hpp"
#include "srtk/pgm_io.hpp"
#include "srtk/testimages.hpp"

namespace {

// Options shared by the synthesis subcommands. Flags override config-file
// keys, so everything funnels through a KeyValues overlay.
struct CommonOpts {
    std::string config_path;
    std::vector<std::pair<std::string, std::string>> overrides;

    srtk::ExperimentConfig resolve() const {
        srtk::KeyValues kv;
        if (!config_path.empty()) kv = srtk::KeyValues::load(config_path);
        for (const auto& [key, value] : overrides) kv.set(key, value);
        return srtk::ExperimentConfig::from_keyvalues(kv);
    }
};

void add_common_options(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "config file (key = value lines)");

    auto add = [cmd, &opts](const std::string& flag, const std::string& key,
                            const std::string& help, bool required = false) {
        auto* opt = cmd->add_option_function<std::string>(
            flag, [&opts, key](const std::string& v) { opts.overrides.emplace_back(key, v); },
            help);
        if (required) opt->required();
    };
    add("--input,-i", "input", "HR image: PGM path or builtin:<name>:<size>");
    add("--seed", "seed", "RNG seed for synthesis", /*required=*/true);
    add("--frames,-k", "frames", "number of LR frames");
    add("--blur-length", "blur.length", "motion blur length in pixels");
    add("--blur-angle", "blur.angle", "motion blur angle in degrees");
    add("--l1", "decimation.l1", "vertical decimation factor");
    add("--l2", "decimation.l2", "horizontal decimation factor");
    add("--snr", "snr_db", "AWGN SNR in dB, or 'noiseless'");
    add("--shift-range", "shift.range", "uniform shift range in pixels");
    add("--algorithm,-a", "algorithm", "pocs | regularized | proposed-hybrid");
    add("--pocs-iters", "pocs.max_iters", "POCS sweep count");
    add("--phi0-confidence", "pocs.phi0_confidence", "phi0 multiplier on sigma");
    add("--relaxation", "pocs.relaxation", "POCS relaxation factor in (0,1]");
    add("--m", "solver.m", "lambda model weight m");
    add("--c", "solver.c", "lambda model offset c");
    add("--solver-iters", "solver.max_iters", "gradient iteration limit");
    add("--output-dir,-o", "output_dir", "output directory");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-frame super-resolution reconstruction"};
    app.require_subcommand(1);

    CommonOpts degrade_opts, recon_opts, sweep_opts;
    std::vector<double> m_values = {1e-1, 1e-3, 1e-5, 1e-10, 1e-12};

    auto* degrade = app.add_subcommand("degrade", "synthesize LR frames and a manifest");
    add_common_options(degrade, degrade_opts);

    auto* reconstruct = app.add_subcommand("reconstruct", "run one reconstruction");
    add_common_options(reconstruct, recon_opts);

    auto* sweep = app.add_subcommand("sweep-m", "PSNR sweep over lambda weights m (c = 0)");
    add_common_options(sweep, sweep_opts);
    sweep->add_option("--m-values", m_values, "m grid for the sweep");

    auto* compare = app.add_subcommand("compare", "POCS vs proposed on shared observations");
    std::vector<std::string> compare_configs;
    CommonOpts compare_opts;
    add_common_options(compare, compare_opts);
    compare->add_option("configs", compare_configs, "additional config files (one row each)");

    auto* psnr_cmd = app.add_subcommand("psnr", "PSNR between two images");
    std::string ref_path, test_path;
    psnr_cmd->add_option("reference", ref_path, "reference image")->required();
    psnr_cmd->add_option("test", test_path, "test image")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*degrade) {
            srtk::run_degrade(degrade_opts.resolve());
        } else if (*reconstruct) {
            srtk::ExperimentConfig cfg = recon_opts.resolve();
            srtk::QualityReport rep = srtk::run_single(cfg);
            std::cout << srtk::image_label(cfg.input) << "," << srtk::to_string(cfg.algorithm)
                      << ",psnr_db=" << srtk::format_psnr(rep) << "\n";
        } else if (*sweep) {
            srtk::ExperimentConfig cfg = sweep_opts.resolve();
            std::cout << srtk::run_m_sweep(cfg, m_values);
        } else if (*compare) {
            std::vector<srtk::ExperimentConfig> cfgs;
            for (const auto& path : compare_configs) {
                CommonOpts per = compare_opts;
                per.config_path = path;
                cfgs.push_back(per.resolve());
            }
            if (cfgs.empty()) cfgs.push_back(compare_opts.resolve());
            std::cout << srtk::run_comparison(cfgs);
        } else if (*psnr_cmd) {
            srtk::Image ref = srtk::load_input_image(ref_path);
            srtk::Image test = srtk::load_input_image(test_path);
            std::cout << "psnr_db=" << srtk::format_psnr(srtk::psnr(ref, test)) << "\n";
        }
    } catch (const srtk::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const srtk::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const srtk::numeric_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
