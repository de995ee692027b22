#pragma once

#include <map>
#include <string>
#include <vector>

#include "srtk/pocs.hpp"
#include "srtk/solver.hpp"

namespace srtk {

// Flat `key = value` store with '#' comments; keys keep insertion order.
class KeyValues {
  public:
    static KeyValues parse(const std::string& text);
    static KeyValues load(const std::string& path);

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;
    const std::string& get(const std::string& key) const;

    std::string serialize() const;

  private:
    std::map<std::string, std::string> values_;
    std::vector<std::string> order_;
};

enum class Algorithm { Pocs, Regularized, ProposedHybrid };

Algorithm algorithm_from_string(const std::string& name);
std::string to_string(Algorithm a);

// One experiment: input image, degradation protocol, and solver settings.
struct ExperimentConfig {
    std::string input;  // PGM path or "builtin:<name>:<size>"
    int frames = 4;
    double blur_length = 5.0;
    double blur_angle_deg = 5.0;
    int decim_rows = 2;  // L1
    int decim_cols = 2;  // L2
    std::optional<double> snr_db = 20.0;
    std::uint64_t seed = 1;
    double shift_range = 10.0;
    Algorithm algorithm = Algorithm::ProposedHybrid;
    PocsConfig pocs;
    RegSolverConfig solver;  // lambda model defaults m=1e-10, c=0
    std::string output_dir = "out";

    static ExperimentConfig from_keyvalues(const KeyValues& kv);
    KeyValues to_keyvalues() const;

    DegradationSpec degradation_spec() const;
};

ExperimentConfig default_config();

}  // namespace srtk
