#include "srtk/config.hpp"

#include <fstream>
#include <sstream>

namespace srtk {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw input_error("config: key '" + key + "' has non-numeric value '" + v + "'");
    }
}

long to_long(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw input_error("config: key '" + key + "' has non-integer value '" + v + "'");
    }
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

KeyValues KeyValues::parse(const std::string& text) {
    KeyValues kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw input_error("config: line " + std::to_string(lineno) +
                              " is not 'key = value': '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw input_error("config: empty key on line " + std::to_string(lineno));
        kv.set(key, value);
    }
    return kv;
}

KeyValues KeyValues::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void KeyValues::set(const std::string& key, const std::string& value) {
    if (values_.find(key) == values_.end()) order_.push_back(key);
    values_[key] = value;
}

bool KeyValues::has(const std::string& key) const { return values_.count(key) != 0; }

const std::string& KeyValues::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw input_error("config: missing key '" + key + "'");
    return it->second;
}

std::string KeyValues::serialize() const {
    std::ostringstream os;
    for (const auto& key : order_) os << key << " = " << values_.at(key) << "\n";
    return os.str();
}

Algorithm algorithm_from_string(const std::string& name) {
    if (name == "pocs") return Algorithm::Pocs;
    if (name == "regularized") return Algorithm::Regularized;
    if (name == "proposed-hybrid") return Algorithm::ProposedHybrid;
    throw input_error("config: unknown algorithm '" + name +
                      "' (want pocs | regularized | proposed-hybrid)");
}

std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::Pocs: return "pocs";
        case Algorithm::Regularized: return "regularized";
        case Algorithm::ProposedHybrid: return "proposed-hybrid";
    }
    return "?";
}

ExperimentConfig default_config() {
    ExperimentConfig cfg;
    cfg.solver.lambda_model = {1e-10, 0.0};
    return cfg;
}

ExperimentConfig ExperimentConfig::from_keyvalues(const KeyValues& kv) {
    ExperimentConfig cfg = default_config();

    auto dbl = [&kv](const char* key, double& out) {
        if (kv.has(key)) out = to_double(key, kv.get(key));
    };
    auto integer = [&kv](const char* key, int& out) {
        if (kv.has(key)) out = int(to_long(key, kv.get(key)));
    };

    if (kv.has("input")) cfg.input = kv.get("input");
    integer("frames", cfg.frames);
    dbl("blur.length", cfg.blur_length);
    dbl("blur.angle", cfg.blur_angle_deg);
    integer("decimation.l1", cfg.decim_rows);
    integer("decimation.l2", cfg.decim_cols);
    if (kv.has("snr_db")) {
        const std::string& v = kv.get("snr_db");
        if (v == "noiseless")
            cfg.snr_db = std::nullopt;
        else
            cfg.snr_db = to_double("snr_db", v);
    }
    if (kv.has("seed")) cfg.seed = std::uint64_t(to_long("seed", kv.get("seed")));
    dbl("shift.range", cfg.shift_range);
    if (kv.has("algorithm")) cfg.algorithm = algorithm_from_string(kv.get("algorithm"));

    dbl("pocs.phi0_confidence", cfg.pocs.phi0_confidence);
    dbl("pocs.phi0_floor", cfg.pocs.phi0_floor);
    dbl("pocs.relaxation", cfg.pocs.relaxation);
    integer("pocs.max_iters", cfg.pocs.max_iters);
    dbl("pocs.rel_tol", cfg.pocs.rel_tol);

    dbl("solver.m", cfg.solver.lambda_model.m);
    dbl("solver.c", cfg.solver.lambda_model.c);
    integer("solver.max_iters", cfg.solver.max_iters);
    dbl("solver.rel_tol", cfg.solver.rel_tol);
    if (kv.has("solver.step")) {
        const std::string& v = kv.get("solver.step");
        if (v == "power") {
            cfg.solver.step_policy = StepPolicy::PowerIteration;
        } else {
            cfg.solver.step_policy = StepPolicy::Fixed;
            cfg.solver.fixed_step = to_double("solver.step", v);
        }
    }

    if (kv.has("output_dir")) cfg.output_dir = kv.get("output_dir");

    if (cfg.frames < 1) throw input_error("config: 'frames' must be >= 1");
    if (cfg.decim_rows < 1 || cfg.decim_cols < 1)
        throw input_error("config: 'decimation.l1'/'decimation.l2' must be >= 1");
    if (cfg.blur_length < 1.0) throw input_error("config: 'blur.length' must be >= 1");
    if (cfg.shift_range < 0.0) throw input_error("config: 'shift.range' must be >= 0");
    if (!(cfg.pocs.relaxation > 0.0 && cfg.pocs.relaxation <= 1.0))
        throw input_error("config: 'pocs.relaxation' must be in (0,1]");
    if (cfg.pocs.max_iters < 1) throw input_error("config: 'pocs.max_iters' must be >= 1");
    if (cfg.solver.max_iters < 1) throw input_error("config: 'solver.max_iters' must be >= 1");
    if (cfg.solver.lambda_model.m < 0.0 || cfg.solver.lambda_model.c < 0.0)
        throw input_error("config: 'solver.m' and 'solver.c' must be >= 0");
    return cfg;
}

KeyValues ExperimentConfig::to_keyvalues() const {
    KeyValues kv;
    kv.set("input", input);
    kv.set("frames", std::to_string(frames));
    kv.set("blur.length", format_double(blur_length));
    kv.set("blur.angle", format_double(blur_angle_deg));
    kv.set("decimation.l1", std::to_string(decim_rows));
    kv.set("decimation.l2", std::to_string(decim_cols));
    kv.set("snr_db", snr_db ? format_double(*snr_db) : std::string("noiseless"));
    kv.set("seed", std::to_string(seed));
    kv.set("shift.range", format_double(shift_range));
    kv.set("algorithm", to_string(algorithm));
    kv.set("pocs.phi0_confidence", format_double(pocs.phi0_confidence));
    kv.set("pocs.phi0_floor", format_double(pocs.phi0_floor));
    kv.set("pocs.relaxation", format_double(pocs.relaxation));
    kv.set("pocs.max_iters", std::to_string(pocs.max_iters));
    kv.set("pocs.rel_tol", format_double(pocs.rel_tol));
    kv.set("solver.m", format_double(solver.lambda_model.m));
    kv.set("solver.c", format_double(solver.lambda_model.c));
    kv.set("solver.max_iters", std::to_string(solver.max_iters));
    kv.set("solver.rel_tol", format_double(solver.rel_tol));
    kv.set("solver.step", solver.step_policy == StepPolicy::Fixed
                              ? format_double(solver.fixed_step)
                              : std::string("power"));
    kv.set("output_dir", output_dir);
    return kv;
}

DegradationSpec ExperimentConfig::degradation_spec() const {
    DegradationSpec spec;
    spec.blur_length = blur_length;
    spec.blur_angle_deg = blur_angle_deg;
    spec.decim_rows = decim_rows;
    spec.decim_cols = decim_cols;
    spec.snr_db = snr_db;
    spec.seed = seed;
    return spec;
}

}  // namespace srtk
