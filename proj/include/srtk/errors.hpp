#pragma once

#include <stdexcept>
#include <string>

namespace srtk {

// Bad dimensions, parameters, configs, or unparseable inputs. Exit code 1.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File system failures. Exit code 1.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failures at runtime (divergence, non-finite values). Exit code 2.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace srtk
