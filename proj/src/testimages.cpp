#include "srtk/testimages.hpp"

#include <algorithm>
#include <cmath>

#include "srtk/pgm_io.hpp"

namespace srtk {

namespace {

double gauss_blob(double x, double y, double cx, double cy, double s) {
    double dx = x - cx, dy = y - cy;
    return std::exp(-(dx * dx + dy * dy) / (2.0 * s * s));
}

}  // namespace

Image make_builtin_image(const std::string& name, int width, int height) {
    Image img(width, height, 0.0);
    double w = width - 1 > 0 ? width - 1 : 1;
    double h = height - 1 > 0 ? height - 1 : 1;

    if (name == "ramp") {
        for (int i = 0; i < height; ++i)
            for (int j = 0; j < width; ++j)
                img.at(i, j) = 255.0 * 0.5 * (i / h + j / w);
    } else if (name == "blob") {
        // Smooth scene: ramp background plus a few Gaussian bumps.
        for (int i = 0; i < height; ++i) {
            for (int j = 0; j < width; ++j) {
                double x = j / w, y = i / h;
                double v = 40.0 + 60.0 * x + 30.0 * y;
                v += 150.0 * gauss_blob(x, y, 0.35, 0.4, 0.12);
                v += 90.0 * gauss_blob(x, y, 0.7, 0.65, 0.08);
                v += 60.0 * gauss_blob(x, y, 0.55, 0.2, 0.05);
                img.at(i, j) = std::clamp(v, 0.0, 255.0);
            }
        }
    } else if (name == "checker") {
        int block = std::max(2, width / 8);
        for (int i = 0; i < height; ++i)
            for (int j = 0; j < width; ++j)
                img.at(i, j) = ((i / block + j / block) % 2 == 0) ? 40.0 : 215.0;
    } else if (name == "rings") {
        for (int i = 0; i < height; ++i) {
            for (int j = 0; j < width; ++j) {
                double x = j / w - 0.5, y = i / h - 0.5;
                double r = std::sqrt(x * x + y * y);
                img.at(i, j) = 127.5 + 110.0 * std::cos(18.0 * r);
            }
        }
    } else {
        throw input_error("unknown builtin image '" + name +
                          "' (want ramp | blob | checker | rings)");
    }
    return img;
}

Image load_input_image(const std::string& spec) {
    const std::string prefix = "builtin:";
    if (spec.rfind(prefix, 0) == 0) {
        std::string rest = spec.substr(prefix.size());
        std::size_t colon = rest.find(':');
        if (colon == std::string::npos)
            throw input_error("builtin image spec must be builtin:<name>:<size>");
        std::string name = rest.substr(0, colon);
        int size;
        try {
            size = std::stoi(rest.substr(colon + 1));
        } catch (const std::exception&) {
            throw input_error("builtin image spec has non-integer size: '" + spec + "'");
        }
        if (size < 1) throw input_error("builtin image size must be positive");
        return make_builtin_image(name, size, size);
    }
    return load_pgm(spec);
}

}  // namespace srtk
