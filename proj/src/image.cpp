#include "srtk/image.hpp"

#include <algorithm>
#include <cmath>

namespace srtk {

Image::Image(int width_, int height_, double fill) {
    if (width_ < 1 || height_ < 1)
        throw input_error("image dimensions must be positive (got " +
                          std::to_string(width_) + "x" + std::to_string(height_) + ")");
    width = width_;
    height = height_;
    data.assign(std::size_t(width) * height, fill);
}

BilinearTaps bilinear_taps(int width, int height, double x, double y) {
    x = std::clamp(x, 0.0, double(width - 1));
    y = std::clamp(y, 0.0, double(height - 1));
    int x0 = std::min(int(std::floor(x)), std::max(width - 2, 0));
    int y0 = std::min(int(std::floor(y)), std::max(height - 2, 0));
    int x1 = std::min(x0 + 1, width - 1);
    int y1 = std::min(y0 + 1, height - 1);
    double fx = x - x0;
    double fy = y - y0;

    BilinearTaps t;
    t.index[0] = y0 * width + x0;
    t.index[1] = y0 * width + x1;
    t.index[2] = y1 * width + x0;
    t.index[3] = y1 * width + x1;
    t.weight[0] = (1.0 - fx) * (1.0 - fy);
    t.weight[1] = fx * (1.0 - fy);
    t.weight[2] = (1.0 - fx) * fy;
    t.weight[3] = fx * fy;
    return t;
}

double bilinear_sample(const Image& img, double x, double y) {
    BilinearTaps t = bilinear_taps(img.width, img.height, x, y);
    double v = 0.0;
    for (int i = 0; i < 4; ++i) v += t.weight[i] * img.data[t.index[i]];
    return v;
}

double l2_norm(const Image& img) {
    double s = 0.0;
    for (double v : img.data) s += v * v;
    return std::sqrt(s);
}

double l2_distance(const Image& a, const Image& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        double d = a.data[i] - b.data[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace srtk
