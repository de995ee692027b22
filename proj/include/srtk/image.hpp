#pragma once

#include <cstddef>
#include <vector>

#include "srtk/errors.hpp"

namespace srtk {

// Row-major grayscale raster. Intensities are doubles with nominal range
// [0,255]; quantization to 8 bit happens only at file output. Pixel (row i,
// col j) sits at continuous coordinates (x = j, y = i).
struct Image {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    Image() = default;
    Image(int width_, int height_, double fill = 0.0);

    double& at(int row, int col) { return data[std::size_t(row) * width + col]; }
    double at(int row, int col) const { return data[std::size_t(row) * width + col]; }

    std::size_t pixel_count() const { return data.size(); }
    bool same_dims(const Image& other) const {
        return width == other.width && height == other.height;
    }
};

// Bilinear interpolation of the four surrounding pixel centers. Coordinates
// outside the image are clamped to the valid rectangle (edge replication),
// so every sample has at least one contributing pixel.
double bilinear_sample(const Image& img, double x, double y);

// The four (pixel index, weight) pairs bilinear_sample uses at (x, y).
// Indices may repeat at edges; weights sum to 1.
struct BilinearTaps {
    int index[4];
    double weight[4];
};
BilinearTaps bilinear_taps(int width, int height, double x, double y);

double l2_norm(const Image& img);
double l2_distance(const Image& a, const Image& b);

}  // namespace srtk
