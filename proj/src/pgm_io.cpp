#include "srtk/pgm_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace srtk {

namespace {

// Next whitespace-delimited token, skipping '#' comments to end of line.
std::string next_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(char(c));
    }
    return tok;
}

int parse_header_int(std::istream& in, const char* what) {
    std::string tok = next_token(in);
    if (tok.empty()) throw input_error(std::string("PGM: missing ") + what + " in header");
    try {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw input_error(std::string("PGM: malformed ") + what + " '" + tok + "'");
    }
}

}  // namespace

Image load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("PGM: cannot open '" + path + "'");

    std::string magic = next_token(in);
    if (magic != "P5" && magic != "P2")
        throw input_error("PGM: unsupported magic '" + magic + "' (want P5 or P2)");

    int width = parse_header_int(in, "width");
    int height = parse_header_int(in, "height");
    int maxval = parse_header_int(in, "maxval");
    if (width < 1 || height < 1) throw input_error("PGM: non-positive dimensions");
    if (maxval != 255)
        throw input_error("PGM: unsupported maxval " + std::to_string(maxval) + " (want 255)");

    Image img(width, height, 0.0);
    if (magic == "P5") {
        // next_token already consumed the single whitespace byte after maxval.
        std::vector<unsigned char> raw(img.pixel_count());
        in.read(reinterpret_cast<char*>(raw.data()), std::streamsize(raw.size()));
        if (std::size_t(in.gcount()) != raw.size())
            throw input_error("PGM: truncated pixel data");
        for (std::size_t i = 0; i < raw.size(); ++i) img.data[i] = double(raw[i]);
    } else {
        for (std::size_t i = 0; i < img.pixel_count(); ++i) {
            int v = parse_header_int(in, "pixel value");
            if (v < 0 || v > 255)
                throw input_error("PGM: pixel value " + std::to_string(v) + " out of range");
            img.data[i] = double(v);
        }
    }
    return img;
}

void save_pgm(const Image& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("PGM: cannot open '" + path + "' for writing");
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    std::vector<unsigned char> raw(img.pixel_count());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        double v = std::clamp(img.data[i], 0.0, 255.0);
        raw[i] = static_cast<unsigned char>(std::floor(v + 0.5));
    }
    out.write(reinterpret_cast<const char*>(raw.data()), std::streamsize(raw.size()));
    if (!out) throw io_error("PGM: write failed for '" + path + "'");
}

}  // namespace srtk
