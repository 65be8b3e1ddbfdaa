#include "matprobe/pgm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>

#include "matprobe/errors.hpp"

namespace matprobe {
namespace {

// Next whitespace-delimited header token, skipping '#' comments.
std::size_t read_header_value(std::istream& in, const std::string& path) {
    while (true) {
        int c = in.peek();
        if (c == EOF) throw ValidationError(path + ": truncated PGM header");
        if (std::isspace(c)) {
            in.get();
        } else if (c == '#') {
            in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
        } else {
            break;
        }
    }
    long long v = -1;
    if (!(in >> v) || v < 0) throw ValidationError(path + ": malformed PGM header");
    return static_cast<std::size_t>(v);
}

}  // namespace

GrayImage read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path);
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (magic[0] != 'P' || (magic[1] != '2' && magic[1] != '5')) throw ValidationError(path + ": not a P2/P5 PGM file");
    GrayImage img;
    img.width = read_header_value(in, path);
    img.height = read_header_value(in, path);
    const std::size_t maxval = read_header_value(in, path);
    if (img.width == 0 || img.height == 0) throw ValidationError(path + ": empty image");
    if (maxval == 0 || maxval > 65535) throw ValidationError(path + ": maxval must lie in [1, 65535]");
    img.maxval = static_cast<int>(maxval);
    const std::size_t count = img.width * img.height;
    img.pixels.resize(count);

    if (magic[1] == '2') {
        for (std::size_t i = 0; i < count; ++i) {
            long long v = -1;
            if (!(in >> v)) throw ValidationError(path + ": truncated pixel data");
            if (v < 0 || v > img.maxval) throw ValidationError(path + ": pixel value out of range");
            img.pixels[i] = static_cast<double>(v);
        }
        return img;
    }
    in.get();  // single whitespace byte before the raster
    const std::size_t bytes = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> raw(count * bytes);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) throw ValidationError(path + ": truncated pixel data");
    for (std::size_t i = 0; i < count; ++i) {
        const unsigned v = bytes == 2 ? (unsigned{raw[2 * i]} << 8) | raw[2 * i + 1] : raw[i];
        if (v > maxval) throw ValidationError(path + ": pixel value out of range");
        img.pixels[i] = static_cast<double>(v);
    }
    return img;
}

void write_pgm(const std::string& path, const GrayImage& image) {
    if (image.pixels.size() != image.width * image.height) throw DimensionError("image size does not match its pixels");
    if (image.maxval < 1 || image.maxval > 65535) throw ValidationError("maxval must lie in [1, 65535]");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open " + path + " for writing");
    out << "P5\n" << image.width << ' ' << image.height << '\n' << image.maxval << '\n';
    const bool wide = image.maxval > 255;
    for (double p : image.pixels) {
        const double clamped = std::clamp(std::round(p), 0.0, static_cast<double>(image.maxval));
        const unsigned v = static_cast<unsigned>(clamped);
        if (wide) out.put(static_cast<char>(v >> 8));
        out.put(static_cast<char>(v & 0xff));
    }
}

GrayImage to_gray(const std::vector<double>& values, std::size_t side, double lo, double hi, int maxval) {
    if (values.size() != side * side) throw DimensionError("field is not square with the given side");
    GrayImage img;
    img.width = img.height = side;
    img.maxval = maxval;
    img.pixels.resize(values.size());
    const double span = hi > lo ? hi - lo : 1.0;
    for (std::size_t i = 0; i < values.size(); ++i) img.pixels[i] = (values[i] - lo) / span * maxval;
    return img;
}

void write_field_csv(const std::string& path, const std::vector<double>& values, std::size_t side,
                     const std::string& header) {
    if (values.size() != side * side) throw DimensionError("field is not square with the given side");
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open " + path + " for writing");
    if (!header.empty()) out << "# " << header << '\n';
    out << "row,col,value\n";
    char buf[40];
    for (std::size_t r = 0; r < side; ++r)
        for (std::size_t c = 0; c < side; ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", values[r * side + c]);
            out << r << ',' << c << ',' << buf << '\n';
        }
}

}  // namespace matprobe
