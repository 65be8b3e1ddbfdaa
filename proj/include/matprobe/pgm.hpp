#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace matprobe {

/// Grayscale raster, row-major, values in [0, maxval].
struct GrayImage {
    std::size_t width = 0;
    std::size_t height = 0;
    int maxval = 255;
    std::vector<double> pixels;
};

/// Reads ASCII (P2) or binary (P5) PGM with maxval up to 65535.
GrayImage read_pgm(const std::string& path);

/// Writes binary P5. Values are rounded and clamped to [0, maxval]; maxval > 255
/// uses two bytes per sample, most significant first.
void write_pgm(const std::string& path, const GrayImage& image);

/// Maps arbitrary real values linearly onto [0, maxval] using [lo, hi].
GrayImage to_gray(const std::vector<double>& values, std::size_t side, double lo, double hi, int maxval = 255);

/// Field as CSV rows "row,col,value" under a '#' comment header.
void write_field_csv(const std::string& path, const std::vector<double>& values, std::size_t side,
                     const std::string& header = {});

}  // namespace matprobe
