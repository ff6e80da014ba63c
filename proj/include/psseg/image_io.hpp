#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psseg/field.hpp"

namespace psseg {

/// Reads an 8-bit grayscale image: binary PGM (P5, any maxval, rescaled to
/// [0, 255]) or a grayscale / gray-palette PNG. Row-major, origin top-left.
/// Throws FormatError naming the defect for anything else.
ScalarField load_image(const std::string& path);

/// Writes intensities rounded and clamped to [0, 255]; PNG when the path
/// ends in ".png", binary PGM otherwise.
void save_image(const ScalarField& image, const std::string& path);

/// Mask pixels with at least one 4-neighbour outside the mask. Pixels beyond
/// the grid count as outside.
BinaryMask mask_boundary(const BinaryMask& mask);

struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;  ///< interleaved, row-major
};

/// Grayscale base, initial-contour boundary in green, final-contour boundary
/// in red drawn on top.
RgbImage render_overlay(const ScalarField& image, const BinaryMask& initial,
                        const BinaryMask& final_mask);

/// render_overlay written as binary PPM (P6) when the path ends in ".ppm",
/// PNG otherwise.
void save_overlay(const ScalarField& image, const BinaryMask& initial,
                  const BinaryMask& final_mask, const std::string& path);

void save_rgb(const RgbImage& image, const std::string& path);

}  // namespace psseg
