#pragma once

#include <cstdint>
#include <random>

#include "psseg/field.hpp"
#include "psseg/regularize.hpp"

namespace psseg::fixtures {

/// Synthetic segmentation fixture with its ground truth and the initial
/// contour used by the tests and the benchmark (circle of radius 24 at the
/// image center; it starts inside the ellipse along x and outside along y).
struct Fixture {
    ScalarField image;
    BinaryMask truth;
    ContourSpec init;
};

inline constexpr std::uint32_t kDefaultSeed = 20161017;

/// 128x128 image: an ellipse (center 64,64, semi-axes 34 x 26) at intensity
/// 170 on a background of 70, plus uniform noise in [-6, 6] drawn from
/// mt19937(seed).
Fixture two_region(std::uint32_t seed = kDefaultSeed);

/// two_region multiplied by the left-to-right illumination ramp
/// 0.5 + x / (width - 1), so the gain runs from 0.5 to 1.5.
Fixture illuminated(std::uint32_t seed = kDefaultSeed);

/// 64x64 smooth field for the heat-equation check: uniform noise in
/// [0, 255], blurred with a sigma-2 Gaussian, tapered by a Gaussian window
/// (sigma 10) around the center so the energy stays away from the border.
ScalarField smooth_random(std::uint32_t seed = kDefaultSeed);

/// Uniform double in [a, b) built from raw std::mt19937 output, so the
/// fixtures are identical across standard libraries (the <random>
/// distributions are not).
double uniform(std::mt19937& rng, double a, double b);

}  // namespace psseg::fixtures
