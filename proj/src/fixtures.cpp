#include "psseg/fixtures.hpp"

#include <algorithm>
#include <cmath>

#include "psseg/kernel.hpp"

namespace psseg::fixtures {

namespace {

constexpr int kSize = 128;
constexpr double kCenter = 64.0;
constexpr double kSemiX = 34.0;
constexpr double kSemiY = 26.0;
constexpr double kObject = 170.0;
constexpr double kBackground = 70.0;
constexpr double kNoise = 6.0;
constexpr double kInitRadius = 24.0;

}  // namespace

double uniform(std::mt19937& rng, double a, double b) {
    const std::uint64_t hi = rng() >> 5;  // 27 bits
    const std::uint64_t lo = rng() >> 6;  // 26 bits
    const double u = static_cast<double>((hi << 26) | lo) * 0x1.0p-53;
    return a + (b - a) * u;
}

Fixture two_region(std::uint32_t seed) {
    std::mt19937 rng(seed);
    Fixture fx{ScalarField(kSize, kSize), BinaryMask(kSize, kSize),
               CircleContour{kCenter, kCenter, kInitRadius}};
    for (int y = 0; y < kSize; ++y) {
        for (int x = 0; x < kSize; ++x) {
            const double ex = (x - kCenter) / kSemiX;
            const double ey = (y - kCenter) / kSemiY;
            const bool inside = ex * ex + ey * ey <= 1.0;
            fx.truth.values[static_cast<std::size_t>(y) * kSize + x] = inside;
            fx.image(x, y) = (inside ? kObject : kBackground) + uniform(rng, -kNoise, kNoise);
        }
    }
    return fx;
}

Fixture illuminated(std::uint32_t seed) {
    Fixture fx = two_region(seed);
    for (int y = 0; y < kSize; ++y) {
        for (int x = 0; x < kSize; ++x) {
            const double gain = 0.5 + static_cast<double>(x) / (kSize - 1);
            fx.image(x, y) = std::clamp(fx.image(x, y) * gain, 0.0, 255.0);
        }
    }
    return fx;
}

ScalarField smooth_random(std::uint32_t seed) {
    constexpr int n = 64;
    std::mt19937 rng(seed);
    ScalarField noise(n, n);
    for (std::size_t i = 0; i < noise.size(); ++i) noise[i] = uniform(rng, 0.0, 255.0);
    ScalarField f = convolve(noise, make_kernel_with_radius(2.0, 8));
    const double c = (n - 1) / 2.0;
    for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
            const double r2 = (x - c) * (x - c) + (y - c) * (y - c);
            f(x, y) *= std::exp(-r2 / (2.0 * 10.0 * 10.0));
        }
    }
    return f;
}

}  // namespace psseg::fixtures
