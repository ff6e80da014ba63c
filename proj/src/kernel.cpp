#include "psseg/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "psseg/errors.hpp"

namespace psseg {

int kernel_size(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw ParameterError("kernel scale must be positive and finite, got " + std::to_string(t));
    }
    // smallest integer strictly above 4t, bumped to odd
    int m = static_cast<int>(std::floor(4.0 * t)) + 1;
    if (m % 2 == 0) ++m;
    return m;
}

GaussianKernel::GaussianKernel(double sigma, int size) : sigma_(sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw ParameterError("kernel standard deviation must be positive");
    }
    if (size < 1 || size % 2 == 0) {
        throw ParameterError("kernel size must be a positive odd integer, got " +
                             std::to_string(size));
    }
    const int r = size / 2;
    weights_.resize(static_cast<std::size_t>(size));
    for (int i = -r; i <= r; ++i) {
        weights_[static_cast<std::size_t>(i + r)] =
            std::exp(-static_cast<double>(i * i) / (2.0 * sigma * sigma));
    }
    // The 2-D mask is the outer product, so a unit 1-D sum gives a unit 2-D sum.
    const double sum = std::accumulate(weights_.begin(), weights_.end(), 0.0);
    for (double& w : weights_) w /= sum;
    // exact symmetry regardless of rounding in the division
    for (int i = 0; i < r; ++i) {
        weights_[static_cast<std::size_t>(size - 1 - i)] = weights_[static_cast<std::size_t>(i)];
    }
}

GaussianKernel::GaussianKernel(const GaussianKernel& other)
    : sigma_(other.sigma_), weights_(other.weights_), count_(other.conv_count()) {}

GaussianKernel& GaussianKernel::operator=(const GaussianKernel& other) {
    if (this != &other) {
        sigma_ = other.sigma_;
        weights_ = other.weights_;
        count_.store(other.conv_count(), std::memory_order_relaxed);
    }
    return *this;
}

GaussianKernel make_kernel(double t) { return GaussianKernel(t, kernel_size(t)); }

GaussianKernel make_kernel_with_radius(double sigma, int radius) {
    if (radius < 0) throw ParameterError("kernel radius must be non-negative");
    return GaussianKernel(sigma, 2 * radius + 1);
}

ScalarField convolve(const ScalarField& f, const GaussianKernel& k) {
    const int w = f.width();
    const int h = f.height();
    const int r = k.radius();
    const int m = k.size();
    const double* weights = k.weights_.data();

    ScalarField horizontal = ScalarField::uninitialized(w, h);
    std::vector<double> padded(static_cast<std::size_t>(w + 2 * r));
    for (int y = 0; y < h; ++y) {
        const double* in = f.row(y);
        std::fill_n(padded.begin(), r, in[0]);
        std::copy(in, in + w, padded.begin() + r);
        std::fill_n(padded.begin() + r + w, r, in[w - 1]);
        // taps outermost so the x loop vectorizes; per-pixel summation order
        // is still j = 0..m-1
        double* out = horizontal.row(y);
        for (int x = 0; x < w; ++x) out[x] = weights[0] * padded[static_cast<std::size_t>(x)];
        for (int j = 1; j < m; ++j) {
            const double wj = weights[j];
            const double* src = padded.data() + j;
            for (int x = 0; x < w; ++x) out[x] += wj * src[x];
        }
    }

    ScalarField result = ScalarField::uninitialized(w, h);
    for (int y = 0; y < h; ++y) {
        double* out = result.row(y);
        const double* first = horizontal.row(std::clamp(y - r, 0, h - 1));
        for (int x = 0; x < w; ++x) out[x] = weights[0] * first[x];
        for (int j = 1; j < m; ++j) {
            const double wj = weights[j];
            const double* src = horizontal.row(std::clamp(y + j - r, 0, h - 1));
            for (int x = 0; x < w; ++x) out[x] += wj * src[x];
        }
    }

    k.count_.fetch_add(1, std::memory_order_relaxed);
    return result;
}

}  // namespace psseg
