#pragma once

#include <atomic>
#include <cstddef>
#include <vector>

#include "psseg/field.hpp"

namespace psseg {

/// Smallest odd integer strictly greater than 4t.
int kernel_size(double t);

/// Truncated, renormalized, separable Gaussian mask.
///
/// Every convolve() call with the kernel bumps an atomic counter, so the
/// number of 2-D convolutions a solver spends per iteration can be asserted
/// exactly. Copies carry the current count.
class GaussianKernel {
public:
    GaussianKernel(double sigma, int size);
    GaussianKernel(const GaussianKernel& other);
    GaussianKernel& operator=(const GaussianKernel& other);

    double scale() const noexcept { return sigma_; }
    int size() const noexcept { return static_cast<int>(weights_.size()); }
    int radius() const noexcept { return size() / 2; }
    const std::vector<double>& weights_1d() const noexcept { return weights_; }

    std::size_t conv_count() const noexcept { return count_.load(std::memory_order_relaxed); }
    void reset_count() noexcept { count_.store(0, std::memory_order_relaxed); }

private:
    friend ScalarField convolve(const ScalarField& f, const GaussianKernel& k);

    double sigma_;
    std::vector<double> weights_;
    mutable std::atomic<std::size_t> count_{0};
};

/// Kernel at scale t with side kernel_size(t).
GaussianKernel make_kernel(double t);

/// Kernel with standard deviation sigma truncated at an explicit radius
/// (side 2*radius+1).
GaussianKernel make_kernel_with_radius(double sigma, int radius);

/// Separable convolution, horizontal pass then vertical, replicate padding.
/// Counts as one convolution on k.
ScalarField convolve(const ScalarField& f, const GaussianKernel& k);

}  // namespace psseg
