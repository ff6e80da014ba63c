#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <new>
#include <span>
#include <utility>
#include <vector>

namespace psseg {

namespace detail {

/// Allocator whose value-initialization is default-initialization, so
/// resizing a vector of doubles does not zero it.
template <class T>
struct DefaultInitAllocator : std::allocator<T> {
    template <class U>
    struct rebind {
        using other = DefaultInitAllocator<U>;
    };
    using std::allocator<T>::allocator;

    template <class U>
    void construct(U* p) noexcept {
        ::new (static_cast<void*>(p)) U;
    }
    template <class U, class... Args>
    void construct(U* p, Args&&... args) {
        ::new (static_cast<void*>(p)) U(std::forward<Args>(args)...);
    }
};

}  // namespace detail

/// Row-major 2-D grid of doubles. Holds images, level-set functions and
/// every derived quantity; grid spacing is one pixel.
class ScalarField {
public:
    ScalarField() = default;
    ScalarField(int width, int height, double fill = 0.0);
    ScalarField(int width, int height, const std::vector<double>& values);

    /// Field with unspecified contents, for outputs that are fully overwritten.
    static ScalarField uninitialized(int width, int height);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

    double& operator()(int x, int y) { return values_[index(x, y)]; }
    double operator()(int x, int y) const { return values_[index(x, y)]; }
    double& operator[](std::size_t i) { return values_[i]; }
    double operator[](std::size_t i) const { return values_[i]; }

    double* row(int y) noexcept { return values_.data() + index(0, y); }
    const double* row(int y) const noexcept { return values_.data() + index(0, y); }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }

    bool same_shape(const ScalarField& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_;
    }
    bool all_finite() const noexcept;
    double min() const;
    double max() const;

    friend bool operator==(const ScalarField&, const ScalarField&) = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<double, detail::DefaultInitAllocator<double>> values_;
};

/// Binary segmentation mask; nonzero entries are "inside".
struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> values;

    BinaryMask() = default;
    BinaryMask(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h),
          values(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

    bool operator()(int x, int y) const {
        return values[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                      static_cast<std::size_t>(x)] != 0;
    }
    std::size_t count() const noexcept;

    friend bool operator==(const BinaryMask&, const BinaryMask&) = default;
};

/// {x : f(x) > 0}
BinaryMask positive_region(const ScalarField& f);

struct Gradient {
    ScalarField fx;
    ScalarField fy;
};

// Finite-difference operators. All require width, height >= 3 and use
// replicate-edge (zero-flux) boundaries.

/// Central differences inside, one-sided differences on the border rows/columns.
Gradient gradient(const ScalarField& f);

/// |grad f|^2 with the gradient() stencils, in a single pass.
ScalarField gradient_norm2(const ScalarField& f);

/// 5-point stencil with replicated edges.
ScalarField laplacian(const ScalarField& f);

/// div(grad f / max(|grad f|, eta)), both derivatives taken with gradient().
ScalarField curvature(const ScalarField& f, double eta = 1e-10);

/// Throws DimensionError unless both sides are at least 3 pixels.
void require_stencil_size(const ScalarField& f);
/// Throws DimensionError when the shapes differ.
void require_same_shape(const ScalarField& a, const ScalarField& b, const char* what);

}  // namespace psseg
