#include "psseg/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "psseg/errors.hpp"

namespace psseg {

namespace {

std::size_t checked_area(int width, int height) {
    if (width <= 0 || height <= 0) {
        throw DimensionError("field dimensions must be positive, got " +
                             std::to_string(width) + "x" + std::to_string(height));
    }
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

// x-derivative: central inside, one-sided at x = 0 and x = w-1.
void ddx(const ScalarField& f, ScalarField& out) {
    const int w = f.width();
    const int h = f.height();
    for (int y = 0; y < h; ++y) {
        out(0, y) = f(1, y) - f(0, y);
        for (int x = 1; x < w - 1; ++x) {
            out(x, y) = 0.5 * (f(x + 1, y) - f(x - 1, y));
        }
        out(w - 1, y) = f(w - 1, y) - f(w - 2, y);
    }
}

void ddy(const ScalarField& f, ScalarField& out) {
    const int w = f.width();
    const int h = f.height();
    for (int x = 0; x < w; ++x) {
        out(x, 0) = f(x, 1) - f(x, 0);
        out(x, h - 1) = f(x, h - 1) - f(x, h - 2);
    }
    for (int y = 1; y < h - 1; ++y) {
        for (int x = 0; x < w; ++x) {
            out(x, y) = 0.5 * (f(x, y + 1) - f(x, y - 1));
        }
    }
}

}  // namespace

ScalarField::ScalarField(int width, int height, double fill)
    : width_(width), height_(height), values_(checked_area(width, height), fill) {}

ScalarField::ScalarField(int width, int height, const std::vector<double>& values)
    : width_(width), height_(height), values_(values.begin(), values.end()) {
    if (values_.size() != checked_area(width, height)) {
        throw DimensionError("value count " + std::to_string(values_.size()) +
                             " does not match " + std::to_string(width) + "x" +
                             std::to_string(height));
    }
}

ScalarField ScalarField::uninitialized(int width, int height) {
    ScalarField f;
    f.values_.resize(checked_area(width, height));
    f.width_ = width;
    f.height_ = height;
    return f;
}

bool ScalarField::all_finite() const noexcept {
    return std::all_of(values_.begin(), values_.end(),
                       [](double v) { return std::isfinite(v); });
}

double ScalarField::min() const {
    if (values_.empty()) throw DimensionError("min of an empty field");
    return *std::min_element(values_.begin(), values_.end());
}

double ScalarField::max() const {
    if (values_.empty()) throw DimensionError("max of an empty field");
    return *std::max_element(values_.begin(), values_.end());
}

std::size_t BinaryMask::count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(values.begin(), values.end(), [](std::uint8_t v) { return v != 0; }));
}

BinaryMask positive_region(const ScalarField& f) {
    BinaryMask mask(f.width(), f.height());
    for (std::size_t i = 0; i < f.size(); ++i) {
        mask.values[i] = f[i] > 0.0 ? 1 : 0;
    }
    return mask;
}

void require_stencil_size(const ScalarField& f) {
    if (f.width() < 3 || f.height() < 3) {
        throw DimensionError("finite-difference stencils need at least 3x3, got " +
                             std::to_string(f.width()) + "x" + std::to_string(f.height()));
    }
}

void require_same_shape(const ScalarField& a, const ScalarField& b, const char* what) {
    if (!a.same_shape(b)) {
        throw DimensionError(std::string(what) + ": shape mismatch " +
                             std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                             " vs " + std::to_string(b.width()) + "x" +
                             std::to_string(b.height()));
    }
}

Gradient gradient(const ScalarField& f) {
    require_stencil_size(f);
    Gradient g{ScalarField::uninitialized(f.width(), f.height()),
               ScalarField::uninitialized(f.width(), f.height())};
    ddx(f, g.fx);
    ddy(f, g.fy);
    return g;
}

ScalarField gradient_norm2(const ScalarField& f) {
    require_stencil_size(f);
    const int w = f.width();
    const int h = f.height();
    ScalarField out = ScalarField::uninitialized(w, h);
    for (int y = 0; y < h; ++y) {
        const double* row = f.row(y);
        const double* up = f.row(y > 0 ? y - 1 : 0);
        const double* down = f.row(y < h - 1 ? y + 1 : h - 1);
        // one-sided on the first and last row
        const double ys = (y == 0 || y == h - 1) ? 1.0 : 0.5;
        double* o = out.row(y);
        for (int x = 0; x < w; ++x) {
            const double gx = x == 0       ? row[1] - row[0]
                              : x == w - 1 ? row[w - 1] - row[w - 2]
                                           : 0.5 * (row[x + 1] - row[x - 1]);
            const double gy = ys * (down[x] - up[x]);
            o[x] = gx * gx + gy * gy;
        }
    }
    return out;
}

ScalarField laplacian(const ScalarField& f) {
    require_stencil_size(f);
    const int w = f.width();
    const int h = f.height();
    ScalarField out = ScalarField::uninitialized(w, h);
    for (int y = 0; y < h; ++y) {
        const double* row = f.row(y);
        const double* up = f.row(y > 0 ? y - 1 : 0);
        const double* down = f.row(y < h - 1 ? y + 1 : h - 1);
        double* o = out.row(y);
        o[0] = row[1] + row[0] + down[0] + up[0] - 4.0 * row[0];
        for (int x = 1; x < w - 1; ++x) {
            o[x] = row[x + 1] + row[x - 1] + down[x] + up[x] - 4.0 * row[x];
        }
        o[w - 1] = row[w - 1] + row[w - 2] + down[w - 1] + up[w - 1] - 4.0 * row[w - 1];
    }
    return out;
}

ScalarField curvature(const ScalarField& f, double eta) {
    require_stencil_size(f);
    if (!(eta > 0.0)) throw ParameterError("curvature: eta must be positive");
    const int w = f.width();
    const int h = f.height();

    // unit normal field, gradient() stencils inlined
    ScalarField nx = ScalarField::uninitialized(w, h);
    ScalarField ny = ScalarField::uninitialized(w, h);
    for (int y = 0; y < h; ++y) {
        const double* row = f.row(y);
        const double* up = f.row(y > 0 ? y - 1 : 0);
        const double* down = f.row(y < h - 1 ? y + 1 : h - 1);
        const double ys = (y == 0 || y == h - 1) ? 1.0 : 0.5;
        double* ox = nx.row(y);
        double* oy = ny.row(y);
        for (int x = 0; x < w; ++x) {
            const double gx = x == 0       ? row[1] - row[0]
                              : x == w - 1 ? row[w - 1] - row[w - 2]
                                           : 0.5 * (row[x + 1] - row[x - 1]);
            const double gy = ys * (down[x] - up[x]);
            const double inv = 1.0 / std::max(std::sqrt(gx * gx + gy * gy), eta);
            ox[x] = gx * inv;
            oy[x] = gy * inv;
        }
    }

    ScalarField div = ScalarField::uninitialized(w, h);
    for (int y = 0; y < h; ++y) {
        const double* rx = nx.row(y);
        const double* up = ny.row(y > 0 ? y - 1 : 0);
        const double* down = ny.row(y < h - 1 ? y + 1 : h - 1);
        const double ys = (y == 0 || y == h - 1) ? 1.0 : 0.5;
        double* o = div.row(y);
        o[0] = (rx[1] - rx[0]) + ys * (down[0] - up[0]);
        for (int x = 1; x < w - 1; ++x) {
            o[x] = 0.5 * (rx[x + 1] - rx[x - 1]) + ys * (down[x] - up[x]);
        }
        o[w - 1] = (rx[w - 1] - rx[w - 2]) + ys * (down[w - 1] - up[w - 1]);
    }
    return div;
}

}  // namespace psseg
