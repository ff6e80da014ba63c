#include "psseg/regularize.hpp"

#include <cmath>

#include "psseg/errors.hpp"
#include "psseg/image_io.hpp"

namespace psseg {

namespace {

void require_epsilon(double epsilon) {
    if (!(epsilon > 0.0)) throw ParameterError("Heaviside width epsilon must be positive");
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

ScalarField heaviside(const ScalarField& phi, double epsilon) {
    require_epsilon(epsilon);
    ScalarField out = ScalarField::uninitialized(phi.width(), phi.height());
    for (std::size_t i = 0; i < phi.size(); ++i) out[i] = heaviside(phi[i], epsilon);
    return out;
}

ScalarField dirac(const ScalarField& phi, double epsilon) {
    require_epsilon(epsilon);
    ScalarField out = ScalarField::uninitialized(phi.width(), phi.height());
    for (std::size_t i = 0; i < phi.size(); ++i) out[i] = dirac(phi[i], epsilon);
    return out;
}

BinaryMask contour_region(const ContourSpec& spec, int width, int height) {
    if (width <= 0 || height <= 0) throw DimensionError("contour grid must be non-empty");
    BinaryMask region(width, height);
    auto inside_grid = [&](double x, double y) {
        return x >= 0.0 && y >= 0.0 && x <= width - 1 && y <= height - 1;
    };

    std::visit(
        overloaded{
            [&](const CircleContour& c) {
                if (!(c.r > 0.0)) throw ParameterError("circle radius must be positive");
                if (!inside_grid(c.cx, c.cy)) {
                    throw ParameterError("circle center lies outside the grid");
                }
                const double r2 = c.r * c.r;
                for (int y = 0; y < height; ++y) {
                    for (int x = 0; x < width; ++x) {
                        const double dx = x - c.cx;
                        const double dy = y - c.cy;
                        region.values[static_cast<std::size_t>(y) * width + x] =
                            dx * dx + dy * dy <= r2 ? 1 : 0;
                    }
                }
            },
            [&](const RectContour& r) {
                if (r.x0 >= r.x1 || r.y0 >= r.y1) {
                    throw ParameterError("rectangle needs x0 < x1 and y0 < y1");
                }
                if (!inside_grid(r.x0, r.y0) || !inside_grid(r.x1, r.y1)) {
                    throw ParameterError("rectangle corner lies outside the grid");
                }
                for (int y = r.y0; y <= r.y1; ++y) {
                    for (int x = r.x0; x <= r.x1; ++x) {
                        region.values[static_cast<std::size_t>(y) * width + x] = 1;
                    }
                }
            },
            [&](const MaskContour& m) {
                const ScalarField image = load_image(m.path);
                if (image.width() != width || image.height() != height) {
                    throw ParameterError("mask " + m.path + " does not match the image size");
                }
                for (std::size_t i = 0; i < image.size(); ++i) {
                    region.values[i] = image[i] != 0.0 ? 1 : 0;
                }
            },
        },
        spec);
    return region;
}

ScalarField init_phi(const ContourSpec& spec, int width, int height, double c0) {
    if (!(c0 > 0.0)) throw ParameterError("initial level-set magnitude c0 must be positive");
    const BinaryMask region = contour_region(spec, width, height);
    ScalarField phi(width, height);
    for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = region.values[i] ? c0 : -c0;
    return phi;
}

ScalarField dist_reg_term(const ScalarField& phi, double eta) {
    ScalarField lap = laplacian(phi);
    const ScalarField kappa = curvature(phi, eta);
    for (std::size_t i = 0; i < lap.size(); ++i) lap[i] -= kappa[i];
    return lap;
}

double band_eikonal_deviation(const ScalarField& phi, double half_width) {
    const Gradient g = gradient(phi);
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        if (std::abs(phi[i]) < half_width) {
            sum += std::abs(std::sqrt(g.fx[i] * g.fx[i] + g.fy[i] * g.fy[i]) - 1.0);
            ++n;
        }
    }
    return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

}  // namespace psseg
