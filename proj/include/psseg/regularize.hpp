#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <variant>

#include "psseg/field.hpp"

namespace psseg {

struct CircleContour {
    double cx = 0.0;
    double cy = 0.0;
    double r = 1.0;
};

/// Inclusive pixel rectangle.
struct RectContour {
    int x0 = 0;
    int y0 = 0;
    int x1 = 0;
    int y1 = 0;
};

/// 8-bit grayscale image of the grid's size; nonzero pixels are inside.
struct MaskContour {
    std::string path;
};

using ContourSpec = std::variant<CircleContour, RectContour, MaskContour>;

/// Smoothed step: 1/2 (1 + 2/pi atan(z/epsilon)).
inline double heaviside(double z, double epsilon) {
    return 0.5 * (1.0 + (2.0 / std::numbers::pi) * std::atan(z / epsilon));
}

/// Derivative of heaviside: (1/pi) epsilon / (epsilon^2 + z^2).
inline double dirac(double z, double epsilon) {
    return (epsilon / std::numbers::pi) / (epsilon * epsilon + z * z);
}

ScalarField heaviside(const ScalarField& phi, double epsilon);
ScalarField dirac(const ScalarField& phi, double epsilon);

/// Region membership of the initial contour. Boundary pixels count as inside.
BinaryMask contour_region(const ContourSpec& spec, int width, int height);

/// Two-valued level set: +c0 inside the contour region, -c0 outside.
ScalarField init_phi(const ContourSpec& spec, int width, int height, double c0);

/// Distance-regularization force laplacian(phi) - curvature(phi); vanishes
/// where |grad phi| = 1 and pulls |grad phi| toward 1 elsewhere.
ScalarField dist_reg_term(const ScalarField& phi, double eta = 1e-10);

/// Mean of ||grad phi| - 1| over pixels with |phi| < half_width.
/// Returns 0 when no pixel falls in the band.
double band_eikonal_deviation(const ScalarField& phi, double half_width);

}  // namespace psseg
