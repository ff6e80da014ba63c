#pragma once

#include "psseg/field.hpp"

namespace psseg {

/// Largest stable step of the explicit 5-point heat scheme.
inline constexpr double kMaxHeatStep = 0.25;

/// f + dt_h * laplacian(f). Throws StabilityError for dt_h > 0.25.
ScalarField heat_step(const ScalarField& f, double dt_h);

struct DiffusionRun {
    ScalarField initial;
    double total_time = 0.0;
    double dt_h = 0.2;
};

/// Evolves the heat equation f_t = lap f up to total_time with
/// ceil(total_time / dt_h) equal explicit steps.
ScalarField diffuse(const DiffusionRun& run);

/// Relative L2 distance between the diffused field and the initial field
/// blurred by a Gaussian of standard deviation sqrt(2 T), truncated at
/// radius ceil(4 sqrt(2 T)). Zero for T = 0.
double verify_scalespace(const ScalarField& initial, double total_time, double dt_h);

}  // namespace psseg
