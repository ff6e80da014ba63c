#include "psseg/scalespace.hpp"

#include <cmath>
#include <string>

#include "psseg/errors.hpp"
#include "psseg/kernel.hpp"

namespace psseg {

ScalarField heat_step(const ScalarField& f, double dt_h) {
    if (!(dt_h > 0.0)) throw ParameterError("heat step must be positive");
    if (dt_h > kMaxHeatStep) {
        throw StabilityError("heat step " + std::to_string(dt_h) +
                             " exceeds the explicit stability bound 0.25");
    }
    ScalarField out = laplacian(f);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f[i] + dt_h * out[i];
    return out;
}

ScalarField diffuse(const DiffusionRun& run) {
    if (!(run.total_time >= 0.0)) throw ParameterError("diffusion time must be non-negative");
    if (run.dt_h > kMaxHeatStep) {
        throw StabilityError("heat step exceeds the explicit stability bound 0.25");
    }
    if (!(run.dt_h > 0.0)) throw ParameterError("heat step must be positive");
    ScalarField f = run.initial;
    const auto steps = static_cast<long>(std::ceil(run.total_time / run.dt_h - 1e-12));
    if (steps <= 0) return f;
    const double h = run.total_time / static_cast<double>(steps);
    for (long s = 0; s < steps; ++s) f = heat_step(f, h);
    return f;
}

double verify_scalespace(const ScalarField& initial, double total_time, double dt_h) {
    const ScalarField evolved = diffuse({initial, total_time, dt_h});
    if (total_time == 0.0) return 0.0;

    const double sigma = std::sqrt(2.0 * total_time);
    const GaussianKernel k =
        make_kernel_with_radius(sigma, static_cast<int>(std::ceil(4.0 * sigma)));
    const ScalarField blurred = convolve(initial, k);

    double diff2 = 0.0;
    double norm2 = 0.0;
    for (std::size_t i = 0; i < initial.size(); ++i) {
        const double d = evolved[i] - blurred[i];
        diff2 += d * d;
        norm2 += initial[i] * initial[i];
    }
    if (norm2 == 0.0) return std::sqrt(diff2);
    return std::sqrt(diff2 / norm2);
}

}  // namespace psseg
