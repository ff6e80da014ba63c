#include "psseg/lbf.hpp"

#include <chrono>
#include <cmath>

#include "psseg/errors.hpp"

namespace psseg {

void LbfParams::validate() const {
    if (!(lambda1 > 0.0) || !std::isfinite(lambda1) || !(lambda2 > 0.0) ||
        !std::isfinite(lambda2)) {
        throw ParameterError("lambda1 and lambda2 must be positive and finite");
    }
}

ScalarField lbf_data_term(const ScalarField& image, const ScalarField& u_plus,
                          const ScalarField& u_minus, const GaussianKernel& k,
                          const FitCache& cache, const LbfParams& lp) {
    require_same_shape(image, u_plus, "lbf_data_term");
    require_same_shape(image, u_minus, "lbf_data_term");
    require_same_shape(image, cache.kt_one, "lbf_data_term cache");

    const double l1 = lp.lambda1;
    const double l2 = lp.lambda2;
    ScalarField linear = ScalarField::uninitialized(image.width(), image.height());
    ScalarField quadratic = ScalarField::uninitialized(image.width(), image.height());
    for (std::size_t i = 0; i < image.size(); ++i) {
        linear[i] = l1 * u_plus[i] - l2 * u_minus[i];
        quadratic[i] = l1 * u_plus[i] * u_plus[i] - l2 * u_minus[i] * u_minus[i];
    }
    const ScalarField k_linear = convolve(linear, k);
    ScalarField out = convolve(quadratic, k);
    for (std::size_t i = 0; i < image.size(); ++i) {
        const double v = image[i];
        out[i] += (l1 - l2) * v * v * cache.kt_one[i] - 2.0 * v * k_linear[i];
    }
    return out;
}

void lbf_step(EvolveState& state, const ScalarField& image, const GaussianKernel& k,
              const FitCache& cache, const Params& params, const LbfParams& lp) {
    require_same_shape(image, state.phi, "lbf_step");
    const auto start = std::chrono::steady_clock::now();
    const std::size_t before = k.conv_count();

    FitPair fit = fit_pair(image, heaviside(state.phi, params.epsilon), k, cache);
    const ScalarField force = lbf_data_term(image, fit.u_plus, fit.u_minus, k, cache, lp);
    state.u_plus = std::move(fit.u_plus);
    state.u_minus = std::move(fit.u_minus);
    ++state.iteration;
    detail::apply_update(state.phi, force, -1.0, params, state.iteration);

    state.convolutions_this_run += k.conv_count() - before;
    state.wall_ms_per_iter =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
}

RunResult lbf_run(const ScalarField& image, const ContourSpec& spec, const Params& params,
                  const LbfParams& lp) {
    lp.validate();
    return detail::run_loop(image, spec, params,
                            [&](EvolveState& s, const ScalarField& img, const GaussianKernel& k,
                                const FitCache& cache) { lbf_step(s, img, k, cache, params, lp); });
}

}  // namespace psseg
