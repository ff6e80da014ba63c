#include "psseg/evolve.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "psseg/errors.hpp"

namespace psseg {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ParameterError(std::string(name) + " must be positive and finite");
    }
}

}  // namespace

void Params::validate() const {
    require_positive(alpha, "alpha");
    require_positive(nu, "nu");
    require_positive(mu, "mu");
    require_positive(dt, "dt");
    require_positive(t, "t");
    require_positive(epsilon, "epsilon");
    require_positive(c0, "c0");
    require_positive(tau, "tau");
    require_positive(eta, "eta");
    if (max_iters < 0) throw ParameterError("max_iters must be non-negative");
    if (!(tol >= 0.0)) throw ParameterError("tol must be non-negative");
    if (patience < 1) throw ParameterError("patience must be at least 1");
}

ScalarField data_term(const ScalarField& image, const ScalarField& u_plus,
                      const ScalarField& u_minus, double mu) {
    require_same_shape(image, u_plus, "data_term");
    require_same_shape(image, u_minus, "data_term");
    const ScalarField gp = gradient_norm2(u_plus);
    const ScalarField gm = gradient_norm2(u_minus);
    ScalarField out = ScalarField::uninitialized(image.width(), image.height());
    for (std::size_t i = 0; i < image.size(); ++i) {
        const double rp = u_plus[i] - image[i];
        const double rm = u_minus[i] - image[i];
        out[i] = -rp * rp - mu * gp[i] + rm * rm + mu * gm[i];
    }
    return out;
}

void step(EvolveState& state, const ScalarField& image, const GaussianKernel& k,
          const FitCache& cache, const Params& params) {
    require_same_shape(image, state.phi, "step");
    const auto start = std::chrono::steady_clock::now();
    const std::size_t before = k.conv_count();

    FitPair fit = fit_pair(image, heaviside(state.phi, params.epsilon), k, cache);
    const ScalarField force = data_term(image, fit.u_plus, fit.u_minus, params.mu);
    state.u_plus = std::move(fit.u_plus);
    state.u_minus = std::move(fit.u_minus);
    ++state.iteration;
    detail::apply_update(state.phi, force, 1.0, params, state.iteration);

    state.convolutions_this_run += k.conv_count() - before;
    state.wall_ms_per_iter =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
}

RunResult run(const ScalarField& image, const ContourSpec& spec, const Params& params) {
    return detail::run_loop(image, spec, params,
                            [&params](EvolveState& s, const ScalarField& img,
                                      const GaussianKernel& k, const FitCache& cache) {
                                step(s, img, k, cache, params);
                            });
}

double dice(const BinaryMask& a, const BinaryMask& b) {
    if (a.width != b.width || a.height != b.height) {
        throw DimensionError("dice: mask shapes differ");
    }
    std::size_t both = 0;
    std::size_t na = 0;
    std::size_t nb = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const bool in_a = a.values[i] != 0;
        const bool in_b = b.values[i] != 0;
        na += in_a;
        nb += in_b;
        both += in_a && in_b;
    }
    if (na + nb == 0) return 1.0;
    return 2.0 * static_cast<double>(both) / static_cast<double>(na + nb);
}

namespace detail {

void apply_update(ScalarField& phi, const ScalarField& data, double data_sign,
                  const Params& params, long iteration) {
    require_same_shape(phi, data, "apply_update");
    const ScalarField kappa = curvature(phi, params.eta);
    const ScalarField lap = laplacian(phi);
    for (std::size_t i = 0; i < phi.size(); ++i) {
        const double reg = lap[i] - kappa[i];
        const double delta = dirac(phi[i], params.epsilon);
        phi[i] += params.dt * (params.alpha * reg +
                               delta * (params.nu * kappa[i] + data_sign * data[i]));
    }
    if (!phi.all_finite()) throw NumericalBlowup(iteration);
}

RunResult run_loop(const ScalarField& image, const ContourSpec& spec, const Params& params,
                   const StepFn& step_fn) {
    params.validate();
    require_stencil_size(image);
    if (!image.all_finite() || image.min() < 0.0 || image.max() > 255.0) {
        throw ParameterError("image intensities must lie in [0, 255]");
    }

    const GaussianKernel k = make_kernel(params.t);
    RunResult result;
    result.initial_phi = init_phi(spec, image.width(), image.height(), params.c0);
    result.initial_mask = positive_region(result.initial_phi);

    const FitCache cache = precompute(image, k, params.tau);
    EvolveState state{result.initial_phi, image, image, 0, k.conv_count(), 0.0};

    BinaryMask previous = result.initial_mask;
    long stable = 0;
    while (state.iteration < params.max_iters) {
        step_fn(state, image, k, cache);

        BinaryMask current = positive_region(state.phi);
        std::size_t changed = 0;
        for (std::size_t i = 0; i < current.values.size(); ++i) {
            changed += current.values[i] != previous.values[i];
        }
        const double frac =
            static_cast<double>(changed) / static_cast<double>(current.values.size());
        result.rows.push_back({state.iteration, frac, k.conv_count(), state.wall_ms_per_iter});
        result.total_wall_ms += state.wall_ms_per_iter;
        previous = std::move(current);

        stable = frac < params.tol ? stable + 1 : 0;
        if (stable >= params.patience) break;
    }

    result.iterations = state.iteration;
    result.total_convolutions = k.conv_count();
    result.mask = std::move(previous);
    result.phi = std::move(state.phi);
    result.u_plus = std::move(state.u_plus);
    result.u_minus = std::move(state.u_minus);
    return result;
}

}  // namespace detail

}  // namespace psseg
