#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "psseg/field.hpp"
#include "psseg/fitting.hpp"
#include "psseg/kernel.hpp"
#include "psseg/regularize.hpp"

namespace psseg {

struct Params {
    double alpha = 0.02;          ///< distance-regularization weight
    double nu = 0.001 * 255 * 255;  ///< length (curvature) weight
    double mu = 0.02;             ///< weight on |grad u+-|^2
    double dt = 0.025;
    double t = 1.5;               ///< kernel scale
    double epsilon = 1.0;         ///< Heaviside/Dirac width
    double c0 = 2.0;              ///< initial level-set magnitude
    double tau = 1e-8;            ///< fitting denominator guard
    double eta = 1e-10;           ///< gradient-norm floor in curvature
    long max_iters = 1000;
    double tol = 1e-4;            ///< sign-change fraction regarded as "stable"
    long patience = 10;           ///< consecutive stable iterations before stopping

    /// Throws ParameterError on the first violated constraint.
    void validate() const;
};

struct EvolveState {
    ScalarField phi;
    ScalarField u_plus;
    ScalarField u_minus;
    long iteration = 0;
    std::size_t convolutions_this_run = 0;
    double wall_ms_per_iter = 0.0;  ///< duration of the most recent step
};

struct IterationMetrics {
    long iteration = 0;
    double sign_change_frac = 0.0;
    std::size_t convolutions = 0;  ///< cumulative, including the precompute
    double wall_ms = 0.0;
};

struct RunResult {
    ScalarField initial_phi;
    ScalarField phi;
    ScalarField u_plus;
    ScalarField u_minus;
    BinaryMask initial_mask;
    BinaryMask mask;  ///< {phi > 0}
    long iterations = 0;
    double total_wall_ms = 0.0;
    std::size_t total_convolutions = 0;
    std::vector<IterationMetrics> rows;
};

/// -(u+ - I)^2 - mu |grad u+|^2 + (u- - I)^2 + mu |grad u-|^2, pointwise.
/// Positive values favour the inside region.
ScalarField data_term(const ScalarField& image, const ScalarField& u_plus,
                      const ScalarField& u_minus, double mu);

/// One explicit Euler step of the level-set equation
///
///   phi_t = alpha (lap phi - kappa) + delta(phi) (nu kappa + data_term)
///
/// with kappa = div(grad phi / |grad phi|). The fitting functions are
/// refreshed from H(phi) first, which costs two convolutions.
/// Throws NumericalBlowup if phi stops being finite.
void step(EvolveState& state, const ScalarField& image, const GaussianKernel& k,
          const FitCache& cache, const Params& params);

/// Initialize, precompute, then step until the mask is stable or
/// params.max_iters is reached.
RunResult run(const ScalarField& image, const ContourSpec& spec, const Params& params);

/// 2|a & b| / (|a| + |b|); 1 when both masks are empty.
double dice(const BinaryMask& a, const BinaryMask& b);

namespace detail {

/// phi += dt * (alpha (lap - kappa) + delta(phi) (nu kappa + data_sign * data)),
/// then checks finiteness. Shared by both solvers.
void apply_update(ScalarField& phi, const ScalarField& data, double data_sign,
                  const Params& params, long iteration);

using StepFn = std::function<void(EvolveState&, const ScalarField&, const GaussianKernel&,
                                  const FitCache&)>;

/// Stopping loop shared by run() and lbf_run().
RunResult run_loop(const ScalarField& image, const ContourSpec& spec, const Params& params,
                   const StepFn& step_fn);

}  // namespace detail

}  // namespace psseg
