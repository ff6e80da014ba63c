#pragma once

#include "psseg/field.hpp"
#include "psseg/kernel.hpp"

namespace psseg {

/// Image-only convolutions, computed once per run and read-only afterwards.
struct FitCache {
    ScalarField kt_one;  ///< K_t * 1; the unit field up to rounding
    ScalarField kt_image;  ///< K_t * I
    double tau = 1e-8;  ///< denominator guard
};

/// Two convolutions (K*1 and K*I).
FitCache precompute(const ScalarField& image, const GaussianKernel& k, double tau = 1e-8);

struct FitPair {
    ScalarField u_plus;
    ScalarField u_minus;
};

/// Closed-form inside/outside fitting functions as Gaussian-weighted local
/// averages of the image under weights H and 1 - H:
///
///   u+ = K*(I H) / K*H,   u- = (K*I - K*(I H)) / (K*1 - K*H)
///
/// The outside numerator and denominator are derived from the cached image
/// convolutions, so a call costs exactly two convolutions. Where a
/// denominator is not above cache.tau the fit falls back to I, which zeroes
/// the corresponding data residual.
FitPair fit_pair(const ScalarField& image, const ScalarField& h_phi, const GaussianKernel& k,
                 const FitCache& cache);

struct FitGradients {
    Gradient plus;
    Gradient minus;
};

FitGradients fit_gradients(const ScalarField& u_plus, const ScalarField& u_minus);

}  // namespace psseg
