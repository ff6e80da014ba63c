#include "psseg/fitting.hpp"

#include "psseg/errors.hpp"

namespace psseg {

FitCache precompute(const ScalarField& image, const GaussianKernel& k, double tau) {
    if (!(tau > 0.0)) throw ParameterError("denominator guard tau must be positive");
    const ScalarField ones(image.width(), image.height(), 1.0);
    return FitCache{convolve(ones, k), convolve(image, k), tau};
}

FitPair fit_pair(const ScalarField& image, const ScalarField& h_phi, const GaussianKernel& k,
                 const FitCache& cache) {
    require_same_shape(image, h_phi, "fit_pair");
    require_same_shape(image, cache.kt_image, "fit_pair cache");

    ScalarField weighted = ScalarField::uninitialized(image.width(), image.height());
    for (std::size_t i = 0; i < image.size(); ++i) weighted[i] = image[i] * h_phi[i];
    const ScalarField num_in = convolve(weighted, k);
    const ScalarField den_in = convolve(h_phi, k);

    FitPair fit{ScalarField::uninitialized(image.width(), image.height()),
                ScalarField::uninitialized(image.width(), image.height())};
    const double tau = cache.tau;
    for (std::size_t i = 0; i < image.size(); ++i) {
        const double den_out = cache.kt_one[i] - den_in[i];
        fit.u_plus[i] = den_in[i] > tau ? num_in[i] / den_in[i] : image[i];
        fit.u_minus[i] = den_out > tau ? (cache.kt_image[i] - num_in[i]) / den_out : image[i];
    }
    return fit;
}

FitGradients fit_gradients(const ScalarField& u_plus, const ScalarField& u_minus) {
    return FitGradients{gradient(u_plus), gradient(u_minus)};
}

}  // namespace psseg
