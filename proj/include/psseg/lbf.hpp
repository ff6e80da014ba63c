#pragma once

#include "psseg/evolve.hpp"

namespace psseg {

/// Local binary fitting baseline, sharing kernel and stopping rule with the
/// closed-form solver so only the per-iteration data term differs.
struct LbfParams {
    double lambda1 = 1.0;
    double lambda2 = 1.0;

    void validate() const;
};

/// lambda1 e1 - lambda2 e2 in its expanded form
///
///   (l1 - l2) I^2 (K*1) - 2 I K*(l1 u+ - l2 u-) + K*(l1 u+^2 - l2 u-^2)
///
/// with K*1 taken from the cache. Two convolutions per call.
ScalarField lbf_data_term(const ScalarField& image, const ScalarField& u_plus,
                          const ScalarField& u_minus, const GaussianKernel& k,
                          const FitCache& cache, const LbfParams& lp);

/// fit_pair + lbf_data_term (four convolutions), then the shared update with
/// the data force entering negatively.
void lbf_step(EvolveState& state, const ScalarField& image, const GaussianKernel& k,
              const FitCache& cache, const Params& params, const LbfParams& lp);

RunResult lbf_run(const ScalarField& image, const ContourSpec& spec, const Params& params,
                  const LbfParams& lp);

}  // namespace psseg
