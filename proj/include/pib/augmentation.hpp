#pragma once

#include "pib/gibbs_vi.hpp"

#include <cstddef>
#include <cstdint>

namespace pib {

/// Additive zero-mean Gaussian perturbation x' = x + eps, eps ~ N(0, noise_std^2).
struct AugmentationSpec {
    double noise_std = 0.0;
    std::size_t mc_samples = 100'000;
    std::uint64_t seed = 0;
};

/// E_t[log N(x'; theta, obs_var)] - log N(x; theta, obs_var) = -noise_std^2 / (2 obs_var).
double augmentation_gap_analytic(double x, double theta, double obs_var,
                                 const AugmentationSpec& spec);

struct McEstimate {
    double value = 0.0;
    double standard_error = 0.0;
};

/// Seeded Monte Carlo estimate of the same gap with its standard error.
McEstimate augmentation_gap_mc(double x, double theta, double obs_var,
                               const AugmentationSpec& spec);

/// The Gibbs objective with every log q(x_i|theta) replaced by its expectation
/// under the augmentation.
double augmented_gibbs_objective(const GaussianVariationalParams& params,
                                 const GibbsObjectiveSpec& spec, double noise_std);

} // namespace pib
