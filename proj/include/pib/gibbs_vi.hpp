#pragma once

#include "pib/conjugate.hpp"

#include <cstddef>
#include <vector>

namespace pib {

/// Gaussian representation N(mean, exp(log_std)^2) over the unknown mean.
struct GaussianVariationalParams {
    double mean = 0.0;
    double log_std = 0.0;

    double variance() const noexcept;
};

struct GibbsObjectiveSpec {
    GaussianMeanModel model;
    double beta = 1.0;
};

struct GibbsGradient {
    double d_mean = 0.0;
    double d_log_std = 0.0;

    double norm() const noexcept;
};

/// KL(q || prior) - beta sum_i E_q[log N(x_i; theta, obs_var)], closed form.
double gibbs_objective(const GaussianVariationalParams& params, const GibbsObjectiveSpec& spec);
GibbsGradient gibbs_gradient(const GaussianVariationalParams& params, const GibbsObjectiveSpec& spec);
/// Central differences with step h on each coordinate.
GibbsGradient finite_difference_gradient(const GaussianVariationalParams& params,
                                         const GibbsObjectiveSpec& spec, double h);

struct GibbsTraceEntry {
    std::size_t iteration = 0;
    double objective = 0.0;
    double mean = 0.0;
    double log_std = 0.0;
    double grad_norm = 0.0;
};

struct GibbsResult {
    GaussianVariationalParams params;
    std::vector<GibbsTraceEntry> trace;
    std::size_t iterations = 0;
    bool converged = false;
};

inline constexpr double kDefaultGibbsStep = 0.05;
inline constexpr double kDefaultGibbsTol = 1e-9;
inline constexpr std::size_t kDefaultGibbsMaxIters = 100'000;

/// Fixed-step gradient descent until the gradient norm drops below tol.
/// Throws divergence when the objective rises for 100 consecutive steps or
/// stops being finite.
GibbsResult gibbs_optimize(const GibbsObjectiveSpec& spec, GaussianVariationalParams init,
                           double step_size = kDefaultGibbsStep,
                           std::size_t max_iters = kDefaultGibbsMaxIters,
                           double tol = kDefaultGibbsTol);

/// min(default step, 1 / posterior precision). Fixed-step descent on the mean
/// is unstable once step * precision exceeds 2.
double stable_step_size(const GibbsObjectiveSpec& spec);

} // namespace pib
