#include "pib/augmentation.hpp"

#include "pib/error.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace pib {

namespace {

void check_inputs(double obs_var, const AugmentationSpec& spec)
{
    if (!(obs_var > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "obs_var must be positive");
    }
    if (!(spec.noise_std >= 0.0) || !std::isfinite(spec.noise_std)) {
        throw Error(ErrorCode::invalid_argument, "noise_std must be finite and non-negative");
    }
}

} // namespace

double augmentation_gap_analytic(double, double, double obs_var, const AugmentationSpec& spec)
{
    check_inputs(obs_var, spec);
    return -spec.noise_std * spec.noise_std / (2.0 * obs_var);
}

McEstimate augmentation_gap_mc(double x, double theta, double obs_var,
                               const AugmentationSpec& spec)
{
    check_inputs(obs_var, spec);
    if (spec.mc_samples < 2) {
        throw Error(ErrorCode::invalid_argument, "need at least two Monte Carlo samples");
    }
    if (spec.noise_std == 0.0) {
        return {0.0, 0.0};
    }

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> noise(0.0, spec.noise_std);
    const double r = x - theta;
    // Welford running mean / variance.
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < spec.mc_samples; ++i) {
        const double eps = noise(rng);
        const double shifted = r + eps;
        const double gap = -(shifted * shifted - r * r) / (2.0 * obs_var);
        const double delta = gap - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (gap - mean);
    }
    const auto n = static_cast<double>(spec.mc_samples);
    return {mean, std::sqrt(m2 / (n - 1.0) / n)};
}

double augmented_gibbs_objective(const GaussianVariationalParams& params,
                                 const GibbsObjectiveSpec& spec, double noise_std)
{
    if (!(noise_std >= 0.0)) {
        throw Error(ErrorCode::invalid_argument, "noise_std must be non-negative");
    }
    const GaussianMeanModel& m = spec.model;
    m.validate();
    const double s2 = params.variance();
    const double tau2 = noise_std * noise_std;
    const double d0 = params.mean - m.prior_mean;
    const double kl = 0.5 * (s2 / m.prior_var + d0 * d0 / m.prior_var - 1.0 - 2.0 * params.log_std +
                             std::log(m.prior_var));
    double neg_ll = 0.0;
    for (double x : m.data) {
        const double d = x - params.mean;
        // E over theta ~ q and x' = x + eps of (x' - theta)^2.
        neg_ll += 0.5 * std::log(2.0 * std::numbers::pi * m.obs_var) +
                  (d * d + s2 + tau2) / (2.0 * m.obs_var);
    }
    return kl + spec.beta * neg_ll;
}

} // namespace pib
