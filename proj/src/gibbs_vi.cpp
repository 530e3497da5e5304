#include "pib/gibbs_vi.hpp"

#include "pib/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pib {

namespace {

void check_spec(const GibbsObjectiveSpec& spec)
{
    spec.model.validate();
    if (!(spec.beta >= 0.0) || !std::isfinite(spec.beta)) {
        throw Error(ErrorCode::beta_out_of_range, "beta must be finite and non-negative");
    }
}

void check_params(const GaussianVariationalParams& p)
{
    if (!std::isfinite(p.mean) || !std::isfinite(p.log_std)) {
        throw Error(ErrorCode::invalid_argument, "variational parameters must be finite");
    }
}

double kl_to_prior(const GaussianVariationalParams& p, const GaussianMeanModel& m)
{
    const double s2 = p.variance();
    const double d = p.mean - m.prior_mean;
    return 0.5 * (s2 / m.prior_var + d * d / m.prior_var - 1.0 - 2.0 * p.log_std +
                  std::log(m.prior_var));
}

} // namespace

double GaussianVariationalParams::variance() const noexcept
{
    return std::exp(2.0 * log_std);
}

double GibbsGradient::norm() const noexcept
{
    return std::hypot(d_mean, d_log_std);
}

double gibbs_objective(const GaussianVariationalParams& params, const GibbsObjectiveSpec& spec)
{
    check_spec(spec);
    check_params(params);
    const GaussianMeanModel& m = spec.model;
    const double s2 = params.variance();
    double neg_ll = 0.0;
    for (double x : m.data) {
        const double d = x - params.mean;
        neg_ll += 0.5 * std::log(2.0 * std::numbers::pi * m.obs_var) + (d * d + s2) / (2.0 * m.obs_var);
    }
    return kl_to_prior(params, m) + spec.beta * neg_ll;
}

GibbsGradient gibbs_gradient(const GaussianVariationalParams& params, const GibbsObjectiveSpec& spec)
{
    check_spec(spec);
    check_params(params);
    const GaussianMeanModel& m = spec.model;
    const double s2 = params.variance();
    const double n = static_cast<double>(m.data.size());
    double residual = 0.0;
    for (double x : m.data) {
        residual += params.mean - x;
    }
    GibbsGradient g;
    g.d_mean = (params.mean - m.prior_mean) / m.prior_var + spec.beta * residual / m.obs_var;
    g.d_log_std = s2 / m.prior_var - 1.0 + spec.beta * n * s2 / m.obs_var;
    return g;
}

GibbsGradient finite_difference_gradient(const GaussianVariationalParams& params,
                                         const GibbsObjectiveSpec& spec, double h)
{
    if (!(h > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "finite-difference step must be positive");
    }
    auto shifted = [&](double dm, double ds) {
        return gibbs_objective({params.mean + dm, params.log_std + ds}, spec);
    };
    GibbsGradient g;
    g.d_mean = (shifted(h, 0.0) - shifted(-h, 0.0)) / (2.0 * h);
    g.d_log_std = (shifted(0.0, h) - shifted(0.0, -h)) / (2.0 * h);
    return g;
}

GibbsResult gibbs_optimize(const GibbsObjectiveSpec& spec, GaussianVariationalParams init,
                           double step_size, std::size_t max_iters, double tol)
{
    check_spec(spec);
    check_params(init);
    if (!(step_size > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "step size must be positive");
    }
    if (!(tol > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "tol must be positive");
    }

    GibbsResult result;
    result.params = init;
    double objective = gibbs_objective(init, spec);
    std::size_t rising = 0;
    for (std::size_t it = 0;; ++it) {
        const GibbsGradient g = gibbs_gradient(result.params, spec);
        const double norm = g.norm();
        result.trace.push_back({it, objective, result.params.mean, result.params.log_std, norm});
        if (norm < tol) {
            result.converged = true;
            result.iterations = it;
            break;
        }
        if (it == max_iters) {
            result.iterations = it;
            break;
        }
        result.params.mean -= step_size * g.d_mean;
        result.params.log_std -= step_size * g.d_log_std;
        if (!std::isfinite(result.params.mean) || !std::isfinite(result.params.log_std)) {
            throw Error(ErrorCode::divergence, "parameters became non-finite");
        }
        const double next = gibbs_objective(result.params, spec);
        if (!std::isfinite(next)) {
            throw Error(ErrorCode::divergence, "objective became non-finite");
        }
        rising = next > objective ? rising + 1 : 0;
        if (rising >= 100) {
            throw Error(ErrorCode::divergence, "objective increased for 100 consecutive steps");
        }
        objective = next;
    }
    return result;
}

double stable_step_size(const GibbsObjectiveSpec& spec)
{
    check_spec(spec);
    const GaussianMeanModel& m = spec.model;
    const double precision =
        1.0 / m.prior_var + spec.beta * static_cast<double>(m.data.size()) / m.obs_var;
    return std::min(kDefaultGibbsStep, 1.0 / precision);
}

} // namespace pib
