#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace pib {

// Closed-form power posteriors  q(theta) prod_i q(x_i|theta)^beta / Z.
// beta scales the data sufficient statistics only, never the prior.

struct BetaBernoulliModel {
    double prior_a = 1.0;
    double prior_b = 1.0;
    std::size_t k = 0; // successes
    std::size_t n = 0; // trials

    void validate() const;
};

struct GaussianMeanModel {
    double prior_mean = 0.0;
    double prior_var = 1.0;
    double obs_var = 1.0;
    std::vector<double> data;

    void validate() const;
    double data_sum() const noexcept;
};

struct DirichletCategoricalModel {
    std::vector<double> prior_alphas;
    std::vector<double> counts;

    void validate() const;
};

struct BetaPosterior {
    double a = 1.0;
    double b = 1.0;
    double log_partition = 0.0;

    double mean() const noexcept { return a / (a + b); }
    double variance() const noexcept;
};

struct GaussianPosterior {
    double mean = 0.0;
    double variance = 1.0;
    double log_partition = 0.0;
};

struct DirichletPosterior {
    std::vector<double> alphas;
    double log_partition = 0.0;

    std::vector<double> means() const;
    std::vector<double> variances() const;
};

using PowerPosterior = std::variant<BetaPosterior, GaussianPosterior, DirichletPosterior>;

std::string_view family_name(const PowerPosterior& posterior) noexcept;
/// Posterior parameters in a flat list: (a, b), (mean, variance) or alphas.
std::vector<double> parameters(const PowerPosterior& posterior);

BetaPosterior beta_bernoulli_power(const BetaBernoulliModel& m, double beta);
GaussianPosterior gaussian_power(const GaussianMeanModel& m, double beta);
DirichletPosterior dirichlet_categorical_power(const DirichletCategoricalModel& m, double beta);

// Untempered conjugate updates, written independently of the power versions.
BetaPosterior beta_bernoulli_bayes(const BetaBernoulliModel& m);
GaussianPosterior gaussian_bayes(const GaussianMeanModel& m);
DirichletPosterior dirichlet_categorical_bayes(const DirichletCategoricalModel& m);

/// log B(a) = sum_i lgamma(a_i) - lgamma(sum_i a_i).
double log_multivariate_beta(std::span<const double> alphas);

struct LimitRow {
    double beta = 0.0;
    std::vector<double> params;
    double log_partition = 0.0;
    /// max |param - prior param|.
    double prior_distance = 0.0;
    /// max |param - standard Bayes param|; only filled where beta == 1.
    double bayes_distance = 0.0;
    bool has_bayes_distance = false;
    /// max |posterior mean - maximum-likelihood estimate|.
    double mle_distance = 0.0;
    /// Posterior variance (largest component for Dirichlet).
    double posterior_variance = 0.0;
};

struct LimitReport {
    std::string_view family;
    std::vector<LimitRow> rows;
    // Summaries at the smallest beta, beta == 1 and the largest beta.
    double small_beta_prior_distance = 0.0;
    double bayes_distance = 0.0;
    double large_beta_mle_distance = 0.0;
    double large_beta_variance = 0.0;
};

/// Evaluates the beta -> 0, beta = 1 and beta -> infinity behaviour on a
/// schedule. The schedule must contain some beta <= 1e-6, beta == 1 and some
/// beta >= 1e4; throws mle_undefined when there is no data.
LimitReport limit_diagnostics(const BetaBernoulliModel& m, std::span<const double> schedule);
LimitReport limit_diagnostics(const GaussianMeanModel& m, std::span<const double> schedule);
LimitReport limit_diagnostics(const DirichletCategoricalModel& m, std::span<const double> schedule);

} // namespace pib
