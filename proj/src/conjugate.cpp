#include "pib/conjugate.hpp"

#include "pib/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace pib {

namespace {

void check_beta(double beta)
{
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw Error(ErrorCode::beta_out_of_range, "beta must be finite and non-negative");
    }
}

double log_beta_fn(double a, double b)
{
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

void check_schedule(std::span<const double> schedule)
{
    bool small = false;
    bool unit = false;
    bool large = false;
    for (double b : schedule) {
        check_beta(b);
        small = small || b <= 1e-6;
        unit = unit || b == 1.0;
        large = large || b >= 1e4;
    }
    if (!(small && unit && large)) {
        throw Error(ErrorCode::invalid_argument,
                    "limit schedule needs some beta <= 1e-6, beta = 1 and some beta >= 1e4");
    }
}

// Fills the summary fields from the rows.
void summarize(LimitReport& report)
{
    const auto by_beta = [](const LimitRow& a, const LimitRow& b) { return a.beta < b.beta; };
    const auto small = std::min_element(report.rows.begin(), report.rows.end(), by_beta);
    const auto large = std::max_element(report.rows.begin(), report.rows.end(), by_beta);
    report.small_beta_prior_distance = small->prior_distance;
    report.large_beta_mle_distance = large->mle_distance;
    report.large_beta_variance = large->posterior_variance;
    for (const auto& row : report.rows) {
        if (row.has_bayes_distance) {
            report.bayes_distance = row.bayes_distance;
        }
    }
}

} // namespace

void BetaBernoulliModel::validate() const
{
    if (!(prior_a > 0.0) || !(prior_b > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "Beta prior shapes must be positive");
    }
    if (k > n) {
        throw Error(ErrorCode::invalid_argument, "successes exceed trials");
    }
}

void GaussianMeanModel::validate() const
{
    if (!(prior_var > 0.0) || !(obs_var > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "variances must be positive");
    }
    if (!std::isfinite(prior_mean) ||
        !std::all_of(data.begin(), data.end(), [](double x) { return std::isfinite(x); })) {
        throw Error(ErrorCode::invalid_argument, "model values must be finite");
    }
}

double GaussianMeanModel::data_sum() const noexcept
{
    double s = 0.0;
    for (double x : data) {
        s += x;
    }
    return s;
}

void DirichletCategoricalModel::validate() const
{
    if (prior_alphas.size() < 2 || prior_alphas.size() != counts.size()) {
        throw Error(ErrorCode::invalid_argument,
                    "need at least two categories and one count per category");
    }
    for (std::size_t i = 0; i < prior_alphas.size(); ++i) {
        if (!(prior_alphas[i] > 0.0) || !(counts[i] >= 0.0) || !std::isfinite(counts[i])) {
            throw Error(ErrorCode::invalid_argument,
                        "alphas must be positive and counts non-negative");
        }
    }
}

double BetaPosterior::variance() const noexcept
{
    const double s = a + b;
    return a * b / (s * s * (s + 1.0));
}

std::vector<double> DirichletPosterior::means() const
{
    double total = 0.0;
    for (double a : alphas) {
        total += a;
    }
    std::vector<double> out;
    for (double a : alphas) {
        out.push_back(a / total);
    }
    return out;
}

std::vector<double> DirichletPosterior::variances() const
{
    double total = 0.0;
    for (double a : alphas) {
        total += a;
    }
    std::vector<double> out;
    for (double a : alphas) {
        const double m = a / total;
        out.push_back(m * (1.0 - m) / (total + 1.0));
    }
    return out;
}

std::string_view family_name(const PowerPosterior& posterior) noexcept
{
    switch (posterior.index()) {
    case 0: return "beta_bernoulli";
    case 1: return "gaussian";
    default: return "dirichlet_categorical";
    }
}

std::vector<double> parameters(const PowerPosterior& posterior)
{
    if (const auto* b = std::get_if<BetaPosterior>(&posterior)) {
        return {b->a, b->b};
    }
    if (const auto* g = std::get_if<GaussianPosterior>(&posterior)) {
        return {g->mean, g->variance};
    }
    return std::get<DirichletPosterior>(posterior).alphas;
}

double log_multivariate_beta(std::span<const double> alphas)
{
    double acc = 0.0;
    double total = 0.0;
    for (double a : alphas) {
        acc += std::lgamma(a);
        total += a;
    }
    return acc - std::lgamma(total);
}

BetaPosterior beta_bernoulli_power(const BetaBernoulliModel& m, double beta)
{
    m.validate();
    check_beta(beta);
    BetaPosterior out;
    out.a = m.prior_a + beta * static_cast<double>(m.k);
    out.b = m.prior_b + beta * static_cast<double>(m.n - m.k);
    out.log_partition = log_beta_fn(out.a, out.b) - log_beta_fn(m.prior_a, m.prior_b);
    return out;
}

GaussianPosterior gaussian_power(const GaussianMeanModel& m, double beta)
{
    m.validate();
    check_beta(beta);
    const double n = static_cast<double>(m.data.size());
    const double sum = m.data_sum();
    const double precision = 1.0 / m.prior_var + beta * n / m.obs_var;

    GaussianPosterior out;
    out.variance = 1.0 / precision;
    out.mean = (m.prior_mean / m.prior_var + beta * sum / m.obs_var) / precision;
    if (beta == 0.0 || m.data.empty()) {
        out.log_partition = 0.0;
        return out;
    }

    // log of  int N(theta; mu0, v0) prod_i N(x_i; theta, s2)^beta dtheta
    const double mean_x = sum / n;
    double scatter = 0.0;
    for (double x : m.data) {
        scatter += (x - mean_x) * (x - mean_x);
    }
    const double bn = beta * n;
    const double s2 = m.obs_var;
    const double shift = mean_x - m.prior_mean;
    out.log_partition = -0.5 * bn * std::log(2.0 * std::numbers::pi * s2) -
                        beta * scatter / (2.0 * s2) -
                        0.5 * std::log1p(m.prior_var * bn / s2) -
                        bn * shift * shift / (2.0 * (s2 + bn * m.prior_var));
    return out;
}

DirichletPosterior dirichlet_categorical_power(const DirichletCategoricalModel& m, double beta)
{
    m.validate();
    check_beta(beta);
    DirichletPosterior out;
    out.alphas.resize(m.prior_alphas.size());
    for (std::size_t i = 0; i < out.alphas.size(); ++i) {
        out.alphas[i] = m.prior_alphas[i] + beta * m.counts[i];
    }
    out.log_partition = log_multivariate_beta(out.alphas) - log_multivariate_beta(m.prior_alphas);
    return out;
}

BetaPosterior beta_bernoulli_bayes(const BetaBernoulliModel& m)
{
    m.validate();
    BetaPosterior out;
    out.a = m.prior_a + static_cast<double>(m.k);
    out.b = m.prior_b + static_cast<double>(m.n - m.k);
    out.log_partition = log_beta_fn(out.a, out.b) - log_beta_fn(m.prior_a, m.prior_b);
    return out;
}

GaussianPosterior gaussian_bayes(const GaussianMeanModel& m)
{
    m.validate();
    const double n = static_cast<double>(m.data.size());
    const double s2 = m.obs_var;
    const double v0 = m.prior_var;

    GaussianPosterior out;
    out.variance = 1.0 / (1.0 / v0 + n / s2);
    out.mean = out.variance * (m.prior_mean / v0 + m.data_sum() / s2);

    // Marginal likelihood x ~ N(mu0 1, s2 I + v0 1 1^T), via the determinant
    // lemma and Sherman-Morrison.
    double r_sq = 0.0;
    double r_sum = 0.0;
    for (double x : m.data) {
        const double r = x - m.prior_mean;
        r_sq += r * r;
        r_sum += r;
    }
    const double log_det = n * std::log(s2) + std::log1p(n * v0 / s2);
    const double quad = (r_sq - v0 * r_sum * r_sum / (s2 + n * v0)) / s2;
    out.log_partition = -0.5 * (n * std::log(2.0 * std::numbers::pi) + log_det + quad);
    return out;
}

DirichletPosterior dirichlet_categorical_bayes(const DirichletCategoricalModel& m)
{
    m.validate();
    DirichletPosterior out;
    for (std::size_t i = 0; i < m.prior_alphas.size(); ++i) {
        out.alphas.push_back(m.prior_alphas[i] + m.counts[i]);
    }
    out.log_partition = log_multivariate_beta(out.alphas) - log_multivariate_beta(m.prior_alphas);
    return out;
}

LimitReport limit_diagnostics(const BetaBernoulliModel& m, std::span<const double> schedule)
{
    m.validate();
    check_schedule(schedule);
    if (m.n == 0) {
        throw Error(ErrorCode::mle_undefined, "no trials");
    }
    const double mle = static_cast<double>(m.k) / static_cast<double>(m.n);
    const std::vector<double> prior{m.prior_a, m.prior_b};
    const BetaPosterior bayes = beta_bernoulli_bayes(m);

    LimitReport report;
    report.family = "beta_bernoulli";
    for (double beta : schedule) {
        const BetaPosterior post = beta_bernoulli_power(m, beta);
        LimitRow row;
        row.beta = beta;
        row.params = {post.a, post.b};
        row.log_partition = post.log_partition;
        row.prior_distance = max_abs_diff(row.params, prior);
        if (beta == 1.0) {
            row.has_bayes_distance = true;
            row.bayes_distance = max_abs_diff(row.params, {bayes.a, bayes.b});
        }
        row.mle_distance = std::abs(post.mean() - mle);
        row.posterior_variance = post.variance();
        report.rows.push_back(std::move(row));
    }
    summarize(report);
    return report;
}

LimitReport limit_diagnostics(const GaussianMeanModel& m, std::span<const double> schedule)
{
    m.validate();
    check_schedule(schedule);
    if (m.data.empty()) {
        throw Error(ErrorCode::mle_undefined, "no observations");
    }
    const double mle = m.data_sum() / static_cast<double>(m.data.size());
    const std::vector<double> prior{m.prior_mean, m.prior_var};
    const GaussianPosterior bayes = gaussian_bayes(m);

    LimitReport report;
    report.family = "gaussian";
    for (double beta : schedule) {
        const GaussianPosterior post = gaussian_power(m, beta);
        LimitRow row;
        row.beta = beta;
        row.params = {post.mean, post.variance};
        row.log_partition = post.log_partition;
        row.prior_distance = max_abs_diff(row.params, prior);
        if (beta == 1.0) {
            row.has_bayes_distance = true;
            row.bayes_distance = max_abs_diff(row.params, {bayes.mean, bayes.variance});
        }
        row.mle_distance = std::abs(post.mean - mle);
        row.posterior_variance = post.variance;
        report.rows.push_back(std::move(row));
    }
    summarize(report);
    return report;
}

LimitReport limit_diagnostics(const DirichletCategoricalModel& m, std::span<const double> schedule)
{
    m.validate();
    check_schedule(schedule);
    double total = 0.0;
    for (double c : m.counts) {
        total += c;
    }
    if (!(total > 0.0)) {
        throw Error(ErrorCode::mle_undefined, "no observations");
    }
    std::vector<double> mle;
    for (double c : m.counts) {
        mle.push_back(c / total);
    }
    const DirichletPosterior bayes = dirichlet_categorical_bayes(m);

    LimitReport report;
    report.family = "dirichlet_categorical";
    for (double beta : schedule) {
        const DirichletPosterior post = dirichlet_categorical_power(m, beta);
        LimitRow row;
        row.beta = beta;
        row.params = post.alphas;
        row.log_partition = post.log_partition;
        row.prior_distance = max_abs_diff(row.params, m.prior_alphas);
        if (beta == 1.0) {
            row.has_bayes_distance = true;
            row.bayes_distance = max_abs_diff(row.params, bayes.alphas);
        }
        row.mle_distance = max_abs_diff(post.means(), mle);
        const auto vars = post.variances();
        row.posterior_variance = *std::max_element(vars.begin(), vars.end());
        report.rows.push_back(std::move(row));
    }
    summarize(report);
    return report;
}

} // namespace pib
