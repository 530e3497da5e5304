#include "pib/pib_solver.hpp"

#include "pib/error.hpp"
#include "pib/kernels.hpp"
#include "pib/random.hpp"

#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <string>

namespace pib {

namespace {

constexpr double kTableTolerance = 1e-12;
constexpr double kRewriteTolerance = 1e-10;

void check_rows(std::span<const double> values, std::size_t n_rows, std::size_t width,
                const char* what)
{
    if (width == 0 || values.size() != n_rows * width) {
        throw Error(ErrorCode::dimension_mismatch, std::string(what) + " has the wrong shape");
    }
    for (std::size_t r = 0; r < n_rows; ++r) {
        double total = 0.0;
        for (std::size_t c = 0; c < width; ++c) {
            const double v = values[r * width + c];
            if (!std::isfinite(v) || v < 0.0) {
                throw Error(ErrorCode::invalid_distribution,
                            std::string(what) + " has a negative or non-finite entry");
            }
            total += v;
        }
        if (std::abs(total - 1.0) > kTableTolerance) {
            throw Error(ErrorCode::invalid_distribution,
                        std::string(what) + " row " + std::to_string(r) + " does not sum to 1");
        }
    }
}

std::vector<std::size_t> symbol_counts(std::size_t index, std::size_t length, std::size_t k_x)
{
    std::vector<std::size_t> counts(k_x, 0);
    for (std::size_t d = 0; d < length; ++d) {
        ++counts[index % k_x];
        index /= k_x;
    }
    return counts;
}

// Folds output b into output a for every row.
Channel merged_outputs(const Channel& channel, std::size_t a, std::size_t b)
{
    std::vector<double> v(channel.values().begin(), channel.values().end());
    const std::size_t k = channel.k_theta();
    for (std::size_t p = 0; p < channel.n_rows(); ++p) {
        v[p * k + a] += v[p * k + b];
        v[p * k + b] = 0.0;
    }
    return Channel(channel.n_rows(), k, std::move(v));
}

// Greedily merges pairs of used outputs while that does not raise the
// objective. Below the first phase transition the fixed point only approaches
// the trivial channel geometrically; merging lands on it exactly.
Channel merge_redundant_outputs(const BottleneckProblem& problem, Channel channel, double beta,
                                double& objective)
{
    const auto used = [](const Channel& c, std::size_t t) {
        for (std::size_t p = 0; p < c.n_rows(); ++p) {
            if (c(p, t) > 0.0) {
                return true;
            }
        }
        return false;
    };
    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t a = 0; a < channel.k_theta() && !merged; ++a) {
            for (std::size_t b = a + 1; b < channel.k_theta() && !merged; ++b) {
                if (!used(channel, b)) {
                    continue;
                }
                Channel candidate = merged_outputs(channel, a, b);
                const double value = problem.objective(candidate, beta);
                if (value <= objective) {
                    channel = std::move(candidate);
                    objective = value;
                    merged = true;
                }
            }
        }
    }
    return channel;
}

} // namespace

PriorTable::PriorTable(std::vector<double> q_theta) : q_(std::move(q_theta))
{
    check_rows(q_, 1, q_.size(), "prior table");
}

LikelihoodTable::LikelihoodTable(std::size_t k_theta, std::size_t k_x, std::vector<double> values)
    : k_theta_(k_theta), k_x_(k_x), values_(std::move(values))
{
    check_rows(values_, k_theta_, k_x_, "likelihood table");
}

ConditionalPrior::ConditionalPrior(std::size_t n_future_sets, std::size_t k_theta,
                                   std::vector<double> values)
    : n_rows_(n_future_sets), k_theta_(k_theta), values_(std::move(values))
{
    check_rows(values_, n_rows_, k_theta_, "conditional prior");
}

void SolverConfig::validate() const
{
    if (!(beta >= 0.0 && beta < 1.0)) {
        throw Error(ErrorCode::beta_out_of_range,
                    "the self-consistent solver needs beta in [0, 1), got " + std::to_string(beta));
    }
    if (k_theta < 1) {
        throw Error(ErrorCode::invalid_argument, "k_theta must be at least 1");
    }
    if (restarts < 1) {
        throw Error(ErrorCode::invalid_argument, "restarts must be at least 1");
    }
    if (!(tol > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "tol must be positive");
    }
}

double exact_pib_objective(const ChannelJoint& cj, double beta)
{
    const InformationTerms t = information_terms(cj);
    const double value = t.cmi_theta_past_given_future - beta * t.mi_theta_past;
    const double rewrite = (1.0 - beta) * t.mi_theta_past - t.mi_theta_future;
    if (std::abs(value - rewrite) > kRewriteTolerance) {
        throw Error(ErrorCode::numerical_failure,
                    "objective and its rewrite disagree by " + std::to_string(value - rewrite));
    }
    return value;
}

BottleneckProblem::BottleneckProblem(const JointModel& joint)
    : n_past_sets_(joint.n_past_sets()), n_future_sets_(joint.n_future_sets())
{
    const Table2 pf = joint.past_future();
    past_ = pf.row_marginal();
    predictive_.assign(n_past_sets_ * n_future_sets_, 0.0);
    for (std::size_t p = 0; p < n_past_sets_; ++p) {
        for (std::size_t f = 0; f < n_future_sets_; ++f) {
            predictive_[p * n_future_sets_ + f] =
                past_[p] > 0.0 ? pf(p, f) / past_[p] : 1.0 / static_cast<double>(n_future_sets_);
        }
    }
}

double BottleneckProblem::objective(const Channel& channel, double beta) const
{
    const std::size_t k = channel.k_theta();
    std::vector<double> marg(k);
    std::vector<double> fgt(k * n_future_sets_);
    kernels::omp::theta_statistics(past_, predictive_, n_future_sets_, channel.values(), k, marg,
                                   fgt);

    Table2 past_theta(n_past_sets_, k);
    for (std::size_t p = 0; p < n_past_sets_; ++p) {
        for (std::size_t t = 0; t < k; ++t) {
            past_theta(p, t) = past_[p] * channel(p, t);
        }
    }
    Table2 future_theta(n_future_sets_, k);
    for (std::size_t t = 0; t < k; ++t) {
        for (std::size_t f = 0; f < n_future_sets_; ++f) {
            future_theta(f, t) = marg[t] * fgt[t * n_future_sets_ + f];
        }
    }
    return (1.0 - beta) * mutual_information(past_theta) - mutual_information(future_theta);
}

Channel ib_iteration(const BottleneckProblem& problem, const Channel& channel, double beta)
{
    if (!(beta >= 0.0 && beta < 1.0)) {
        throw Error(ErrorCode::beta_out_of_range, "beta must be in [0, 1)");
    }
    if (channel.n_rows() != problem.n_past_sets()) {
        throw Error(ErrorCode::dimension_mismatch, "channel does not match the past space");
    }
    const std::size_t k = channel.k_theta();
    const std::size_t nf = problem.n_future_sets();
    std::vector<double> marg(k);
    std::vector<double> fgt(k * nf);
    kernels::omp::theta_statistics(problem.past_marginal(), problem.predictive(), nf,
                                   channel.values(), k, marg, fgt);
    std::vector<double> next(channel.values().size());
    kernels::omp::ib_row_update(problem.predictive(), nf, marg, fgt, 1.0 / (1.0 - beta),
                                channel.values(), k, next);
    return Channel(channel.n_rows(), k, std::move(next));
}

SolveResult ba_solve(const JointModel& joint, const SolverConfig& cfg)
{
    cfg.validate();
    return ba_solve(joint, BottleneckProblem(joint), cfg);
}

SolveResult ba_solve(const JointModel& joint, const BottleneckProblem& problem,
                     const SolverConfig& cfg)
{
    cfg.validate();

    struct RestartOutcome {
        std::optional<Channel> channel;
        std::size_t iterations = 0;
        bool converged = false;
        double exact = std::numeric_limits<double>::infinity();
    };
    const std::size_t restarts = cfg.restarts;
    std::vector<RestartOutcome> outcomes(restarts);
    std::vector<std::exception_ptr> errors(restarts);

#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(restarts); ++r) {
        const auto idx = static_cast<std::size_t>(r);
        try {
            Rng rng(cfg.seed + idx);
            Channel channel = random_channel(rng, problem.n_past_sets(), cfg.k_theta);
            double objective = problem.objective(channel, cfg.beta);
            RestartOutcome& out = outcomes[idx];
            for (std::size_t it = 1; it <= cfg.max_iters; ++it) {
                channel = ib_iteration(problem, channel, cfg.beta);
                const double next = problem.objective(channel, cfg.beta);
                out.iterations = it;
                const double change = std::abs(next - objective);
                objective = next;
                if (change < cfg.tol) {
                    out.converged = true;
                    break;
                }
            }
            channel = merge_redundant_outputs(problem, std::move(channel), cfg.beta, objective);
            out.exact = exact_pib_objective(channel_joint(joint, channel), cfg.beta);
            out.channel = std::move(channel);
        } catch (...) {
            errors[idx] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    std::size_t best = 0;
    for (std::size_t r = 1; r < restarts; ++r) {
        if (outcomes[r].exact < outcomes[best].exact) {
            best = r;
        }
    }

    SolveResult result{*outcomes[best].channel, {}};
    SolveDiagnostics& d = result.diagnostics;
    d.iterations = outcomes[best].iterations;
    d.restarts_used = restarts;
    d.best_restart = best;
    d.objective = outcomes[best].exact;
    d.converged = outcomes[best].converged;
    for (const auto& o : outcomes) {
        d.restart_objectives.push_back(o.exact);
        d.converged_restarts += o.converged ? 1 : 0;
    }
    return result;
}

double rate_bound(const ChannelJoint& cj, const PriorTable& prior)
{
    if (prior.k_theta() != cj.k_theta()) {
        throw Error(ErrorCode::dimension_mismatch, "prior size differs from k_theta");
    }
    const std::vector<double> past = cj.past_marginal();
    const Channel& c = cj.channel();
    double acc = 0.0;
    for (std::size_t p = 0; p < cj.n_past_sets(); ++p) {
        for (std::size_t t = 0; t < cj.k_theta(); ++t) {
            const double mass = past[p] * c(p, t);
            if (mass > 0.0) {
                if (!(prior[t] > 0.0)) {
                    throw Error(ErrorCode::support_violation,
                                "q(theta) = 0 where the representation has mass");
                }
                acc += mass * std::log(c(p, t) / prior[t]);
            }
        }
    }
    return acc;
}

double expected_log_likelihood(const ChannelJoint& cj, const LikelihoodTable& lik)
{
    if (lik.k_theta() != cj.k_theta() || lik.k_x() != cj.k_x()) {
        throw Error(ErrorCode::dimension_mismatch, "likelihood table shape mismatch");
    }
    const std::vector<double> past = cj.past_marginal();
    const Channel& c = cj.channel();
    double acc = 0.0;
    for (std::size_t p = 0; p < cj.n_past_sets(); ++p) {
        const auto counts = symbol_counts(p, cj.n_past(), cj.k_x());
        for (std::size_t t = 0; t < cj.k_theta(); ++t) {
            const double mass = past[p] * c(p, t);
            if (!(mass > 0.0)) {
                continue;
            }
            double ll = 0.0;
            for (std::size_t x = 0; x < cj.k_x(); ++x) {
                if (counts[x] == 0) {
                    continue;
                }
                if (!(lik(t, x) > 0.0)) {
                    throw Error(ErrorCode::support_violation,
                                "q(x|theta) = 0 for an observed symbol");
                }
                ll += static_cast<double>(counts[x]) * std::log(lik(t, x));
            }
            acc += mass * ll;
        }
    }
    return acc;
}

double variational_objective(const ChannelJoint& cj, const PriorTable& prior,
                             const LikelihoodTable& lik, double beta)
{
    if (!(beta >= 0.0)) {
        throw Error(ErrorCode::beta_out_of_range, "beta must be non-negative");
    }
    const double rate = rate_bound(cj, prior);
    if (beta == 0.0) {
        return rate;
    }
    const double h_past = entropy(cj.past_marginal());
    return rate - beta * (expected_log_likelihood(cj, lik) + h_past);
}

PriorTable optimal_prior(const ChannelJoint& cj)
{
    return PriorTable(cj.theta_marginal());
}

LikelihoodTable optimal_factorized_likelihood(const ChannelJoint& cj)
{
    const std::size_t k = cj.k_theta();
    const std::size_t kx = cj.k_x();
    const std::vector<double> past = cj.past_marginal();
    const Channel& c = cj.channel();
    std::vector<double> weighted(k * kx, 0.0);
    std::vector<double> theta_mass(k, 0.0);
    for (std::size_t p = 0; p < cj.n_past_sets(); ++p) {
        const auto counts = symbol_counts(p, cj.n_past(), kx);
        for (std::size_t t = 0; t < k; ++t) {
            const double mass = past[p] * c(p, t);
            theta_mass[t] += mass;
            for (std::size_t x = 0; x < kx; ++x) {
                weighted[t * kx + x] += mass * static_cast<double>(counts[x]);
            }
        }
    }
    const double n = static_cast<double>(cj.n_past());
    std::vector<double> values(k * kx);
    for (std::size_t t = 0; t < k; ++t) {
        for (std::size_t x = 0; x < kx; ++x) {
            values[t * kx + x] = theta_mass[t] > 0.0
                                     ? weighted[t * kx + x] / (n * theta_mass[t])
                                     : 1.0 / static_cast<double>(kx);
        }
    }
    return LikelihoodTable(k, kx, std::move(values));
}

ConditionalPrior exact_mixture_prior(const ChannelJoint& cj)
{
    const std::size_t k = cj.k_theta();
    const std::size_t np = cj.n_past_sets();
    const std::size_t nf = cj.n_future_sets();
    const Table2 pf = cj.past_future_theta().marginalize(Axis::third);
    const std::vector<double> future = pf.col_marginal();
    const Channel& c = cj.channel();
    std::vector<double> values(nf * k, 0.0);
    for (std::size_t f = 0; f < nf; ++f) {
        if (!(future[f] > 0.0)) {
            for (std::size_t t = 0; t < k; ++t) {
                values[f * k + t] = 1.0 / static_cast<double>(k);
            }
            continue;
        }
        for (std::size_t p = 0; p < np; ++p) {
            const double w = pf(p, f) / future[f];
            for (std::size_t t = 0; t < k; ++t) {
                values[f * k + t] += c(p, t) * w;
            }
        }
    }
    return ConditionalPrior(nf, k, std::move(values));
}

double conditional_prior_bound(const ChannelJoint& cj, const ConditionalPrior& cp)
{
    if (cp.k_theta() != cj.k_theta() || cp.n_future_sets() != cj.n_future_sets()) {
        throw Error(ErrorCode::dimension_mismatch, "conditional prior shape mismatch");
    }
    const Table3 pft = cj.past_future_theta();
    const Channel& c = cj.channel();
    double acc = 0.0;
    for (std::size_t p = 0; p < cj.n_past_sets(); ++p) {
        for (std::size_t f = 0; f < cj.n_future_sets(); ++f) {
            for (std::size_t t = 0; t < cj.k_theta(); ++t) {
                const double mass = pft(p, f, t);
                if (!(mass > 0.0)) {
                    continue;
                }
                if (!(cp(f, t) > 0.0)) {
                    throw Error(ErrorCode::support_violation,
                                "q(theta|x_F) = 0 where the representation has mass");
                }
                acc += mass * std::log(c(p, t) / cp(f, t));
            }
        }
    }
    return acc;
}

std::vector<CurveRecord> information_curve(const JointModel& joint,
                                           std::span<const double> betas,
                                           const SolverConfig& cfg_template)
{
    for (std::size_t i = 0; i < betas.size(); ++i) {
        if (!(betas[i] >= 0.0 && betas[i] < 1.0)) {
            throw Error(ErrorCode::beta_out_of_range, "curve betas must lie in [0, 1)");
        }
        if (i > 0 && !(betas[i] > betas[i - 1])) {
            throw Error(ErrorCode::invalid_argument, "curve betas must be strictly increasing");
        }
    }

    const BottleneckProblem problem(joint);
    std::vector<CurveRecord> records(betas.size());
    std::vector<std::exception_ptr> errors(betas.size());

#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(betas.size()); ++i) {
        const auto idx = static_cast<std::size_t>(i);
        try {
            SolverConfig cfg = cfg_template;
            cfg.beta = betas[idx];
            const SolveResult solved = ba_solve(joint, problem, cfg);
            const ChannelJoint cj = channel_joint(joint, solved.channel);
            const InformationTerms terms = information_terms(cj);

            CurveRecord& rec = records[idx];
            rec.beta = cfg.beta;
            rec.mi_theta_past = terms.mi_theta_past;
            rec.mi_theta_future = terms.mi_theta_future;
            rec.cmi_theta_past_given_future = terms.cmi_theta_past_given_future;
            rec.exact_objective = solved.diagnostics.objective;
            rec.variational_objective = variational_objective(
                cj, optimal_prior(cj), optimal_factorized_likelihood(cj), cfg.beta);
            rec.restarts_used = solved.diagnostics.restarts_used;
            rec.iterations = solved.diagnostics.iterations;
            rec.converged = solved.diagnostics.converged;
        } catch (...) {
            errors[idx] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return records;
}

} // namespace pib
