#pragma once

#include "pib/channel.hpp"
#include "pib/infotheory.hpp"
#include "pib/world.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pib {

/// Variational marginal q(theta).
class PriorTable {
public:
    PriorTable() = default;
    explicit PriorTable(std::vector<double> q_theta);

    std::size_t k_theta() const noexcept { return q_.size(); }
    std::span<const double> values() const noexcept { return q_; }
    double operator[](std::size_t theta) const noexcept { return q_[theta]; }

private:
    std::vector<double> q_;
};

/// Per-draw variational likelihood q(x | theta), row-major k_theta x k_x.
class LikelihoodTable {
public:
    LikelihoodTable() = default;
    LikelihoodTable(std::size_t k_theta, std::size_t k_x, std::vector<double> values);

    std::size_t k_theta() const noexcept { return k_theta_; }
    std::size_t k_x() const noexcept { return k_x_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator()(std::size_t theta, std::size_t x) const noexcept
    {
        return values_[theta * k_x_ + x];
    }

private:
    std::size_t k_theta_ = 0;
    std::size_t k_x_ = 0;
    std::vector<double> values_;
};

/// q(theta | x_F), row-major n_future_sets x k_theta.
class ConditionalPrior {
public:
    ConditionalPrior() = default;
    ConditionalPrior(std::size_t n_future_sets, std::size_t k_theta, std::vector<double> values);

    std::size_t n_future_sets() const noexcept { return n_rows_; }
    std::size_t k_theta() const noexcept { return k_theta_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator()(std::size_t future, std::size_t theta) const noexcept
    {
        return values_[future * k_theta_ + theta];
    }

private:
    std::size_t n_rows_ = 0;
    std::size_t k_theta_ = 0;
    std::vector<double> values_;
};

struct SolverConfig {
    double beta = 0.0;
    std::size_t k_theta = 2;
    std::size_t restarts = 8;
    std::size_t max_iters = 10'000;
    double tol = 1e-10;
    std::uint64_t seed = 0;

    /// Throws beta_out_of_range unless beta is in [0, 1), invalid_argument for
    /// the remaining fields.
    void validate() const;
};

/// I(theta;X_P|X_F) - beta I(theta;X_P). Cross-checked internally against
/// (1 - beta) I(theta;X_P) - I(theta;X_F).
double exact_pib_objective(const ChannelJoint& cj, double beta);

/// Quantities the self-consistent iteration needs from a JointModel:
/// p(x_P) and p(x_F | x_P).
class BottleneckProblem {
public:
    explicit BottleneckProblem(const JointModel& joint);

    std::size_t n_past_sets() const noexcept { return n_past_sets_; }
    std::size_t n_future_sets() const noexcept { return n_future_sets_; }
    std::span<const double> past_marginal() const noexcept { return past_; }
    /// Row-major n_past_sets x n_future_sets; rows of impossible datasets are uniform.
    std::span<const double> predictive() const noexcept { return predictive_; }

    /// (1 - beta) I(theta;X_P) - I(theta;X_F), computed without building the
    /// four-way joint.
    double objective(const Channel& channel, double beta) const;

private:
    std::size_t n_past_sets_;
    std::size_t n_future_sets_;
    std::vector<double> past_;
    std::vector<double> predictive_;
};

/// One sweep of the fixed-point update at trade-off beta in [0, 1).
Channel ib_iteration(const BottleneckProblem& problem, const Channel& channel, double beta);

struct SolveDiagnostics {
    std::size_t iterations = 0;     // of the winning restart
    std::size_t restarts_used = 0;
    std::size_t best_restart = 0;
    double objective = 0.0;         // exact objective of the returned channel
    bool converged = false;         // of the winning restart
    std::size_t converged_restarts = 0;
    std::vector<double> restart_objectives;
};

struct SolveResult {
    Channel channel;
    SolveDiagnostics diagnostics;
};

/// Minimizes the bottleneck objective over channels with k_theta outputs by
/// alternating self-consistent updates from `restarts` Dirichlet(1) starts
/// (restart r seeded with seed + r). The best restart wins; ties go to the
/// lowest index. Non-convergence is reported, not thrown.
SolveResult ba_solve(const JointModel& joint, const SolverConfig& cfg);
SolveResult ba_solve(const JointModel& joint, const BottleneckProblem& problem,
                     const SolverConfig& cfg);

/// <log p(theta|x_P) / q(theta)>, the rate term of the variational objective.
double rate_bound(const ChannelJoint& cj, const PriorTable& prior);
/// sum_i <log q(x_i | theta)>.
double expected_log_likelihood(const ChannelJoint& cj, const LikelihoodTable& lik);

/// rate_bound - beta (expected_log_likelihood + H(X_P)). The entropy constant
/// is kept so the value upper-bounds exact_pib_objective directly.
double variational_objective(const ChannelJoint& cj, const PriorTable& prior,
                             const LikelihoodTable& lik, double beta);

/// Aggregate marginal p(theta) = sum_p p(x_P) p(theta|x_P).
PriorTable optimal_prior(const ChannelJoint& cj);

/// q*(x | theta) = (1/N) sum_i p(x_i = x | theta); uniform rows for unused theta.
LikelihoodTable optimal_factorized_likelihood(const ChannelJoint& cj);

/// q(theta | x_F) = sum_{x_P'} p(theta | x_P') p(x_P' | x_F).
ConditionalPrior exact_mixture_prior(const ChannelJoint& cj);

/// <log p(theta|x_P) / q(theta|x_F)>.
double conditional_prior_bound(const ChannelJoint& cj, const ConditionalPrior& cp);

struct CurveRecord {
    double beta = 0;
    double mi_theta_past = 0;
    double mi_theta_future = 0;
    double cmi_theta_past_given_future = 0;
    double exact_objective = 0;
    double variational_objective = 0;
    std::size_t restarts_used = 0;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Solves every beta independently (grid points may run in parallel; the
/// output depends only on the inputs and the seed).
std::vector<CurveRecord> information_curve(const JointModel& joint,
                                           std::span<const double> betas,
                                           const SolverConfig& cfg_template);

} // namespace pib
