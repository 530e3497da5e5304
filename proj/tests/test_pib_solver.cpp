#include "oracle/brute_force.hpp"
#include "pib/error.hpp"
#include "pib/pib_solver.hpp"
#include "pib/random.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace {

constexpr double kLn2 = 0.693147180559945;
constexpr double kPredInfo = 0.221753693749851;
constexpr double kResidual = 0.471393486810094;

const pib::JointModel& w1()
{
    static const auto j = pib::joint_model(pib::world_w1(), 1, 1);
    return j;
}

pib::PriorTable random_prior(pib::Rng& rng, std::size_t k)
{
    return pib::PriorTable(pib::dirichlet_row(rng, k));
}

pib::LikelihoodTable random_lik(pib::Rng& rng, std::size_t k_theta, std::size_t k_x)
{
    return pib::LikelihoodTable(k_theta, k_x, pib::dirichlet_rows(rng, k_theta, k_x));
}

// All k^n deterministic channels.
std::vector<pib::Channel> deterministic_channels(std::size_t n, std::size_t k)
{
    std::vector<pib::Channel> out;
    for (std::size_t code = 0; code < oracle::ipow(k, n); ++code) {
        const auto assign = oracle::digits(code, n, k);
        out.push_back(pib::Channel::deterministic(assign, k));
    }
    return out;
}

pib::SolverConfig config(double beta)
{
    pib::SolverConfig cfg;
    cfg.beta = beta;
    cfg.k_theta = 2;
    cfg.restarts = 8;
    cfg.seed = 7;
    return cfg;
}

} // namespace

TEST(ExactObjective, IdentityOnW1)
{
    const auto cj = pib::channel_joint(w1(), pib::Channel::identity(2));
    EXPECT_NEAR(pib::exact_pib_objective(cj, 0.5), kResidual - 0.5 * kLn2, 1e-12);
    EXPECT_NEAR(pib::exact_pib_objective(cj, 0.5), 0.124819896530122, 1e-12);
    EXPECT_NEAR(pib::exact_pib_objective(cj, 0.0), kResidual, 1e-12);
}

TEST(ExactObjective, ConstantChannelIsZero)
{
    const auto j = pib::joint_model(pib::world_w2(), 2, 1);
    const auto cj = pib::channel_joint(j, pib::Channel::constant(9, 2));
    for (double beta : {0.0, 0.3, 0.9, 2.0}) EXPECT_EQ(pib::exact_pib_objective(cj, beta), 0.0);
}

TEST(ExactObjective, FastRouteAgrees)
{
    pib::Rng rng(5);
    const auto j = pib::joint_model(pib::world_w2(), 2, 1);
    const pib::BottleneckProblem problem(j);
    for (int i = 0; i < 20; ++i) {
        const auto ch = pib::random_channel(rng, 9, 3);
        const double beta = std::uniform_real_distribution<double>(0, 1)(rng);
        EXPECT_NEAR(problem.objective(ch, beta),
                    pib::exact_pib_objective(pib::channel_joint(j, ch), beta), 1e-12);
    }
}

TEST(SolverConfig, RejectsBetaOutsideUnitInterval)
{
    for (double beta : {1.0, 1.5, -0.1, std::numeric_limits<double>::quiet_NaN()}) {
        try {
            pib::ba_solve(w1(), config(beta));
            ADD_FAILURE() << beta;
        } catch (const pib::Error& e) {
            EXPECT_EQ(e.code(), pib::ErrorCode::beta_out_of_range);
        }
    }
    auto cfg = config(0.5);
    cfg.k_theta = 0;
    EXPECT_THROW(pib::ba_solve(w1(), cfg), pib::Error);
}

TEST(BaSolve, BetaZeroForgetsThePast)
{
    const auto r = pib::ba_solve(w1(), config(0.0));
    const auto t = pib::information_terms(pib::channel_joint(w1(), r.channel));
    EXPECT_LT(t.mi_theta_past, 1e-9);
    EXPECT_LT(r.diagnostics.objective, 1e-9);
    EXPECT_EQ(r.diagnostics.restarts_used, 8u);
}

TEST(BaSolve, BetaNearOneKeepsPredictiveInformation)
{
    const auto r = pib::ba_solve(w1(), config(0.99));
    const auto t = pib::information_terms(pib::channel_joint(w1(), r.channel));
    EXPECT_GE(t.mi_theta_future, 0.99 * kPredInfo);
    EXPECT_TRUE(r.diagnostics.converged);
}

TEST(BaSolve, BeatsEveryDeterministicChannel)
{
    for (double beta : {0.3, 0.5, 0.7, 0.9}) {
        const auto r = pib::ba_solve(w1(), config(beta));
        double best = std::numeric_limits<double>::infinity();
        for (const auto& ch : deterministic_channels(2, 2))
            best = std::min(best, pib::exact_pib_objective(pib::channel_joint(w1(), ch), beta));
        EXPECT_LE(r.diagnostics.objective, best) << "beta " << beta;
    }
}

TEST(BaSolve, LargerWorldBeatsDeterministicChannels)
{
    const auto j = pib::joint_model(pib::world_w2(), 1, 2);
    auto cfg = config(0.8);
    cfg.k_theta = 3;
    const auto r = pib::ba_solve(j, cfg);
    for (const auto& ch : deterministic_channels(3, 3))
        EXPECT_LE(r.diagnostics.objective,
                  pib::exact_pib_objective(pib::channel_joint(j, ch), 0.8) + 1e-12);
}

TEST(BaSolve, FixedPointIsSelfConsistent)
{
    const auto j = pib::joint_model(pib::world_w2(), 2, 1);
    const pib::BottleneckProblem problem(j);
    for (double beta : {0.4, 0.8}) {
        auto cfg = config(beta);
        cfg.k_theta = 3;
        const auto r = pib::ba_solve(j, problem, cfg);
        ASSERT_TRUE(r.diagnostics.converged);
        const auto next = pib::ib_iteration(problem, r.channel, beta);
        EXPECT_LT(std::abs(problem.objective(next, beta) - problem.objective(r.channel, beta)),
                  10 * cfg.tol);
    }
}

TEST(BaSolve, SeedDeterminesResult)
{
    const auto a = pib::ba_solve(w1(), config(0.8));
    const auto b = pib::ba_solve(w1(), config(0.8));
    EXPECT_EQ(std::vector<double>(a.channel.values().begin(), a.channel.values().end()),
              std::vector<double>(b.channel.values().begin(), b.channel.values().end()));
    EXPECT_EQ(a.diagnostics.restart_objectives, b.diagnostics.restart_objectives);
}

TEST(VariationalObjective, UpperBoundsExactObjective)
{
    pib::Rng rng(2024);
    const auto j = pib::joint_model(pib::world_w1(), 2, 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const auto cj = pib::channel_joint(j, pib::random_channel(rng, 4, 3));
        const double beta = unit(rng);
        const double v =
            pib::variational_objective(cj, random_prior(rng, 3), random_lik(rng, 3, 2), beta);
        ASSERT_GE(v, pib::exact_pib_objective(cj, beta) - 1e-10);
    }
}

TEST(VariationalObjective, IdentityChannelGapIsFutureInformation)
{
    // With the exact marginal and exact per-draw likelihood the rate term is
    // I(theta;X_P) and the likelihood term cancels H(X_P), so the bound sits
    // I(theta;X_F) above I(theta;X_P|X_F) - I(theta;X_P).
    const auto cj = pib::channel_joint(w1(), pib::Channel::identity(2));
    const pib::PriorTable prior({0.5, 0.5});
    const pib::LikelihoodTable lik(2, 2, {1.0, 0.0, 0.0, 1.0});
    const double v = pib::variational_objective(cj, prior, lik, 1.0);
    EXPECT_NEAR(v, 0.0, 1e-12);
    EXPECT_NEAR(v - pib::exact_pib_objective(cj, 1.0), kPredInfo, 1e-12);
}

TEST(VariationalObjective, ConstantChannelPointPrior)
{
    const auto cj = pib::channel_joint(w1(), pib::Channel::constant(2, 2, 1));
    const pib::PriorTable prior({0.0, 1.0});
    pib::Rng rng(1);
    EXPECT_EQ(pib::variational_objective(cj, prior, random_lik(rng, 2, 2), 0.0), 0.0);
}

TEST(VariationalObjective, SupportViolation)
{
    const auto cj = pib::channel_joint(w1(), pib::Channel::identity(2));
    try {
        pib::rate_bound(cj, pib::PriorTable({1.0, 0.0}));
        ADD_FAILURE();
    } catch (const pib::Error& e) {
        EXPECT_EQ(e.code(), pib::ErrorCode::support_violation);
    }
    EXPECT_THROW(
        pib::expected_log_likelihood(cj, pib::LikelihoodTable(2, 2, {0.0, 1.0, 0.0, 1.0})),
        pib::Error);
}

TEST(VariationalObjective, RelabelingInvariance)
{
    pib::Rng rng(77);
    const auto j = pib::joint_model(pib::world_w2(), 1, 1);
    const std::vector<std::size_t> perm = {1, 2, 0};
    for (int i = 0; i < 20; ++i) {
        const auto ch = pib::random_channel(rng, 3, 3);
        const auto prior = random_prior(rng, 3);
        const auto lik = random_lik(rng, 3, 3);
        std::vector<double> q2(3), l2(9);
        for (std::size_t t = 0; t < 3; ++t) {
            q2[perm[t]] = prior[t];
            for (std::size_t x = 0; x < 3; ++x) l2[perm[t] * 3 + x] = lik(t, x);
        }
        const auto a = pib::channel_joint(j, ch);
        const auto b = pib::channel_joint(j, ch.relabeled(perm));
        EXPECT_NEAR(pib::exact_pib_objective(a, 0.6), pib::exact_pib_objective(b, 0.6), 1e-15);
        EXPECT_NEAR(pib::variational_objective(a, prior, lik, 0.6),
                    pib::variational_objective(b, pib::PriorTable(q2),
                                               pib::LikelihoodTable(3, 3, l2), 0.6),
                    1e-14);
    }
}

TEST(OptimalPrior, Basics)
{
    const auto c = pib::optimal_prior(pib::channel_joint(w1(), pib::Channel::constant(2, 3, 2)));
    EXPECT_EQ(c[2], 1.0);
    const auto id = pib::optimal_prior(pib::channel_joint(w1(), pib::Channel::identity(2)));
    EXPECT_NEAR(id[0], 0.5, 1e-15);
    EXPECT_NEAR(id[1], 0.5, 1e-15);
}

TEST(OptimalPrior, RateEqualsInformationAndBeatsOthers)
{
    pib::Rng rng(88);
    const auto j = pib::joint_model(pib::world_w2(), 2, 1);
    for (int i = 0; i < 50; ++i) {
        const auto cj = pib::channel_joint(j, pib::random_channel(rng, 9, 3));
        const auto q = pib::optimal_prior(cj);
        const double best = pib::rate_bound(cj, q);
        EXPECT_NEAR(best, pib::information_terms(cj).mi_theta_past, 1e-12);
        EXPECT_LE(best, pib::rate_bound(cj, pib::PriorTable({1.0 / 3, 1.0 / 3, 1.0 / 3})));
        // the excess is exactly KL(p(theta) || q(theta))
        const auto other = random_prior(rng, 3);
        double kl = 0;
        for (std::size_t t = 0; t < 3; ++t) kl += q[t] * std::log(q[t] / other[t]);
        EXPECT_NEAR(pib::rate_bound(cj, other) - best, kl, 1e-12);
    }
}

TEST(OptimalLikelihood, Basics)
{
    const auto id =
        pib::optimal_factorized_likelihood(pib::channel_joint(w1(), pib::Channel::identity(2)));
    EXPECT_NEAR(id(0, 0), 1.0, 1e-15);
    EXPECT_NEAR(id(1, 1), 1.0, 1e-15);
    const auto c = pib::optimal_factorized_likelihood(
        pib::channel_joint(w1(), pib::Channel::constant(2, 2, 0)));
    EXPECT_NEAR(c(0, 0), 0.5, 1e-15);
    EXPECT_NEAR(c(0, 1), 0.5, 1e-15);
    // unused output gets a uniform row
    EXPECT_EQ(c(1, 0), 0.5);
}

TEST(OptimalLikelihood, NeverBeaten)
{
    pib::Rng rng(99);
    const auto j = pib::joint_model(pib::world_w2(), 2, 1);
    for (int i = 0; i < 100; ++i) {
        const auto cj = pib::channel_joint(j, pib::random_channel(rng, 9, 2));
        const double best =
            pib::expected_log_likelihood(cj, pib::optimal_factorized_likelihood(cj));
        for (int k = 0; k < 10; ++k)
            ASSERT_GE(best, pib::expected_log_likelihood(cj, random_lik(rng, 2, 3)) - 1e-12);
    }
}

TEST(ConditionalPrior, ExactMixtureIsTight)
{
    const auto cj = pib::channel_joint(w1(), pib::Channel::identity(2));
    EXPECT_NEAR(pib::conditional_prior_bound(cj, pib::exact_mixture_prior(cj)), kResidual,
                1e-10);
    const auto q = pib::optimal_prior(cj);
    const pib::ConditionalPrior flat(2, 2, {q[0], q[1], q[0], q[1]});
    EXPECT_NEAR(pib::conditional_prior_bound(cj, flat), kLn2, 1e-12);

    // constant channel: zero only if q(theta|x_F) also sits on that output,
    // otherwise <-log q(theta0|x_F)>
    const auto cc = pib::channel_joint(w1(), pib::Channel::constant(2, 2));
    EXPECT_EQ(pib::conditional_prior_bound(cc, pib::ConditionalPrior(2, 2, {1.0, 0.0, 1.0, 0.0})),
              0.0);
    EXPECT_NEAR(pib::conditional_prior_bound(cc, pib::ConditionalPrior(2, 2, {0.3, 0.7, 0.6, 0.4})),
                -0.5 * (std::log(0.3) + std::log(0.6)), 1e-15);
}

TEST(ConditionalPrior, BoundAndTightnessOnRandomChannels)
{
    pib::Rng rng(123);
    const auto j = pib::joint_model(pib::world_w2(), 2, 2);
    for (int i = 0; i < 20; ++i) {
        const auto cj = pib::channel_joint(j, pib::random_channel(rng, 9, 3));
        const double cmi = pib::information_terms(cj).cmi_theta_past_given_future;
        EXPECT_NEAR(pib::conditional_prior_bound(cj, pib::exact_mixture_prior(cj)), cmi, 1e-10);
        const pib::ConditionalPrior other(9, 3, pib::dirichlet_rows(rng, 9, 3));
        EXPECT_GE(pib::conditional_prior_bound(cj, other), cmi - 1e-10);
    }
}

TEST(InformationCurve, Endpoints)
{
    const double zero[] = {0.0};
    const auto r0 = pib::information_curve(w1(), zero, config(0.0));
    ASSERT_EQ(r0.size(), 1u);
    EXPECT_LT(r0[0].mi_theta_past, 1e-9);
    EXPECT_LT(r0[0].mi_theta_future, 1e-9);
    EXPECT_LT(r0[0].cmi_theta_past_given_future, 1e-9);

    const double high[] = {0.99};
    const auto r1 = pib::information_curve(w1(), high, config(0.0));
    EXPECT_GE(r1[0].mi_theta_future, 0.99 * kPredInfo);
    EXPECT_GE(r1[0].variational_objective, r1[0].exact_objective - 1e-10);
}

TEST(InformationCurve, MonotoneInBeta)
{
    std::vector<double> betas;
    for (int i = 1; i <= 9; ++i) betas.push_back(0.1 * i);
    const auto recs = pib::information_curve(w1(), betas, config(0.0));
    ASSERT_EQ(recs.size(), 9u);
    for (std::size_t i = 1; i < recs.size(); ++i) {
        EXPECT_EQ(recs[i].beta, betas[i]);
        EXPECT_GE(recs[i].mi_theta_future, recs[i - 1].mi_theta_future - 1e-6);
        EXPECT_EQ(recs[i].restarts_used, 8u);
    }
}

TEST(InformationCurve, RejectsBadGrid)
{
    const double unsorted[] = {0.5, 0.3};
    EXPECT_THROW(pib::information_curve(w1(), unsorted, config(0.0)), pib::Error);
    const double out_of_range[] = {0.5, 1.0};
    EXPECT_THROW(pib::information_curve(w1(), out_of_range, config(0.0)), pib::Error);
}
