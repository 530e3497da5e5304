#include "pib/verify.hpp"

#include "pib/augmentation.hpp"
#include "pib/conjugate.hpp"
#include "pib/gibbs_vi.hpp"
#include "pib/infotheory.hpp"
#include "pib/pib_solver.hpp"
#include "pib/random.hpp"
#include "pib/world.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace pib {

namespace {

class Check {
public:
    explicit Check(std::string name) { result_.name = std::move(name); }

    /// Records one case whose `measured` value must not exceed `limit`.
    void at_most(double measured, double limit)
    {
        ++result_.cases;
        if (!(measured <= limit)) {
            ++result_.failures;
            const double miss = std::isfinite(measured) ? measured - limit : 1.0;
            result_.max_violation = std::max(result_.max_violation, miss);
        }
    }

    void holds(bool ok)
    {
        at_most(ok ? 0.0 : 1.0, 0.0);
    }

    CheckResult done() { return std::move(result_); }

private:
    CheckResult result_;
};

LikelihoodTable random_likelihood(Rng& rng, std::size_t k_theta, std::size_t k_x)
{
    return LikelihoodTable(k_theta, k_x, dirichlet_rows(rng, k_theta, k_x));
}

double variational_gap(const ChannelJoint& cj, const PriorTable& prior,
                       const LikelihoodTable& lik, double beta)
{
    return variational_objective(cj, prior, lik, beta) - exact_pib_objective(cj, beta);
}

std::vector<double> random_dataset(Rng& rng, std::size_t n)
{
    std::normal_distribution<double> dist(1.0, 2.0);
    std::vector<double> data(n);
    for (double& x : data) {
        x = dist(rng);
    }
    return data;
}

} // namespace

std::vector<CheckResult> run_verify_suite(std::uint64_t seed)
{
    std::vector<CheckResult> results;
    Rng rng(seed);
    const World worlds[] = {world_w1(), world_w2()};

    {
        Check markov("markov_identity");
        Check dpi("data_processing");
        Check chain("chain_rule");
        Check tight("conditional_prior_tightness");
        for (const World& w : worlds) {
            for (std::size_t n : {1, 2}) {
                for (std::size_t m : {1, 2}) {
                    const JointModel jm = joint_model(w, n, m);
                    const double predictive_info = mutual_information(jm.past_future());
                    const double h_past = entropy(jm.past_marginal());
                    for (int i = 0; i < 25; ++i) {
                        const ChannelJoint cj =
                            channel_joint(jm, random_channel(rng, jm.n_past_sets(), 3));
                        const MarkovCheck mc = markov_identity_residual(cj);
                        const InformationTerms& t = mc.terms;
                        markov.at_most(mc.residual, 1e-10);
                        markov.at_most(t.cmi_theta_future_given_past, 1e-12);
                        dpi.at_most(t.mi_theta_future - predictive_info, 1e-12);
                        dpi.at_most(t.mi_theta_past - h_past, 1e-12);
                        chain.at_most(std::abs(t.mi_theta_past_future - t.mi_theta_future -
                                               t.cmi_theta_past_given_future),
                                      1e-10);
                        chain.at_most(std::abs(t.mi_theta_past_future - t.mi_theta_past -
                                               t.cmi_theta_future_given_past),
                                      1e-10);
                        tight.at_most(std::abs(conditional_prior_bound(cj, exact_mixture_prior(cj)) -
                                               t.cmi_theta_past_given_future),
                                      1e-10);
                    }
                }
            }
        }
        results.push_back(markov.done());
        results.push_back(dpi.done());
        results.push_back(chain.done());
        results.push_back(tight.done());
    }

    {
        Check bound("variational_bound");
        Check optimal("optimal_variational_tables");
        const JointModel jm = joint_model(worlds[0], 2, 1);
        std::uniform_real_distribution<double> beta_dist(0.0, 3.0);
        for (int i = 0; i < 100; ++i) {
            const ChannelJoint cj = channel_joint(jm, random_channel(rng, jm.n_past_sets(), 3));
            const double beta = beta_dist(rng);
            const PriorTable prior(dirichlet_row(rng, 3));
            bound.at_most(-variational_gap(cj, prior, random_likelihood(rng, 3, 2), beta), 1e-10);
            const double best = variational_gap(cj, optimal_prior(cj),
                                                optimal_factorized_likelihood(cj), beta);
            for (int j = 0; j < 5; ++j) {
                const double other = variational_gap(cj, PriorTable(dirichlet_row(rng, 3)),
                                                     random_likelihood(rng, 3, 2), beta);
                optimal.at_most(best - other, 0.0);
            }
        }
        results.push_back(bound.done());
        results.push_back(optimal.done());
    }

    {
        Check endpoints("solver_endpoints");
        const JointModel jm = joint_model(worlds[0], 1, 1);
        const double ceiling = mutual_information(jm.past_future());
        SolverConfig cfg;
        cfg.seed = seed;
        cfg.beta = 0.0;
        const SolveResult low = ba_solve(jm, cfg);
        endpoints.at_most(information_terms(channel_joint(jm, low.channel)).mi_theta_past, 1e-9);
        cfg.beta = 0.99;
        const SolveResult high = ba_solve(jm, cfg);
        endpoints.at_most(
            0.99 * ceiling - information_terms(channel_joint(jm, high.channel)).mi_theta_future,
            0.0);
        results.push_back(endpoints.done());
    }

    {
        Check limits("conjugate_limits");
        const std::vector<double> schedule{1e-9, 1.0, 1e6};
        const LimitReport reports[] = {
            limit_diagnostics(BetaBernoulliModel{1.0, 1.0, 3, 4}, schedule),
            limit_diagnostics(GaussianMeanModel{0.0, 1.0, 1.0, {2.0}}, schedule),
            limit_diagnostics(DirichletCategoricalModel{{1.0, 1.0, 1.0}, {2.0, 0.0, 1.0}},
                              schedule),
        };
        for (const LimitReport& r : reports) {
            limits.at_most(r.small_beta_prior_distance, 1e-6);
            limits.at_most(r.bayes_distance, 0.0);
            limits.at_most(r.large_beta_mle_distance, 1e-5);
            limits.at_most(r.large_beta_variance, 1e-6);
        }
        results.push_back(limits.done());
    }

    {
        Check replicate("tempered_replication");
        for (std::size_t reps = 1; reps <= 4; ++reps) {
            const BetaBernoulliModel m{2.0, 3.0, 3, 5};
            const BetaBernoulliModel copies{2.0, 3.0, 3 * reps, 5 * reps};
            const auto tempered = beta_bernoulli_power(m, static_cast<double>(reps));
            const auto bayes = beta_bernoulli_bayes(copies);
            replicate.holds(tempered.a == bayes.a && tempered.b == bayes.b);

            const DirichletCategoricalModel d{{1.0, 2.0, 0.5}, {1.0, 4.0, 2.0}};
            DirichletCategoricalModel dcopies = d;
            for (double& c : dcopies.counts) {
                c *= static_cast<double>(reps);
            }
            replicate.holds(dirichlet_categorical_power(d, static_cast<double>(reps)).alphas ==
                            dirichlet_categorical_bayes(dcopies).alphas);
        }
        results.push_back(replicate.done());
    }

    {
        Check oracle("gibbs_oracle");
        Check grad("gibbs_gradient");
        std::uniform_int_distribution<std::size_t> size_dist(1, 8);
        for (int d = 0; d < 5; ++d) {
            const GaussianMeanModel model{0.5, 2.0, 1.5, random_dataset(rng, size_dist(rng))};
            for (double beta : {0.0, 0.5, 1.0, 2.0, 10.0}) {
                const GibbsObjectiveSpec spec{model, beta};
                const GibbsResult fit =
                    gibbs_optimize(spec, {0.0, 0.0}, stable_step_size(spec));
                const GaussianPosterior exact = gaussian_power(model, beta);
                oracle.at_most(std::abs(fit.params.mean - exact.mean), 1e-6);
                oracle.at_most(std::abs(fit.params.variance() - exact.variance), 1e-6);
                oracle.at_most(std::abs(gibbs_objective(fit.params, spec) + exact.log_partition),
                               1e-8);
            }
        }
        std::uniform_real_distribution<double> coord(-2.0, 2.0);
        for (int i = 0; i < 100; ++i) {
            const GaussianMeanModel model{coord(rng), 1.0 + coord(rng) * coord(rng) / 4.0 + 0.5,
                                          1.0, random_dataset(rng, size_dist(rng))};
            const GibbsObjectiveSpec spec{model, std::abs(coord(rng)) * 2.0};
            const GaussianVariationalParams p{coord(rng), coord(rng) / 2.0};
            const GibbsGradient a = gibbs_gradient(p, spec);
            const GibbsGradient n = finite_difference_gradient(p, spec, 1e-6);
            for (auto [x, y] : {std::pair{a.d_mean, n.d_mean}, std::pair{a.d_log_std, n.d_log_std}}) {
                const double err = std::abs(x - y);
                grad.at_most(std::abs(x) > 1e-3 ? err / std::abs(x) : err, std::abs(x) > 1e-3 ? 1e-5 : 1e-8);
            }
        }
        results.push_back(oracle.done());
        results.push_back(grad.done());
    }

    {
        Check jensen("augmentation_bound");
        std::uniform_real_distribution<double> coord(-3.0, 3.0);
        const GaussianMeanModel model{0.0, 1.0, 1.0, {1.0, 3.0}};
        for (double tau : {0.0, 0.1, 0.5, 2.0}) {
            for (int i = 0; i < 10; ++i) {
                const AugmentationSpec spec{tau, 1000, seed + static_cast<std::uint64_t>(i)};
                jensen.at_most(augmentation_gap_analytic(coord(rng), coord(rng), 1.0, spec), 1e-12);
            }
            const GibbsObjectiveSpec gspec{model, 1.5};
            const GaussianVariationalParams p{coord(rng), coord(rng) / 3.0};
            const double clean = gibbs_objective(p, gspec);
            const double augmented = augmented_gibbs_objective(p, gspec, tau);
            jensen.at_most(std::abs(augmented - clean - 1.5 * 2.0 * tau * tau / 2.0), 1e-10);
            jensen.at_most(-(clean + gaussian_power(model, 1.5).log_partition), 1e-10);
        }
        results.push_back(jensen.done());
    }

    return results;
}

} // namespace pib
