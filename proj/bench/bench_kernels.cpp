// Serial reference kernels vs their OpenMP counterparts on a W2-sized problem
// (K_phi = 3, K_x = 3) with N = 7 past and M = 5 future draws.

#include "pib/kernels.hpp"
#include "pib/random.hpp"
#include "pib/world.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

namespace ks = pib::kernels::serial;
namespace ko = pib::kernels::omp;

constexpr std::size_t kN = 7, kM = 5, kTheta = 4;

struct Fixture {
    std::size_t np, nf;
    std::vector<double> prior, past_lik, future_lik, joint, past, pred, channel, marg, fgt;

    Fixture()
    {
        const auto w = pib::world_w2();
        np = pib::dataset_count(3, kN);
        nf = pib::dataset_count(3, kM);
        prior.assign(w.phi_prior().begin(), w.phi_prior().end());
        past_lik.resize(3 * np);
        future_lik.resize(3 * nf);
        for (std::size_t a = 0; a < 3; ++a) {
            ks::dataset_likelihoods(w.obs_row(a), 3, kN,
                                    std::span<double>(past_lik).subspan(a * np, np));
            ks::dataset_likelihoods(w.obs_row(a), 3, kM,
                                    std::span<double>(future_lik).subspan(a * nf, nf));
        }
        joint.resize(3 * np * nf);
        ks::factorized_joint(prior, past_lik, future_lik, np, nf, joint);
        pib::Rng rng(1);
        past = pib::dirichlet_row(rng, np);
        pred = pib::dirichlet_rows(rng, np, nf);
        channel = pib::dirichlet_rows(rng, np, kTheta);
        marg.resize(kTheta);
        fgt.resize(kTheta * nf);
        ks::theta_statistics(past, pred, nf, channel, kTheta, marg, fgt);
    }
};

const Fixture& fx()
{
    static const Fixture f;
    return f;
}

template <bool Parallel>
void BM_FactorizedJoint(benchmark::State& state)
{
    const auto& f = fx();
    std::vector<double> out(f.joint.size());
    for (auto _ : state) {
        if constexpr (Parallel)
            ko::factorized_joint(f.prior, f.past_lik, f.future_lik, f.np, f.nf, out);
        else
            ks::factorized_joint(f.prior, f.past_lik, f.future_lik, f.np, f.nf, out);
        benchmark::DoNotOptimize(out.data());
    }
}

template <bool Parallel>
void BM_ChannelExpand(benchmark::State& state)
{
    const auto& f = fx();
    std::vector<double> out(f.joint.size() * kTheta);
    for (auto _ : state) {
        if constexpr (Parallel)
            ko::channel_expand(f.joint, 3, f.np, f.nf, f.channel, kTheta, out);
        else
            ks::channel_expand(f.joint, 3, f.np, f.nf, f.channel, kTheta, out);
        benchmark::DoNotOptimize(out.data());
    }
}

template <bool Parallel>
void BM_ThetaStatistics(benchmark::State& state)
{
    const auto& f = fx();
    std::vector<double> marg(kTheta), fgt(kTheta * f.nf);
    for (auto _ : state) {
        if constexpr (Parallel)
            ko::theta_statistics(f.past, f.pred, f.nf, f.channel, kTheta, marg, fgt);
        else
            ks::theta_statistics(f.past, f.pred, f.nf, f.channel, kTheta, marg, fgt);
        benchmark::DoNotOptimize(fgt.data());
    }
}

template <bool Parallel>
void BM_IbRowUpdate(benchmark::State& state)
{
    const auto& f = fx();
    std::vector<double> out(f.channel.size());
    for (auto _ : state) {
        if constexpr (Parallel)
            ko::ib_row_update(f.pred, f.nf, f.marg, f.fgt, 3.0, f.channel, kTheta, out);
        else
            ks::ib_row_update(f.pred, f.nf, f.marg, f.fgt, 3.0, f.channel, kTheta, out);
        benchmark::DoNotOptimize(out.data());
    }
}

template <bool Parallel>
void BM_MiRowTerms(benchmark::State& state)
{
    const auto& f = fx();
    std::vector<double> cols(f.nf, 0.0), terms(f.np);
    for (std::size_t p = 0; p < f.np; ++p)
        for (std::size_t c = 0; c < f.nf; ++c) cols[c] += f.past[p] * f.pred[p * f.nf + c];
    std::vector<double> joint(f.np * f.nf);
    for (std::size_t p = 0; p < f.np; ++p)
        for (std::size_t c = 0; c < f.nf; ++c) joint[p * f.nf + c] = f.past[p] * f.pred[p * f.nf + c];
    for (auto _ : state) {
        if constexpr (Parallel)
            ko::mi_row_terms(joint, f.np, f.nf, f.past, cols, 1.0, terms);
        else
            ks::mi_row_terms(joint, f.np, f.nf, f.past, cols, 1.0, terms);
        benchmark::DoNotOptimize(terms.data());
    }
}

} // namespace

BENCHMARK(BM_FactorizedJoint<false>)->Name("factorized_joint/serial")->UseRealTime();
BENCHMARK(BM_FactorizedJoint<true>)->Name("factorized_joint/omp")->UseRealTime();
BENCHMARK(BM_ChannelExpand<false>)->Name("channel_expand/serial")->UseRealTime();
BENCHMARK(BM_ChannelExpand<true>)->Name("channel_expand/omp")->UseRealTime();
BENCHMARK(BM_ThetaStatistics<false>)->Name("theta_statistics/serial")->UseRealTime();
BENCHMARK(BM_ThetaStatistics<true>)->Name("theta_statistics/omp")->UseRealTime();
BENCHMARK(BM_IbRowUpdate<false>)->Name("ib_row_update/serial")->UseRealTime();
BENCHMARK(BM_IbRowUpdate<true>)->Name("ib_row_update/omp")->UseRealTime();
BENCHMARK(BM_MiRowTerms<false>)->Name("mi_row_terms/serial")->UseRealTime();
BENCHMARK(BM_MiRowTerms<true>)->Name("mi_row_terms/omp")->UseRealTime();

BENCHMARK_MAIN();
