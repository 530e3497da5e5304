#include "pib/kernels.hpp"
#include "pib/random.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include <omp.h>

namespace ks = pib::kernels::serial;
namespace ko = pib::kernels::omp;

namespace {

std::vector<double> random_rows(pib::Rng& rng, std::size_t n, std::size_t k)
{
    return pib::dirichlet_rows(rng, n, k);
}

// Large enough that the parallel branch is taken.
constexpr std::size_t kPast = 729;   // 3^6
constexpr std::size_t kFuture = 243; // 3^5
constexpr std::size_t kTheta = 4;

class KernelParity : public ::testing::TestWithParam<int> {
protected:
    void SetUp() override
    {
        saved_ = omp_get_max_threads();
        omp_set_num_threads(GetParam());
    }
    void TearDown() override { omp_set_num_threads(saved_); }
    int saved_ = 1;
};

} // namespace

TEST_P(KernelParity, DatasetLikelihoods)
{
    const std::vector<double> obs = {0.7, 0.2, 0.1};
    std::vector<double> a(kPast), b(kPast);
    ks::dataset_likelihoods(obs, 3, 6, a);
    ko::dataset_likelihoods(obs, 3, 6, b);
    EXPECT_EQ(a, b);
    // index 0 is (0,0,0,0,0,0)
    EXPECT_DOUBLE_EQ(a[0], std::pow(0.7, 6));
}

TEST_P(KernelParity, FactorizedJointAndExpansion)
{
    pib::Rng rng(11);
    const std::vector<double> prior = {0.5, 0.3, 0.2};
    const auto past = random_rows(rng, 3, kPast);
    const auto future = random_rows(rng, 3, kFuture);
    std::vector<double> ja(3 * kPast * kFuture), jb(ja.size());
    ks::factorized_joint(prior, past, future, kPast, kFuture, ja);
    ko::factorized_joint(prior, past, future, kPast, kFuture, jb);
    ASSERT_EQ(ja, jb);

    const auto channel = random_rows(rng, kPast, kTheta);
    std::vector<double> ea(ja.size() * kTheta), eb(ea.size());
    ks::channel_expand(ja, 3, kPast, kFuture, channel, kTheta, ea);
    ko::channel_expand(ja, 3, kPast, kFuture, channel, kTheta, eb);
    EXPECT_EQ(ea, eb);
}

TEST_P(KernelParity, ThetaStatisticsAndRowUpdate)
{
    pib::Rng rng(12);
    const auto past = pib::dirichlet_row(rng, kPast);
    const auto pred = random_rows(rng, kPast, kFuture);
    auto channel = random_rows(rng, kPast, kTheta);
    // leave one output unused to exercise the zero-row path
    for (std::size_t p = 0; p < kPast; ++p) {
        double& dead = channel[p * kTheta + 3];
        channel[p * kTheta] += dead;
        dead = 0.0;
    }
    std::vector<double> ma(kTheta), mb(kTheta), fa(kTheta * kFuture), fb(fa.size());
    ks::theta_statistics(past, pred, kFuture, channel, kTheta, ma, fa);
    ko::theta_statistics(past, pred, kFuture, channel, kTheta, mb, fb);
    ASSERT_EQ(ma, mb);
    ASSERT_EQ(fa, fb);
    EXPECT_EQ(ma[3], 0.0);

    std::vector<double> ca(channel.size()), cb(channel.size());
    ks::ib_row_update(pred, kFuture, ma, fa, 2.0, channel, kTheta, ca);
    ko::ib_row_update(pred, kFuture, mb, fb, 2.0, channel, kTheta, cb);
    EXPECT_EQ(ca, cb);
}

TEST_P(KernelParity, MiRowTerms)
{
    pib::Rng rng(13);
    auto joint = pib::dirichlet_row(rng, kPast * kFuture);
    std::vector<double> rm(kPast, 0.0), cm(kFuture, 0.0);
    for (std::size_t r = 0; r < kPast; ++r)
        for (std::size_t c = 0; c < kFuture; ++c) {
            rm[r] += joint[r * kFuture + c];
            cm[c] += joint[r * kFuture + c];
        }
    std::vector<double> ta(kPast), tb(kPast);
    ks::mi_row_terms(joint, kPast, kFuture, rm, cm, 1.0, ta);
    ko::mi_row_terms(joint, kPast, kFuture, rm, cm, 1.0, tb);
    EXPECT_EQ(ta, tb);
}

INSTANTIATE_TEST_SUITE_P(Threads, KernelParity, ::testing::Values(1, 2, 8));

TEST(Kernels, DatasetLikelihoodIsOrderInvariant)
{
    const std::vector<double> obs = {0.3, 0.3, 0.4};
    std::vector<double> out(27);
    ks::dataset_likelihoods(obs, 3, 3, out);
    // (0,1,2) = index 5, (2,1,0) = index 21, (1,2,0) = index 15
    EXPECT_EQ(out[5], out[21]);
    EXPECT_EQ(out[5], out[15]);
}
