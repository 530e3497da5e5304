#include "oracle/brute_force.hpp"
#include "pib/error.hpp"
#include "pib/infotheory.hpp"
#include "pib/random.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace {

constexpr double kLn2 = 0.693147180559945;
constexpr double kPredInfo = 0.221753693749851;
constexpr double kResidual = 0.471393486810094;

std::vector<std::vector<double>> rows_of(const pib::Channel& c)
{
    std::vector<std::vector<double>> rows;
    for (std::size_t p = 0; p < c.n_rows(); ++p)
        rows.emplace_back(c.row(p).begin(), c.row(p).end());
    return rows;
}

} // namespace

TEST(Entropy, Basics)
{
    const std::vector<double> fair = {0.5, 0.5};
    EXPECT_NEAR(pib::entropy(fair), kLn2, 1e-15);
    const std::vector<double> sure = {1.0, 0.0};
    EXPECT_EQ(pib::entropy(sure), 0.0);
    const std::vector<double> bad = {0.7, 0.7};
    EXPECT_THROW(pib::entropy(bad), pib::Error);
}

TEST(Entropy, PastMarginalTwoDraws)
{
    const auto j = pib::joint_model(pib::world_w1(), 2, 1);
    EXPECT_NEAR(pib::entropy(j.past_marginal()), 1.16454066737004, 1e-13);
}

TEST(MutualInformation, Basics)
{
    const pib::Table2 product(2, 3, {0.1, 0.2, 0.2, 0.1, 0.2, 0.2});
    EXPECT_EQ(pib::mutual_information(product), 0.0);
    const pib::Table2 copy(2, 2, {0.5, 0.0, 0.0, 0.5});
    EXPECT_NEAR(pib::mutual_information(copy), kLn2, 1e-15);
    const auto j = pib::joint_model(pib::world_w1(), 1, 1);
    EXPECT_NEAR(pib::mutual_information(j.past_future()), kPredInfo, 1e-14);
}

TEST(ConditionalMutualInformation, Basics)
{
    // X = Z: nothing left once Z is known
    pib::Table3 xz(2, 2, 2);
    xz(0, 0, 0) = 0.2;
    xz(0, 1, 0) = 0.3;
    xz(1, 0, 1) = 0.1;
    xz(1, 1, 1) = 0.4;
    EXPECT_EQ(pib::conditional_mutual_information(xz, pib::Axis::third), 0.0);

    pib::Table3 prod(2, 3, 2);
    const double a[] = {0.4, 0.6}, b[] = {0.2, 0.3, 0.5}, c[] = {0.9, 0.1};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 2; ++k) prod(i, j, k) = a[i] * b[j] * c[k];
    for (auto axis : {pib::Axis::first, pib::Axis::second, pib::Axis::third})
        EXPECT_NEAR(pib::conditional_mutual_information(prod, axis), 0.0, 1e-15);
}

TEST(ChannelJoint, IdentityOnW1)
{
    const auto j = pib::joint_model(pib::world_w1(), 1, 1);
    const auto cj = pib::channel_joint(j, pib::Channel::identity(2));
    const auto check = pib::markov_identity_residual(cj);
    EXPECT_LT(check.residual, 1e-10);
    EXPECT_NEAR(check.terms.mi_theta_past, kLn2, 1e-14);
    EXPECT_NEAR(check.terms.mi_theta_future, kPredInfo, 1e-14);
    EXPECT_NEAR(check.terms.cmi_theta_past_given_future, kResidual, 1e-14);
    EXPECT_LT(check.terms.cmi_theta_future_given_past, 1e-12);
    EXPECT_NEAR(pib::conditional_mutual_information(cj.past_future_theta(), pib::Axis::second),
                kResidual, 1e-14);
}

TEST(ChannelJoint, ConstantAndUniformChannels)
{
    const auto j = pib::joint_model(pib::world_w2(), 2, 1);
    const auto cj = pib::channel_joint(j, pib::Channel::constant(9, 3, 1));
    const auto m = cj.theta_marginal();
    EXPECT_EQ(m[0], 0.0);
    EXPECT_NEAR(m[1], 1.0, 1e-15);
    const auto c = pib::markov_identity_residual(cj);
    EXPECT_EQ(c.residual, 0.0);
    EXPECT_EQ(c.terms.mi_theta_past, 0.0);

    const auto u = pib::information_terms(pib::channel_joint(j, pib::Channel::uniform(9, 4)));
    EXPECT_NEAR(u.mi_theta_past, 0.0, 1e-15);
    EXPECT_NEAR(u.mi_theta_future, 0.0, 1e-15);
    EXPECT_NEAR(u.cmi_theta_past_given_future, 0.0, 1e-15);
}

TEST(ChannelJoint, ThetaDependsOnlyOnPast)
{
    pib::Rng rng(3);
    const auto j = pib::joint_model(pib::world_w2(), 1, 2);
    const auto ch = pib::random_channel(rng, 3, 3);
    const auto cj = pib::channel_joint(j, ch);
    double total = 0;
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t p = 0; p < 3; ++p)
            for (std::size_t f = 0; f < 9; ++f) {
                double cell = 0;
                for (std::size_t t = 0; t < 3; ++t) cell += cj(a, p, f, t);
                for (std::size_t t = 0; t < 3; ++t) {
                    EXPECT_NEAR(cj(a, p, f, t), cell * ch(p, t), 1e-16);
                    total += cj(a, p, f, t);
                }
            }
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_THROW(pib::channel_joint(j, pib::Channel::identity(4)), pib::Error);
}

TEST(Information, MatchesEntropyOracle)
{
    pib::Rng rng(101);
    for (auto [w, ow] : {std::pair{pib::world_w1(), oracle::w1()},
                         std::pair{pib::world_w2(), oracle::w2()}}) {
        for (std::size_t n = 1; n <= 2; ++n)
            for (std::size_t m = 1; m <= 2; ++m)
                for (int trial = 0; trial < 5; ++trial) {
                    const auto j = pib::joint_model(w, n, m);
                    const auto ch = pib::random_channel(rng, j.n_past_sets(), 3);
                    const auto t = pib::information_terms(pib::channel_joint(j, ch));
                    const auto o = oracle::terms(ow, n, m, rows_of(ch));
                    EXPECT_NEAR(t.mi_theta_past, static_cast<double>(o.i_tp), 1e-12);
                    EXPECT_NEAR(t.mi_theta_future, static_cast<double>(o.i_tf), 1e-12);
                    EXPECT_NEAR(t.cmi_theta_past_given_future,
                                static_cast<double>(o.cmi_tp_given_f), 1e-12);
                    EXPECT_NEAR(t.cmi_theta_future_given_past, 0.0, 1e-12);
                }
    }
}

TEST(Information, MarkovIdentityOnRandomChannels)
{
    pib::Rng rng(202);
    const auto j = pib::joint_model(pib::world_w1(), 1, 1);
    for (int i = 0; i < 100; ++i) {
        const auto cj = pib::channel_joint(j, pib::random_channel(rng, 2, 3));
        const auto c = pib::markov_identity_residual(cj);
        ASSERT_LT(c.residual, 1e-10);
        ASSERT_LT(c.terms.cmi_theta_future_given_past, 1e-12);
    }
}

TEST(Information, DataProcessingAndChainRule)
{
    pib::Rng rng(303);
    const auto j = pib::joint_model(pib::world_w2(), 2, 2);
    const double pred_info = pib::mutual_information(j.past_future());
    const double h_past = pib::entropy(j.past_marginal());
    for (int i = 0; i < 25; ++i) {
        const auto t =
            pib::information_terms(pib::channel_joint(j, pib::random_channel(rng, 9, 4)));
        EXPECT_LE(t.mi_theta_future, pred_info + 1e-12);
        EXPECT_LE(t.mi_theta_past, h_past + 1e-12);
        EXPECT_NEAR(t.mi_theta_past_future, t.mi_theta_future + t.cmi_theta_past_given_future,
                    1e-10);
        EXPECT_NEAR(t.mi_theta_past_future, t.mi_theta_past + t.cmi_theta_future_given_past,
                    1e-10);
    }
}

TEST(Information, RelabelingInvariance)
{
    pib::Rng rng(404);
    const auto j = pib::joint_model(pib::world_w2(), 1, 1);
    const std::vector<std::size_t> perm = {2, 0, 1};
    for (int i = 0; i < 20; ++i) {
        const auto ch = pib::random_channel(rng, 3, 3);
        const auto a = pib::information_terms(pib::channel_joint(j, ch));
        const auto b = pib::information_terms(pib::channel_joint(j, ch.relabeled(perm)));
        EXPECT_NEAR(a.mi_theta_past, b.mi_theta_past, 1e-15);
        EXPECT_NEAR(a.mi_theta_future, b.mi_theta_future, 1e-15);
        EXPECT_NEAR(a.cmi_theta_past_given_future, b.cmi_theta_past_given_future, 1e-15);
    }
}
