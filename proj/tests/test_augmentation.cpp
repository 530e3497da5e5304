#include "pib/augmentation.hpp"
#include "pib/error.hpp"

#include <gtest/gtest.h>

#include <cmath>

TEST(AugmentationGap, Analytic)
{
    const pib::AugmentationSpec s{0.5, 100'000, 1};
    EXPECT_EQ(pib::augmentation_gap_analytic(0.0, 0.0, 1.0, s), -0.125);
    EXPECT_EQ(pib::augmentation_gap_analytic(3.0, -1.0, 1.0, s), -0.125);
    EXPECT_EQ(pib::augmentation_gap_analytic(0.0, 0.0, 2.0, s), -0.0625);
    EXPECT_EQ(pib::augmentation_gap_analytic(1.0, 2.0, 1.0, {0.0, 10, 1}), 0.0);
}

TEST(AugmentationGap, MonteCarlo)
{
    const auto e = pib::augmentation_gap_mc(0.3, -0.2, 1.0, {0.5, 100'000, 17});
    EXPECT_GT(e.standard_error, 0.0);
    EXPECT_LE(std::abs(e.value + 0.125), 4 * e.standard_error);

    const auto big = pib::augmentation_gap_mc(1.0, 0.0, 1.0, {2.0, 100'000, 18});
    EXPECT_LE(std::abs(big.value + 2.0), 4 * big.standard_error);

    const auto none = pib::augmentation_gap_mc(1.0, 0.0, 1.0, {0.0, 100, 19});
    EXPECT_EQ(none.value, 0.0);
    EXPECT_EQ(none.standard_error, 0.0);

    // seeded
    const auto again = pib::augmentation_gap_mc(0.3, -0.2, 1.0, {0.5, 100'000, 17});
    EXPECT_EQ(again.value, e.value);
    EXPECT_THROW(pib::augmentation_gap_mc(0.0, 0.0, 1.0, {0.5, 1, 1}), pib::Error);
}

TEST(AugmentationGap, NeverPositive)
{
    for (double x : {-3.0, 0.0, 2.5})
        for (double theta : {-1.0, 0.7})
            for (double tau : {0.0, 0.1, 1.0, 3.0}) {
                EXPECT_LE(pib::augmentation_gap_analytic(x, theta, 0.8, {tau, 10, 0}), 1e-12);
            }
}

TEST(AugmentedObjective, BoundChain)
{
    const pib::GibbsObjectiveSpec s{{0.0, 1.0, 0.5, {1.0, 2.0, -1.0}}, 1.5};
    const double neg_log_z = -pib::gaussian_power(s.model, s.beta).log_partition;
    for (double tau : {0.0, 0.5, 1.2}) {
        for (const pib::GaussianVariationalParams p :
             {pib::GaussianVariationalParams{0.0, 0.0}, {0.4, -0.8}, {-1.0, 0.3}}) {
            const double clean = pib::gibbs_objective(p, s);
            const double aug = pib::augmented_gibbs_objective(p, s, tau);
            EXPECT_GE(aug, clean - 1e-10);
            EXPECT_GE(clean, neg_log_z - 1e-10);
            EXPECT_NEAR(aug - clean, s.beta * 3 * tau * tau / (2 * 0.5), 1e-10);
        }
    }
}
