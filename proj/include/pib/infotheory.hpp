#pragma once

#include "pib/channel.hpp"
#include "pib/tables.hpp"
#include "pib/world.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace pib {

// All quantities are in nats. 0 log 0 = 0. Results in [-1e-12, 0) are clamped
// to zero; anything more negative raises numerical_failure.

inline constexpr double kNegativeInfoFloor = 1e-12;

double entropy(std::span<const double> p);
double mutual_information(const Table2& joint);
/// I(A; B | given) where A, B are the two axes other than `given`.
double conditional_mutual_information(const Table3& joint, Axis given);

/// Exact p(phi, x_P, x_F, theta) induced by a JointModel and a Channel.
/// theta depends on the rest only through x_P.
class ChannelJoint {
public:
    std::size_t k_phi() const noexcept { return k_phi_; }
    std::size_t n_past_sets() const noexcept { return n_past_sets_; }
    std::size_t n_future_sets() const noexcept { return n_future_sets_; }
    std::size_t k_theta() const noexcept { return channel_.k_theta(); }
    std::size_t k_x() const noexcept { return k_x_; }
    std::size_t n_past() const noexcept { return n_past_; }
    std::size_t n_future() const noexcept { return n_future_; }

    const Channel& channel() const noexcept { return channel_; }
    /// Row-major k_phi x n_past_sets x n_future_sets x k_theta.
    std::span<const double> values() const noexcept { return joint4_; }
    double operator()(std::size_t phi, std::size_t past, std::size_t future,
                      std::size_t theta) const
    {
        return joint4_[((phi * n_past_sets_ + past) * n_future_sets_ + future) * k_theta() +
                       theta];
    }

    /// p(x_P, x_F, theta).
    Table3 past_future_theta() const;
    /// p(x_P, theta).
    Table2 past_theta() const;
    /// p(x_F, theta).
    Table2 future_theta() const;
    std::vector<double> past_marginal() const;
    std::vector<double> theta_marginal() const;

private:
    friend ChannelJoint channel_joint(const JointModel&, const Channel&);
    ChannelJoint() = default;

    std::size_t k_phi_ = 0;
    std::size_t n_past_sets_ = 0;
    std::size_t n_future_sets_ = 0;
    std::size_t k_x_ = 0;
    std::size_t n_past_ = 0;
    std::size_t n_future_ = 0;
    Channel channel_;
    std::vector<double> joint4_;
};

ChannelJoint channel_joint(const JointModel& joint, const Channel& channel);

struct InformationTerms {
    double mi_theta_past = 0;               // I(theta; X_P)
    double mi_theta_future = 0;             // I(theta; X_F)
    double cmi_theta_past_given_future = 0; // I(theta; X_P | X_F)
    double cmi_theta_future_given_past = 0; // I(theta; X_F | X_P)
    double mi_theta_past_future = 0;        // I(theta; X_P, X_F)
};

InformationTerms information_terms(const ChannelJoint& cj);

struct MarkovCheck {
    /// |I(theta;X_F) - I(theta;X_P) + I(theta;X_P|X_F)|
    double residual = 0;
    InformationTerms terms;
};

/// Evaluates the Markov-chain identity I(theta;X_F) = I(theta;X_P) - I(theta;X_P|X_F).
/// Returns the residual; callers assert on it.
MarkovCheck markov_identity_residual(const ChannelJoint& cj);

} // namespace pib
