#pragma once

#include "pib/tables.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pib {

inline constexpr std::size_t kDefaultMaxJointCells = 10'000'000;

/// A finite data-generating process: a prior over causes phi and, for each
/// cause, a distribution over a single observation x.
class World {
public:
    std::size_t k_phi() const noexcept { return phi_prior_.size(); }
    std::size_t k_x() const noexcept { return k_x_; }

    std::span<const double> phi_prior() const noexcept { return phi_prior_; }
    /// Row-major k_phi x k_x.
    std::span<const double> obs_given_phi() const noexcept { return obs_; }
    std::span<const double> obs_row(std::size_t phi) const noexcept
    {
        return std::span<const double>(obs_).subspan(phi * k_x_, k_x_);
    }

private:
    friend World build_world(std::span<const double>,
                             const std::vector<std::vector<double>>&);
    World(std::vector<double> prior, std::vector<double> obs, std::size_t k_x)
        : phi_prior_(std::move(prior)), obs_(std::move(obs)), k_x_(k_x) {}

    std::vector<double> phi_prior_;
    std::vector<double> obs_;
    std::size_t k_x_ = 0;
};

/// Validates and builds a World. Tables whose sum is off by less than 1e-9
/// are renormalized; anything worse is rejected.
World build_world(std::span<const double> phi_prior,
                  const std::vector<std::vector<double>>& obs_given_phi);

/// The canonical two-cause binary world: p(phi) = [0.5, 0.5],
/// p(x|phi) = [[0.9, 0.1], [0.1, 0.9]].
World world_w1();
/// Three causes over a three-symbol alphabet:
/// p(phi) = [0.5, 0.3, 0.2],
/// p(x|phi) = [[0.7, 0.2, 0.1], [0.1, 0.7, 0.2], [0.3, 0.3, 0.4]].
World world_w2();

/// An ordered dataset of alphabet symbols.
struct DatasetIndex {
    std::vector<std::size_t> draws;
};

/// k_x^length, or an error if it does not fit in size_t.
std::size_t dataset_count(std::size_t k_x, std::size_t length);
/// Lexicographic rank of a dataset, first draw most significant.
std::size_t encode_dataset(const DatasetIndex& dataset, std::size_t k_x);
DatasetIndex decode_dataset(std::size_t index, std::size_t length, std::size_t k_x);

/// Exact p(phi, x_P, x_F) for N past and M future i.i.d. draws.
class JointModel {
public:
    const World& world() const noexcept { return world_; }
    std::size_t n_past() const noexcept { return n_past_; }
    std::size_t n_future() const noexcept { return n_future_; }
    std::size_t n_past_sets() const noexcept { return n_past_sets_; }
    std::size_t n_future_sets() const noexcept { return n_future_sets_; }

    /// Row-major k_phi x n_past_sets x n_future_sets.
    std::span<const double> joint() const noexcept { return joint_; }
    double operator()(std::size_t phi, std::size_t past, std::size_t future) const
    {
        return joint_[(phi * n_past_sets_ + past) * n_future_sets_ + future];
    }

    /// p(x_P, x_F), marginalized over phi.
    Table2 past_future() const;
    /// p(phi, x_P).
    Table2 phi_past() const;
    std::vector<double> past_marginal() const;

private:
    friend JointModel joint_model(const World&, std::size_t, std::size_t, std::size_t);
    JointModel(World world, std::size_t n_past, std::size_t n_future);

    World world_;
    std::size_t n_past_;
    std::size_t n_future_;
    std::size_t n_past_sets_;
    std::size_t n_future_sets_;
    std::vector<double> joint_;
};

JointModel joint_model(const World& world, std::size_t n_past, std::size_t n_future,
                       std::size_t max_cells = kDefaultMaxJointCells);

/// p(x_F | x_P) for one past dataset, over all future dataset indices.
std::vector<double> predictive(const JointModel& joint, const DatasetIndex& x_past);

} // namespace pib
