#include "pib/world.hpp"

#include "pib/error.hpp"
#include "pib/kernels.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace pib {

namespace {

constexpr double kInputTolerance = 1e-9;

void normalize_checked(std::vector<double>& row, const std::string& what)
{
    double total = 0.0;
    for (double v : row) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::invalid_argument, what + " has a non-finite entry");
        }
        if (v < 0.0) {
            throw Error(ErrorCode::negative_probability, what + " has a negative entry");
        }
        total += v;
    }
    if (!(std::abs(total - 1.0) < kInputTolerance)) {
        throw Error(ErrorCode::not_normalized,
                    what + " sums to " + std::to_string(total) + ", expected 1");
    }
    for (double& v : row) {
        v /= total;
    }
}

} // namespace

World build_world(std::span<const double> phi_prior,
                  const std::vector<std::vector<double>>& obs_given_phi)
{
    if (phi_prior.empty()) {
        throw Error(ErrorCode::empty_alphabet, "phi alphabet is empty");
    }
    if (obs_given_phi.size() != phi_prior.size()) {
        throw Error(ErrorCode::dimension_mismatch,
                    "need one observation row per phi (" + std::to_string(phi_prior.size()) +
                        "), got " + std::to_string(obs_given_phi.size()));
    }
    const std::size_t k_x = obs_given_phi.front().size();
    if (k_x < 2) {
        throw Error(ErrorCode::empty_alphabet, "x alphabet needs at least two symbols");
    }

    std::vector<double> prior(phi_prior.begin(), phi_prior.end());
    normalize_checked(prior, "phi_prior");

    std::vector<double> obs;
    obs.reserve(prior.size() * k_x);
    for (std::size_t phi = 0; phi < obs_given_phi.size(); ++phi) {
        if (obs_given_phi[phi].size() != k_x) {
            throw Error(ErrorCode::dimension_mismatch,
                        "observation rows have different lengths");
        }
        std::vector<double> row = obs_given_phi[phi];
        normalize_checked(row, "obs_given_phi[" + std::to_string(phi) + "]");
        obs.insert(obs.end(), row.begin(), row.end());
    }
    return World(std::move(prior), std::move(obs), k_x);
}

World world_w1()
{
    const std::vector<double> prior{0.5, 0.5};
    return build_world(prior, {{0.9, 0.1}, {0.1, 0.9}});
}

World world_w2()
{
    const std::vector<double> prior{0.5, 0.3, 0.2};
    return build_world(prior, {{0.7, 0.2, 0.1}, {0.1, 0.7, 0.2}, {0.3, 0.3, 0.4}});
}

std::size_t dataset_count(std::size_t k_x, std::size_t length)
{
    std::size_t count = 1;
    for (std::size_t i = 0; i < length; ++i) {
        if (count > std::numeric_limits<std::size_t>::max() / k_x) {
            throw Error(ErrorCode::size_cap_exceeded, "dataset space overflows size_t");
        }
        count *= k_x;
    }
    return count;
}

std::size_t encode_dataset(const DatasetIndex& dataset, std::size_t k_x)
{
    std::size_t index = 0;
    for (std::size_t x : dataset.draws) {
        if (x >= k_x) {
            throw Error(ErrorCode::invalid_argument, "dataset symbol outside the alphabet");
        }
        index = index * k_x + x;
    }
    return index;
}

DatasetIndex decode_dataset(std::size_t index, std::size_t length, std::size_t k_x)
{
    DatasetIndex out;
    out.draws.assign(length, 0);
    for (std::size_t d = length; d-- > 0;) {
        out.draws[d] = index % k_x;
        index /= k_x;
    }
    return out;
}

JointModel::JointModel(World world, std::size_t n_past, std::size_t n_future)
    : world_(std::move(world)),
      n_past_(n_past),
      n_future_(n_future),
      n_past_sets_(dataset_count(world_.k_x(), n_past)),
      n_future_sets_(dataset_count(world_.k_x(), n_future))
{
}

JointModel joint_model(const World& world, std::size_t n_past, std::size_t n_future,
                       std::size_t max_cells)
{
    if (n_past < 1 || n_future < 1) {
        throw Error(ErrorCode::invalid_argument, "n_past and n_future must be at least 1");
    }
    const std::size_t k_x = world.k_x();
    const std::size_t past_sets = dataset_count(k_x, n_past);
    const std::size_t future_sets = dataset_count(k_x, n_future);
    const double cells = static_cast<double>(world.k_phi()) * static_cast<double>(past_sets) *
                         static_cast<double>(future_sets);
    if (cells > static_cast<double>(max_cells)) {
        throw Error(ErrorCode::size_cap_exceeded,
                    "joint table would have " + std::to_string(cells) + " cells, cap is " +
                        std::to_string(max_cells));
    }

    JointModel model(world, n_past, n_future);
    const std::size_t k_phi = world.k_phi();
    std::vector<double> past_lik(k_phi * past_sets);
    std::vector<double> future_lik(k_phi * future_sets);
    for (std::size_t phi = 0; phi < k_phi; ++phi) {
        kernels::omp::dataset_likelihoods(
            world.obs_row(phi), k_x, n_past,
            std::span<double>(past_lik).subspan(phi * past_sets, past_sets));
        kernels::omp::dataset_likelihoods(
            world.obs_row(phi), k_x, n_future,
            std::span<double>(future_lik).subspan(phi * future_sets, future_sets));
    }
    model.joint_.assign(k_phi * past_sets * future_sets, 0.0);
    kernels::omp::factorized_joint(world.phi_prior(), past_lik, future_lik, past_sets,
                                   future_sets, model.joint_);
    return model;
}

Table2 JointModel::past_future() const
{
    Table2 out(n_past_sets_, n_future_sets_);
    for (std::size_t phi = 0; phi < world_.k_phi(); ++phi) {
        for (std::size_t p = 0; p < n_past_sets_; ++p) {
            for (std::size_t f = 0; f < n_future_sets_; ++f) {
                out(p, f) += (*this)(phi, p, f);
            }
        }
    }
    return out;
}

Table2 JointModel::phi_past() const
{
    Table2 out(world_.k_phi(), n_past_sets_);
    for (std::size_t phi = 0; phi < world_.k_phi(); ++phi) {
        for (std::size_t p = 0; p < n_past_sets_; ++p) {
            double acc = 0.0;
            for (std::size_t f = 0; f < n_future_sets_; ++f) {
                acc += (*this)(phi, p, f);
            }
            out(phi, p) = acc;
        }
    }
    return out;
}

std::vector<double> JointModel::past_marginal() const
{
    return past_future().row_marginal();
}

std::vector<double> predictive(const JointModel& joint, const DatasetIndex& x_past)
{
    if (x_past.draws.size() != joint.n_past()) {
        throw Error(ErrorCode::dimension_mismatch, "past dataset has the wrong length");
    }
    const std::size_t p = encode_dataset(x_past, joint.world().k_x());
    std::vector<double> out(joint.n_future_sets(), 0.0);
    for (std::size_t phi = 0; phi < joint.world().k_phi(); ++phi) {
        for (std::size_t f = 0; f < joint.n_future_sets(); ++f) {
            out[f] += joint(phi, p, f);
        }
    }
    double mass = 0.0;
    for (double v : out) {
        mass += v;
    }
    if (!(mass > 0.0)) {
        throw Error(ErrorCode::zero_probability_dataset, "p(x_P) = 0 for the given dataset");
    }
    for (double& v : out) {
        v /= mass;
    }
    return out;
}

} // namespace pib
