#include "pib/channel.hpp"

#include "pib/error.hpp"

#include <cmath>
#include <string>

namespace pib {

namespace {
constexpr double kRowTolerance = 1e-12;
}

Channel::Channel(std::size_t n_rows, std::size_t k_theta, std::vector<double> values)
    : n_rows_(n_rows), k_theta_(k_theta), values_(std::move(values))
{
    if (k_theta_ == 0 || n_rows_ == 0) {
        throw Error(ErrorCode::empty_alphabet, "channel needs at least one row and one output");
    }
    if (values_.size() != n_rows_ * k_theta_) {
        throw Error(ErrorCode::dimension_mismatch, "channel value count does not match shape");
    }
    for (std::size_t p = 0; p < n_rows_; ++p) {
        double total = 0.0;
        for (std::size_t t = 0; t < k_theta_; ++t) {
            const double v = values_[p * k_theta_ + t];
            if (!std::isfinite(v) || v < 0.0) {
                throw Error(ErrorCode::invalid_distribution,
                            "channel row " + std::to_string(p) + " has an invalid entry");
            }
            total += v;
        }
        if (std::abs(total - 1.0) > kRowTolerance) {
            throw Error(ErrorCode::invalid_distribution,
                        "channel row " + std::to_string(p) + " does not sum to 1");
        }
    }
}

Channel Channel::identity(std::size_t n_rows)
{
    std::vector<double> v(n_rows * n_rows, 0.0);
    for (std::size_t p = 0; p < n_rows; ++p) {
        v[p * n_rows + p] = 1.0;
    }
    return Channel(n_rows, n_rows, std::move(v));
}

Channel Channel::constant(std::size_t n_rows, std::size_t k_theta, std::size_t theta)
{
    if (theta >= k_theta) {
        throw Error(ErrorCode::invalid_argument, "constant channel output outside the alphabet");
    }
    std::vector<double> v(n_rows * k_theta, 0.0);
    for (std::size_t p = 0; p < n_rows; ++p) {
        v[p * k_theta + theta] = 1.0;
    }
    return Channel(n_rows, k_theta, std::move(v));
}

Channel Channel::uniform(std::size_t n_rows, std::size_t k_theta)
{
    return Channel(n_rows, k_theta,
                   std::vector<double>(n_rows * k_theta, 1.0 / static_cast<double>(k_theta)));
}

Channel Channel::deterministic(std::span<const std::size_t> assignment, std::size_t k_theta)
{
    std::vector<double> v(assignment.size() * k_theta, 0.0);
    for (std::size_t p = 0; p < assignment.size(); ++p) {
        if (assignment[p] >= k_theta) {
            throw Error(ErrorCode::invalid_argument, "assignment outside the theta alphabet");
        }
        v[p * k_theta + assignment[p]] = 1.0;
    }
    return Channel(assignment.size(), k_theta, std::move(v));
}

Channel Channel::relabeled(std::span<const std::size_t> perm) const
{
    if (perm.size() != k_theta_) {
        throw Error(ErrorCode::dimension_mismatch, "permutation size differs from k_theta");
    }
    std::vector<double> v(values_.size(), 0.0);
    for (std::size_t p = 0; p < n_rows_; ++p) {
        for (std::size_t t = 0; t < k_theta_; ++t) {
            v[p * k_theta_ + perm[t]] = values_[p * k_theta_ + t];
        }
    }
    return Channel(n_rows_, k_theta_, std::move(v));
}

} // namespace pib
