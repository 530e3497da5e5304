#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pib {

/// A representation p(theta | x_P): one probability row over the theta
/// alphabet per past dataset index.
class Channel {
public:
    Channel() = default;
    /// Throws invalid_distribution unless every row is a distribution
    /// (within 1e-12).
    Channel(std::size_t n_rows, std::size_t k_theta, std::vector<double> values);

    static Channel identity(std::size_t n_rows);
    static Channel constant(std::size_t n_rows, std::size_t k_theta, std::size_t theta = 0);
    static Channel uniform(std::size_t n_rows, std::size_t k_theta);
    /// Deterministic channel mapping row p to theta = assignment[p].
    static Channel deterministic(std::span<const std::size_t> assignment, std::size_t k_theta);

    std::size_t n_rows() const noexcept { return n_rows_; }
    std::size_t k_theta() const noexcept { return k_theta_; }
    std::span<const double> values() const noexcept { return values_; }
    std::span<const double> row(std::size_t p) const noexcept
    {
        return std::span<const double>(values_).subspan(p * k_theta_, k_theta_);
    }
    double operator()(std::size_t p, std::size_t theta) const noexcept
    {
        return values_[p * k_theta_ + theta];
    }

    /// Relabels theta so that new label perm[t] carries old label t.
    Channel relabeled(std::span<const std::size_t> perm) const;

private:
    std::size_t n_rows_ = 0;
    std::size_t k_theta_ = 0;
    std::vector<double> values_;
};

} // namespace pib
