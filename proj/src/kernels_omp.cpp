#include "pib/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

// Loops below this many cells stay on the calling thread; the arithmetic is
// identical either way.
namespace {
constexpr std::int64_t kParallelThreshold = 4096;
}

namespace pib::kernels::omp {

void dataset_likelihoods(std::span<const double> obs_row, std::size_t k_x,
                         std::size_t length, std::span<double> out)
{
    const auto n = static_cast<std::int64_t>(out.size());
#pragma omp parallel if (n * static_cast<std::int64_t>(length) > kParallelThreshold)
    {
        std::vector<std::size_t> counts(k_x);
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            std::fill(counts.begin(), counts.end(), 0);
            auto rem = static_cast<std::size_t>(i);
            for (std::size_t d = 0; d < length; ++d) {
                ++counts[rem % k_x];
                rem /= k_x;
            }
            double value = 1.0;
            for (std::size_t x = 0; x < k_x; ++x) {
                for (std::size_t c = 0; c < counts[x]; ++c) {
                    value *= obs_row[x];
                }
            }
            out[static_cast<std::size_t>(i)] = value;
        }
    }
}

void factorized_joint(std::span<const double> phi_prior, std::span<const double> past_lik,
                      std::span<const double> future_lik, std::size_t n_past_sets,
                      std::size_t n_future_sets, std::span<double> joint)
{
    const auto rows = static_cast<std::int64_t>(phi_prior.size() * n_past_sets);
    const auto cells = rows * static_cast<std::int64_t>(n_future_sets);
#pragma omp parallel for schedule(static) if (cells > kParallelThreshold)
    for (std::int64_t row = 0; row < rows; ++row) {
        const auto phi = static_cast<std::size_t>(row) / n_past_sets;
        const auto p = static_cast<std::size_t>(row) % n_past_sets;
        const double head = phi_prior[phi] * past_lik[phi * n_past_sets + p];
        double* dst = joint.data() + static_cast<std::size_t>(row) * n_future_sets;
        const double* fut = future_lik.data() + phi * n_future_sets;
        for (std::size_t f = 0; f < n_future_sets; ++f) {
            dst[f] = head * fut[f];
        }
    }
}

void channel_expand(std::span<const double> joint, std::size_t k_phi,
                    std::size_t n_past_sets, std::size_t n_future_sets,
                    std::span<const double> channel, std::size_t k_theta,
                    std::span<double> out)
{
    const auto rows = static_cast<std::int64_t>(k_phi * n_past_sets);
    const auto cells = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static) if (cells > kParallelThreshold)
    for (std::int64_t row = 0; row < rows; ++row) {
        const auto p = static_cast<std::size_t>(row) % n_past_sets;
        const double* c = channel.data() + p * k_theta;
        for (std::size_t f = 0; f < n_future_sets; ++f) {
            const std::size_t cell = static_cast<std::size_t>(row) * n_future_sets + f;
            for (std::size_t t = 0; t < k_theta; ++t) {
                out[cell * k_theta + t] = joint[cell] * c[t];
            }
        }
    }
}

void theta_statistics(std::span<const double> past_marginal,
                      std::span<const double> predictive, std::size_t n_future_sets,
                      std::span<const double> channel, std::size_t k_theta,
                      std::span<double> theta_marginal,
                      std::span<double> future_given_theta)
{
    const std::size_t n_past_sets = past_marginal.size();
    for (std::size_t t = 0; t < k_theta; ++t) {
        double acc = 0.0;
        for (std::size_t p = 0; p < n_past_sets; ++p) {
            acc += past_marginal[p] * channel[p * k_theta + t];
        }
        theta_marginal[t] = acc;
    }
    const auto outputs = static_cast<std::int64_t>(k_theta * n_future_sets);
    const auto work = outputs * static_cast<std::int64_t>(n_past_sets);
#pragma omp parallel for schedule(static) if (work > kParallelThreshold)
    for (std::int64_t idx = 0; idx < outputs; ++idx) {
        const auto t = static_cast<std::size_t>(idx) / n_future_sets;
        const auto f = static_cast<std::size_t>(idx) % n_future_sets;
        double acc = 0.0;
        for (std::size_t p = 0; p < n_past_sets; ++p) {
            acc += past_marginal[p] * channel[p * k_theta + t] *
                   predictive[p * n_future_sets + f];
        }
        future_given_theta[static_cast<std::size_t>(idx)] =
            theta_marginal[t] > 0.0 ? acc / theta_marginal[t] : 0.0;
    }
}

void ib_row_update(std::span<const double> predictive, std::size_t n_future_sets,
                   std::span<const double> theta_marginal,
                   std::span<const double> future_given_theta, double gain,
                   std::span<const double> channel_in, std::size_t k_theta,
                   std::span<double> channel_out)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    const auto n_past_sets = static_cast<std::int64_t>(predictive.size() / n_future_sets);
    const auto work =
        n_past_sets * static_cast<std::int64_t>(n_future_sets * k_theta);
#pragma omp parallel if (work > kParallelThreshold)
    {
        std::vector<double> kl(k_theta);
#pragma omp for schedule(static)
        for (std::int64_t row = 0; row < n_past_sets; ++row) {
            const auto p = static_cast<std::size_t>(row);
            const double* pred = predictive.data() + p * n_future_sets;
            double min_kl = inf;
            for (std::size_t t = 0; t < k_theta; ++t) {
                double d = 0.0;
                if (!(theta_marginal[t] > 0.0)) {
                    d = inf;
                } else {
                    const double* q = future_given_theta.data() + t * n_future_sets;
                    for (std::size_t f = 0; f < n_future_sets; ++f) {
                        if (pred[f] > 0.0) {
                            if (!(q[f] > 0.0)) {
                                d = inf;
                                break;
                            }
                            d += pred[f] * std::log(pred[f] / q[f]);
                        }
                    }
                }
                kl[t] = d;
                if (d < min_kl) {
                    min_kl = d;
                }
            }

            double* out = channel_out.data() + p * k_theta;
            double total = 0.0;
            if (min_kl < inf) {
                for (std::size_t t = 0; t < k_theta; ++t) {
                    const double w = kl[t] < inf
                                         ? theta_marginal[t] * std::exp(-gain * (kl[t] - min_kl))
                                         : 0.0;
                    out[t] = w;
                    total += w;
                }
            }
            if (total > 0.0 && std::isfinite(total)) {
                for (std::size_t t = 0; t < k_theta; ++t) {
                    out[t] /= total;
                }
            } else {
                for (std::size_t t = 0; t < k_theta; ++t) {
                    out[t] = channel_in[p * k_theta + t];
                }
            }
        }
    }
}

void mi_row_terms(std::span<const double> joint, std::size_t rows, std::size_t cols,
                  std::span<const double> row_marginal,
                  std::span<const double> col_marginal, double total,
                  std::span<double> row_terms)
{
    const auto n = static_cast<std::int64_t>(rows);
#pragma omp parallel for schedule(static) if (static_cast<std::int64_t>(rows * cols) > kParallelThreshold)
    for (std::int64_t row = 0; row < n; ++row) {
        const auto r = static_cast<std::size_t>(row);
        double acc = 0.0;
        for (std::size_t c = 0; c < cols; ++c) {
            const double p = joint[r * cols + c];
            if (p > 0.0) {
                acc += p * std::log(p * total / (row_marginal[r] * col_marginal[c]));
            }
        }
        row_terms[r] = acc;
    }
}

} // namespace pib::kernels::omp
