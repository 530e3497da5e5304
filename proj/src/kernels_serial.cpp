#include "pib/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace pib::kernels::serial {

void dataset_likelihoods(std::span<const double> obs_row, std::size_t k_x,
                         std::size_t length, std::span<double> out)
{
    std::vector<std::size_t> counts(k_x);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::fill(counts.begin(), counts.end(), 0);
        std::size_t rem = i;
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
        out[i] = value;
    }
}

void factorized_joint(std::span<const double> phi_prior, std::span<const double> past_lik,
                      std::span<const double> future_lik, std::size_t n_past_sets,
                      std::size_t n_future_sets, std::span<double> joint)
{
    for (std::size_t phi = 0; phi < phi_prior.size(); ++phi) {
        for (std::size_t p = 0; p < n_past_sets; ++p) {
            const double head = phi_prior[phi] * past_lik[phi * n_past_sets + p];
            for (std::size_t f = 0; f < n_future_sets; ++f) {
                joint[(phi * n_past_sets + p) * n_future_sets + f] =
                    head * future_lik[phi * n_future_sets + f];
            }
        }
    }
}

void channel_expand(std::span<const double> joint, std::size_t k_phi,
                    std::size_t n_past_sets, std::size_t n_future_sets,
                    std::span<const double> channel, std::size_t k_theta,
                    std::span<double> out)
{
    for (std::size_t phi = 0; phi < k_phi; ++phi) {
        for (std::size_t p = 0; p < n_past_sets; ++p) {
            for (std::size_t f = 0; f < n_future_sets; ++f) {
                const std::size_t cell = (phi * n_past_sets + p) * n_future_sets + f;
                for (std::size_t t = 0; t < k_theta; ++t) {
                    out[cell * k_theta + t] = joint[cell] * channel[p * k_theta + t];
                }
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
    for (std::size_t t = 0; t < k_theta; ++t) {
        for (std::size_t f = 0; f < n_future_sets; ++f) {
            double acc = 0.0;
            for (std::size_t p = 0; p < n_past_sets; ++p) {
                acc += past_marginal[p] * channel[p * k_theta + t] *
                       predictive[p * n_future_sets + f];
            }
            future_given_theta[t * n_future_sets + f] =
                theta_marginal[t] > 0.0 ? acc / theta_marginal[t] : 0.0;
        }
    }
}

void ib_row_update(std::span<const double> predictive, std::size_t n_future_sets,
                   std::span<const double> theta_marginal,
                   std::span<const double> future_given_theta, double gain,
                   std::span<const double> channel_in, std::size_t k_theta,
                   std::span<double> channel_out)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    const std::size_t n_past_sets = predictive.size() / n_future_sets;
    std::vector<double> kl(k_theta);
    for (std::size_t p = 0; p < n_past_sets; ++p) {
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

        double total = 0.0;
        if (min_kl < inf) {
            for (std::size_t t = 0; t < k_theta; ++t) {
                const double w =
                    kl[t] < inf ? theta_marginal[t] * std::exp(-gain * (kl[t] - min_kl)) : 0.0;
                channel_out[p * k_theta + t] = w;
                total += w;
            }
        }
        if (total > 0.0 && std::isfinite(total)) {
            for (std::size_t t = 0; t < k_theta; ++t) {
                channel_out[p * k_theta + t] /= total;
            }
        } else {
            for (std::size_t t = 0; t < k_theta; ++t) {
                channel_out[p * k_theta + t] = channel_in[p * k_theta + t];
            }
        }
    }
}

void mi_row_terms(std::span<const double> joint, std::size_t rows, std::size_t cols,
                  std::span<const double> row_marginal,
                  std::span<const double> col_marginal, double total,
                  std::span<double> row_terms)
{
    for (std::size_t r = 0; r < rows; ++r) {
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

} // namespace pib::kernels::serial
