#pragma once

#include <cstddef>
#include <span>

// Data-parallel inner loops of the library.
//
// `serial` is the plain reference implementation. `omp` parallelizes the
// outer loop of each kernel with OpenMP while keeping the per-cell arithmetic
// in the same order, so both produce bitwise-identical output for every thread
// count. Reductions across cells are never split between threads: kernels
// emit per-row partials and callers fold them in index order.
//
// All tables are dense and row-major.

namespace pib::kernels {

namespace serial {

/// out[i] = prod_x obs_row[x]^count_x(i) over every length-`length` dataset
/// index i (lexicographic, first draw most significant). The product is taken
/// in symbol order, so any permutation of a dataset gives the same bits.
void dataset_likelihoods(std::span<const double> obs_row, std::size_t k_x,
                         std::size_t length, std::span<double> out);

/// joint[phi, p, f] = prior[phi] * past_lik[phi, p] * future_lik[phi, f]
void factorized_joint(std::span<const double> phi_prior,
                      std::span<const double> past_lik,
                      std::span<const double> future_lik,
                      std::size_t n_past_sets, std::size_t n_future_sets,
                      std::span<double> joint);

/// out[phi, p, f, t] = joint[phi, p, f] * channel[p, t]
void channel_expand(std::span<const double> joint, std::size_t k_phi,
                    std::size_t n_past_sets, std::size_t n_future_sets,
                    std::span<const double> channel, std::size_t k_theta,
                    std::span<double> out);

/// theta_marginal[t] = sum_p past[p] c[p, t], and
/// future_given_theta[t, f] = sum_p past[p] c[p, t] pred[p, f] / theta_marginal[t].
/// Rows of unused t are left all-zero.
void theta_statistics(std::span<const double> past_marginal,
                      std::span<const double> predictive, std::size_t n_future_sets,
                      std::span<const double> channel, std::size_t k_theta,
                      std::span<double> theta_marginal,
                      std::span<double> future_given_theta);

/// One self-consistent bottleneck update of every channel row:
/// c'[p, t] ~ marg[t] exp(-gain * (KL(pred[p] || fgt[t]) - min_t KL)).
/// Rows whose unnormalized mass vanishes keep their previous value.
void ib_row_update(std::span<const double> predictive, std::size_t n_future_sets,
                   std::span<const double> theta_marginal,
                   std::span<const double> future_given_theta, double gain,
                   std::span<const double> channel_in, std::size_t k_theta,
                   std::span<double> channel_out);

/// row_terms[r] = sum_c p[r, c] log(p[r, c] * total / (row_marg[r] col_marg[c]))
void mi_row_terms(std::span<const double> joint, std::size_t rows, std::size_t cols,
                  std::span<const double> row_marginal,
                  std::span<const double> col_marginal, double total,
                  std::span<double> row_terms);

} // namespace serial

// Same contracts as above, outer loops split across OpenMP threads.
namespace omp {

void dataset_likelihoods(std::span<const double> obs_row, std::size_t k_x,
                         std::size_t length, std::span<double> out);
void factorized_joint(std::span<const double> phi_prior,
                      std::span<const double> past_lik,
                      std::span<const double> future_lik,
                      std::size_t n_past_sets, std::size_t n_future_sets,
                      std::span<double> joint);
void channel_expand(std::span<const double> joint, std::size_t k_phi,
                    std::size_t n_past_sets, std::size_t n_future_sets,
                    std::span<const double> channel, std::size_t k_theta,
                    std::span<double> out);
void theta_statistics(std::span<const double> past_marginal,
                      std::span<const double> predictive, std::size_t n_future_sets,
                      std::span<const double> channel, std::size_t k_theta,
                      std::span<double> theta_marginal,
                      std::span<double> future_given_theta);
void ib_row_update(std::span<const double> predictive, std::size_t n_future_sets,
                   std::span<const double> theta_marginal,
                   std::span<const double> future_given_theta, double gain,
                   std::span<const double> channel_in, std::size_t k_theta,
                   std::span<double> channel_out);
void mi_row_terms(std::span<const double> joint, std::size_t rows, std::size_t cols,
                  std::span<const double> row_marginal,
                  std::span<const double> col_marginal, double total,
                  std::span<double> row_terms);

} // namespace omp

} // namespace pib::kernels
