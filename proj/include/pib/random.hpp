#pragma once

#include "pib/channel.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace pib {

using Rng = std::mt19937_64;

/// One draw from a symmetric Dirichlet(alpha) of dimension k.
std::vector<double> dirichlet_row(Rng& rng, std::size_t k, double alpha = 1.0);
/// n_rows independent Dirichlet(1) rows, flattened row-major.
std::vector<double> dirichlet_rows(Rng& rng, std::size_t n_rows, std::size_t k);
Channel random_channel(Rng& rng, std::size_t n_rows, std::size_t k_theta);

} // namespace pib
