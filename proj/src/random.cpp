#include "pib/random.hpp"

namespace pib {

std::vector<double> dirichlet_row(Rng& rng, std::size_t k, double alpha)
{
    std::gamma_distribution<double> gamma(alpha, 1.0);
    std::vector<double> row(k);
    double total = 0.0;
    while (!(total > 0.0)) {
        total = 0.0;
        for (double& v : row) {
            v = gamma(rng);
            total += v;
        }
    }
    for (double& v : row) {
        v /= total;
    }
    return row;
}

std::vector<double> dirichlet_rows(Rng& rng, std::size_t n_rows, std::size_t k)
{
    std::vector<double> out;
    out.reserve(n_rows * k);
    for (std::size_t r = 0; r < n_rows; ++r) {
        const auto row = dirichlet_row(rng, k);
        out.insert(out.end(), row.begin(), row.end());
    }
    return out;
}

Channel random_channel(Rng& rng, std::size_t n_rows, std::size_t k_theta)
{
    return Channel(n_rows, k_theta, dirichlet_rows(rng, n_rows, k_theta));
}

} // namespace pib
