#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace pib {

/// Dense row-major probability table over two finite alphabets.
struct Table2 {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    Table2() = default;
    Table2(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c, 0.0) {}
    Table2(std::size_t r, std::size_t c, std::vector<double> v);

    double& operator()(std::size_t r, std::size_t c) { return values[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return values[r * cols + c]; }

    std::vector<double> row_marginal() const;
    std::vector<double> col_marginal() const;
    Table2 transposed() const;
};

enum class Axis { first = 0, second = 1, third = 2 };

/// Dense row-major table over three finite alphabets (last axis fastest).
struct Table3 {
    std::array<std::size_t, 3> dims{};
    std::vector<double> values;

    Table3() = default;
    Table3(std::size_t a, std::size_t b, std::size_t c)
        : dims{a, b, c}, values(a * b * c, 0.0) {}
    Table3(std::array<std::size_t, 3> d, std::vector<double> v);

    double& operator()(std::size_t i, std::size_t j, std::size_t k)
    {
        return values[(i * dims[1] + j) * dims[2] + k];
    }
    double operator()(std::size_t i, std::size_t j, std::size_t k) const
    {
        return values[(i * dims[1] + j) * dims[2] + k];
    }

    /// Sums out one axis; the remaining two keep their relative order.
    Table2 marginalize(Axis drop) const;
};

double sum(std::span<const double> values) noexcept;

} // namespace pib
