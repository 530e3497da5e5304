#include "pib/tables.hpp"

#include "pib/error.hpp"

#include <utility>

namespace pib {

Table2::Table2(std::size_t r, std::size_t c, std::vector<double> v)
    : rows(r), cols(c), values(std::move(v))
{
    if (values.size() != rows * cols) {
        throw Error(ErrorCode::dimension_mismatch, "Table2 value count does not match shape");
    }
}

std::vector<double> Table2::row_marginal() const
{
    std::vector<double> out(rows, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < cols; ++c) {
            acc += values[r * cols + c];
        }
        out[r] = acc;
    }
    return out;
}

std::vector<double> Table2::col_marginal() const
{
    std::vector<double> out(cols, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            out[c] += values[r * cols + c];
        }
    }
    return out;
}

Table2 Table2::transposed() const
{
    Table2 out(cols, rows);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            out(c, r) = values[r * cols + c];
        }
    }
    return out;
}

Table3::Table3(std::array<std::size_t, 3> d, std::vector<double> v)
    : dims(d), values(std::move(v))
{
    if (values.size() != dims[0] * dims[1] * dims[2]) {
        throw Error(ErrorCode::dimension_mismatch, "Table3 value count does not match shape");
    }
}

Table2 Table3::marginalize(Axis drop) const
{
    const auto [a, b, c] = dims;
    switch (drop) {
    case Axis::first: {
        Table2 out(b, c);
        for (std::size_t i = 0; i < a; ++i)
            for (std::size_t j = 0; j < b; ++j)
                for (std::size_t k = 0; k < c; ++k)
                    out(j, k) += (*this)(i, j, k);
        return out;
    }
    case Axis::second: {
        Table2 out(a, c);
        for (std::size_t i = 0; i < a; ++i)
            for (std::size_t j = 0; j < b; ++j)
                for (std::size_t k = 0; k < c; ++k)
                    out(i, k) += (*this)(i, j, k);
        return out;
    }
    case Axis::third:
    default: {
        Table2 out(a, b);
        for (std::size_t i = 0; i < a; ++i)
            for (std::size_t j = 0; j < b; ++j)
                for (std::size_t k = 0; k < c; ++k)
                    out(i, j) += (*this)(i, j, k);
        return out;
    }
    }
}

double sum(std::span<const double> values) noexcept
{
    double acc = 0.0;
    for (double v : values) {
        acc += v;
    }
    return acc;
}

} // namespace pib
