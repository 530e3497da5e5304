#pragma once

#include "pib/pib_solver.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pib {

/// 12 significant digits, trailing zeros kept, '.' separator regardless of locale.
std::string format_float(double value);

/// Minimal CSV builder: header row, LF line endings, no quoting (all cells
/// are numbers or identifiers).
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);

    CsvWriter& cell(double value);
    CsvWriter& cell(std::size_t value);
    CsvWriter& cell(std::string_view text);
    void end_row();

    const std::string& str() const noexcept { return out_; }

private:
    void separator();

    std::size_t columns_;
    std::size_t in_row_ = 0;
    std::string out_;
};

inline constexpr std::string_view kCurveColumns[] = {
    "beta",           "mi_theta_past",         "mi_theta_future", "cmi_theta_past_given_future",
    "exact_objective", "variational_objective", "restarts_used",   "iterations",
};

std::string emit_csv(std::span<const CurveRecord> records);

} // namespace pib
