#include "pib/csv.hpp"

#include "pib/error.hpp"

#include <fmt/format.h>

#include <cmath>

namespace pib {

std::string format_float(double value)
{
    if (value == 0.0) {
        value = 0.0; // drop the sign of -0
    }
    return fmt::format("{:#.12g}", value);
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size())
{
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i > 0) {
            out_ += ',';
        }
        out_ += header[i];
    }
    out_ += '\n';
}

void CsvWriter::separator()
{
    if (in_row_ > 0) {
        out_ += ',';
    }
    ++in_row_;
}

CsvWriter& CsvWriter::cell(double value)
{
    separator();
    out_ += format_float(value);
    return *this;
}

CsvWriter& CsvWriter::cell(std::size_t value)
{
    separator();
    out_ += fmt::format("{}", value);
    return *this;
}

CsvWriter& CsvWriter::cell(std::string_view text)
{
    separator();
    out_ += text;
    return *this;
}

void CsvWriter::end_row()
{
    if (in_row_ != columns_) {
        throw Error(ErrorCode::invalid_argument,
                    fmt::format("CSV row has {} cells, header has {}", in_row_, columns_));
    }
    out_ += '\n';
    in_row_ = 0;
}

std::string emit_csv(std::span<const CurveRecord> records)
{
    CsvWriter csv(std::vector<std::string>(std::begin(kCurveColumns), std::end(kCurveColumns)));
    for (const CurveRecord& r : records) {
        csv.cell(r.beta)
            .cell(r.mi_theta_past)
            .cell(r.mi_theta_future)
            .cell(r.cmi_theta_past_given_future)
            .cell(r.exact_objective)
            .cell(r.variational_objective)
            .cell(r.restarts_used)
            .cell(r.iterations);
        csv.end_row();
    }
    return csv.str();
}

} // namespace pib
