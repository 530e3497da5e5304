#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pib {

enum class ErrorCode {
    negative_probability,
    not_normalized,
    empty_alphabet,
    dimension_mismatch,
    size_cap_exceeded,
    zero_probability_dataset,
    invalid_distribution,
    numerical_failure,
    support_violation,
    beta_out_of_range,
    mle_undefined,
    divergence,
    invalid_argument,
    config,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it to an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace pib
