#include "pib/error.hpp"

namespace pib {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::negative_probability: return "NegativeProbability";
    case ErrorCode::not_normalized: return "NotNormalized";
    case ErrorCode::empty_alphabet: return "EmptyAlphabet";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::size_cap_exceeded: return "SizeCapExceeded";
    case ErrorCode::zero_probability_dataset: return "ZeroProbabilityDataset";
    case ErrorCode::invalid_distribution: return "InvalidDistribution";
    case ErrorCode::numerical_failure: return "NumericalFailure";
    case ErrorCode::support_violation: return "SupportViolation";
    case ErrorCode::beta_out_of_range: return "BetaOutOfRange";
    case ErrorCode::mle_undefined: return "MLEUndefined";
    case ErrorCode::divergence: return "Divergence";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::config: return "ConfigError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
{
}

} // namespace pib
