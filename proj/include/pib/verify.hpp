#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace pib {

struct CheckResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    /// Largest amount by which a case missed its tolerance (0 when all pass).
    double max_violation = 0.0;

    bool passed() const noexcept { return failures == 0; }
};

/// Runs the library's invariant checks on the built-in worlds w1 and w2 with
/// seeded random channels and models.
std::vector<CheckResult> run_verify_suite(std::uint64_t seed);

} // namespace pib
