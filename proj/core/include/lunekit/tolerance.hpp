#pragma once

#include <cstdint>

namespace lunekit {

// Shared numeric knobs. tol_angle guards exact predicates (normalization,
// duplicate merging, bisection stop); tol_sample is the accuracy expected of
// anything that goes through boundary sampling. All randomized sampling is
// driven by mt19937_64 streams derived from `seed`, so a config value fixes
// every result bit-for-bit.
struct ToleranceConfig {
    double tol_angle = 1e-9;
    double tol_sample = 1e-3;
    int boundary_samples = 2048;
    std::uint64_t seed = 0;

    void validate() const; // throws std::invalid_argument
};

} // namespace lunekit
