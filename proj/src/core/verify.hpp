#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tangle::verify {

struct Check {
    std::string name;
    double residual;
    double tolerance;  // after scaling
    bool pass;
};

struct Suite {
    std::vector<Check> checks;
    int failures() const;
};

// Full invariant suite. tolerance_scale multiplies every tolerance; values
// below 1 act as a negative control that must produce failures.
Suite run_suite(double tolerance_scale = 1.0, std::uint64_t seed = 20240101);

} // namespace tangle::verify
