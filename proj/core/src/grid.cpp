#include "pickands/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pickands {

GridSpec GridSpec::make(double alpha, double delta, double T) {
    if (!(alpha > 0.0) || !(alpha <= 2.0)) {
        throw std::domain_error("GridSpec: alpha must lie in (0, 2], got " + std::to_string(alpha));
    }
    if (!(delta > 0.0)) {
        throw std::domain_error("GridSpec: delta must be positive, got " + std::to_string(delta));
    }
    if (!(T >= delta)) {
        throw std::domain_error("GridSpec: T must be >= delta");
    }
    // Nudge before floor so ratios that are integral in exact arithmetic
    // (T = 10, delta = 0.1) are not knocked down by the division rounding.
    const int n = static_cast<int>(std::floor(T / delta + 1e-9));
    return GridSpec{alpha, delta, T, n, n};
}

} // namespace pickands
