#pragma once

#include <cstdint>

namespace pickands {

// Regular two-sided grid [-T, T] intersected with delta*Z. Zero is always a
// grid point; there are n_left = n_right = floor(T/delta) points on each
// side, 2*floor(T/delta)+1 in total.
struct GridSpec {
    double alpha;   // Hurst-scale parameter, in (0, 2]
    double delta;   // grid step, > 0
    double T;       // horizon, >= delta
    int n_left;     // floor(T/delta)
    int n_right;    // floor(T/delta)

    // Validates alpha in (0,2], delta > 0, T >= delta; throws std::domain_error.
    static GridSpec make(double alpha, double delta, double T);

    int point_count() const { return n_left + n_right + 1; }
    int zero_index() const { return n_left; }
    // Grid time of point i, i in [0, point_count()).
    double time_at(int i) const { return (i - n_left) * delta; }
};

} // namespace pickands
