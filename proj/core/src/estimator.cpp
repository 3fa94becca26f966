#include "pickands/estimator.hpp"

#include <cmath>
#include <stdexcept>

namespace pickands {

EstimatorSample xi_kernel(std::span<const double> z, int count, int stride, double delta_eff,
                          double t0, double dt) {
    if (count < 1 || stride < 1 || !(delta_eff > 0.0) ||
        static_cast<size_t>(count - 1) * stride + 1 > z.size()) {
        throw std::invalid_argument("xi_kernel: view outside the sampled field");
    }

    int max_j = 0;
    double z_max = z[0];
    for (int j = 1; j < count; ++j) {
        const double v = z[static_cast<size_t>(j) * stride];
        if (v > z_max) {
            z_max = v;
            max_j = j;
        }
    }

    // exp(z - z_max) <= 1 everywhere and equals 1 at the argmax, so the sum
    // lies in [1, count] and the bounds 1/(delta n) <= xi <= 1/delta hold in
    // floating point too. Compensated summation for headroom on long grids.
    double sum = 0.0, comp = 0.0;
    for (int j = 0; j < count; ++j) {
        const double term = std::exp(z[static_cast<size_t>(j) * stride] - z_max);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }

    EstimatorSample s;
    s.z_max = z_max;
    s.argmax_t = t0 + max_j * dt;
    s.xi = 1.0 / (delta_eff * sum);
    s.log_denominator = z_max + std::log(delta_eff * sum);
    return s;
}

EstimatorSample xi_truncated(const FbmPath& path) {
    const int n = path.grid.point_count();
    return xi_kernel(path.z, n, 1, path.grid.delta, path.grid.time_at(0), path.grid.delta);
}

EstimatorSample xi_restricted(const FbmPath& path, int half_count, int stride) {
    if (half_count < 0 || stride < 1 || half_count * stride > path.grid.n_left) {
        throw std::invalid_argument("xi_restricted: window exceeds the sampled grid");
    }
    const int first = path.grid.zero_index() - half_count * stride;
    const double delta_eff = stride * path.grid.delta;
    const std::span<const double> view(path.z.data() + first, path.z.size() - first);
    return xi_kernel(view, 2 * half_count + 1, stride, delta_eff, -half_count * delta_eff,
                     delta_eff);
}

double definitional_estimator(std::span<const double> z, double delta, double S) {
    if (!(delta > 0.0) || !(S > 0.0)) throw std::invalid_argument("definitional_estimator: bad parameters");
    const int count = static_cast<int>(std::floor(S / delta + 1e-9)) + 1;
    if (static_cast<size_t>(count) > z.size()) {
        throw std::invalid_argument("definitional_estimator: horizon exceeds the sampled field");
    }
    double z_max = z[0];
    for (int j = 1; j < count; ++j) z_max = std::max(z_max, z[j]);
    return std::exp(z_max) / S;
}

double definitional_estimator(const OnesidedPath& path, double S) {
    return definitional_estimator(path.z, path.delta, S);
}

} // namespace pickands
