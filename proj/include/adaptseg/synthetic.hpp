#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "adaptseg/series.hpp"

namespace adaptseg {

/// Standard normal deviates via the Box-Muller transform over the top 53
/// bits of std::mt19937_64 output. Both the engine sequence and the
/// transform are fully pinned down, so a seed reproduces the same series on
/// any platform with the same build (std::normal_distribution is not
/// portable across standard libraries, which is why it is not used here).
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1], u2 in [0, 1).
        const double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

enum class SeriesKind {
    WhiteNoise,  // y_i ~ N(mu, sigma^2), i.i.d.
    RandomWalk,  // y_0 = 0, y_i = y_{i-1} + N(mu, sigma^2)
};

struct GeneratorSpec {
    SeriesKind kind = SeriesKind::WhiteNoise;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double mu = 0.0;
    double sigma = 1.0;
};

/// Deterministic synthetic series on the unit grid x_i = i.
inline TimeSeries generate(const GeneratorSpec& spec) {
    if (spec.n < 1) {
        throw std::invalid_argument("generator needs n >= 1");
    }
    if (!(spec.sigma > 0.0)) {
        throw std::invalid_argument("generator needs sigma > 0");
    }
    GaussianSampler sampler(spec.seed);
    std::vector<double> values(spec.n);
    if (spec.kind == SeriesKind::WhiteNoise) {
        for (double& v : values) {
            v = spec.mu + spec.sigma * sampler.next();
        }
    } else {
        values[0] = 0.0;
        for (std::size_t i = 1; i < spec.n; ++i) {
            values[i] = values[i - 1] + spec.mu + spec.sigma * sampler.next();
        }
    }
    return TimeSeries::from_values(values);
}

}  // namespace adaptseg
