#include "ingsub/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ingsub {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

struct SplitMix64 {
    std::uint64_t x;
    std::uint64_t next() {
        std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    // Whiten the seed, then offset by a stream hash so distinct stream ids
    // land in unrelated regions of the SplitMix64 sequence. The odd
    // multiplier keeps stream_id -> offset injective.
    SplitMix64 sm{seed};
    const std::uint64_t h = sm.next();
    SplitMix64 init{h ^ (stream_id * 0xA3EC647659359ACDULL)};
    for (auto& w : state_) w = init.next();
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RngStream::uniform01() {
    // 52 random mantissa bits centered in their cell: range is
    // [2^-53, 1 - 2^-53], so both endpoints are excluded.
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1p-52;
}

double RngStream::exponential() {
    return -std::log(uniform01());
}

double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * m;
    has_spare_ = true;
    return u * m;
}

double RngStream::gamma_variate(double shape) {
    if (!(shape > 0.0))
        throw std::domain_error("gamma_variate: shape must be positive");
    if (shape < 1.0) {
        const double g = gamma_variate(shape + 1.0);
        return g * std::pow(uniform01(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform01();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double RngStream::beta_variate(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("beta_variate: shapes must be positive");
    for (;;) {
        const double x = gamma_variate(a);
        const double y = gamma_variate(b);
        if (x + y > 0.0) return x / (x + y);
        // Both draws underflowed to zero; try again.
    }
}

std::uint64_t RngStream::poisson(double mean) {
    if (!(mean >= 0.0) || !std::isfinite(mean))
        throw std::domain_error("poisson: mean must be finite and nonnegative");
    if (mean == 0.0) return 0;
    if (mean <= 30.0) {
        // Inversion by sequential search; e^-30 ~ 9e-14 keeps the initial
        // mass well inside double range.
        const double u = uniform01();
        double p = std::exp(-mean);
        double cum = p;
        std::uint64_t k = 0;
        while (u > cum) {
            ++k;
            p *= mean / static_cast<double>(k);
            cum += p;
            if (p == 0.0) break;  // exhausted double precision far in the tail
        }
        return k;
    }
    // PTRS: Hormann, "The transformed rejection method for generating
    // Poisson random variables" (1993).
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_mean = std::log(mean);
    for (;;) {
        double u = uniform01() - 0.5;
        const double v = uniform01();
        const double us = 0.5 - std::fabs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        const double k = kf;
        if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
            k * log_mean - mean - std::lgamma(k + 1.0))
            return static_cast<std::uint64_t>(kf);
    }
}

}  // namespace ingsub
