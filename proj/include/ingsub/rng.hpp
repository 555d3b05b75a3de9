#pragma once

#include <array>
#include <cstdint>

namespace ingsub {

// Counter-free reproducible random stream: xoshiro256++ with per-stream
// state derived by hashing (seed, stream_id) through SplitMix64.
// Identical (seed, stream_id) pairs always yield identical sequences, so
// parallel Monte Carlo replications can each own a stream and produce
// results independent of scheduling.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64();

    // Uniform draw on the open interval (0, 1); never returns 0 or 1.
    double uniform01();

    // Exponential with mean 1.
    double exponential();

    // Standard normal via Marsaglia's polar method; the spare deviate is
    // cached in the stream so sequences stay reproducible.
    double normal();

    // Gamma(shape, scale = 1) via Marsaglia-Tsang squeeze for shape >= 1,
    // boosted with U^(1/shape) below 1. shape must be positive.
    double gamma_variate(double shape);

    // Beta(a, b) as X/(X+Y) from two gamma draws.
    double beta_variate(double a, double b);

    // Poisson(mean): sequential-search inversion up to mean = 30, then the
    // PTRS transformed-rejection scheme of Hormann (1993).
    std::uint64_t poisson(double mean);

private:
    std::array<std::uint64_t, 4> state_;
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace ingsub
