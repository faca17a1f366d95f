#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace spikedetect::rng {

// Philox4x64-10 counter-based generator (Salmon et al., matching the
// numpy.random.Philox key schedule). Stateless: any block of the stream is
// addressable directly, so Monte Carlo trials can run in any order on any
// number of threads and still reproduce bit-identically.
std::array<std::uint64_t, 4> philox4x64(const std::array<std::uint64_t, 4>& counter,
                                        const std::array<std::uint64_t, 2>& key);

enum class StreamRole : std::uint64_t { noise = 0, signal = 1, channel = 2 };

// Complex-Gaussian stream keyed by (seed, role) with a (trial, block) counter.
// Entry j of a trial's stream is a CN(0,1) variate; scale externally.
class ComplexGaussianStream {
public:
    ComplexGaussianStream(std::uint64_t seed, std::uint64_t trial, StreamRole role)
        : key_{seed, static_cast<std::uint64_t>(role)}, trial_(trial) {}

    // j-th standard circular complex normal of this (seed, trial, role) stream.
    std::complex<double> normal(std::uint64_t j) const;

    // j-th uniform in (0,1].
    double uniform(std::uint64_t j) const;

private:
    std::array<std::uint64_t, 2> key_;
    std::uint64_t trial_;
};

}  // namespace spikedetect::rng
