#include "spikedetect/rng.hpp"

#include <cmath>

namespace spikedetect::rng {

namespace {

constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline void mul_hilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

// Uniform in (0,1]: 53 mantissa bits, never 0 so log() is safe.
inline double u64_to_unit(std::uint64_t v) {
    return (static_cast<double>(v >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace

std::array<std::uint64_t, 4> philox4x64(const std::array<std::uint64_t, 4>& counter,
                                        const std::array<std::uint64_t, 2>& key) {
    std::array<std::uint64_t, 4> x = counter;
    std::uint64_t k0 = key[0], k1 = key[1];
    for (int round = 0; round < 10; ++round) {
        std::uint64_t hi0, lo0, hi1, lo1;
        mul_hilo(kMul0, x[0], hi0, lo0);
        mul_hilo(kMul1, x[2], hi1, lo1);
        x = {hi1 ^ x[1] ^ k0, lo1, hi0 ^ x[3] ^ k1, lo0};
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    return x;
}

std::complex<double> ComplexGaussianStream::normal(std::uint64_t j) const {
    // Two uniforms per variate; one Philox block carries two variates.
    const auto block = philox4x64({j >> 1, trial_, 0, 0}, key_);
    const std::uint64_t w0 = block[(j & 1) ? 2 : 0];
    const std::uint64_t w1 = block[(j & 1) ? 3 : 1];
    const double u1 = u64_to_unit(w0);
    const double u2 = u64_to_unit(w1);
    // Box-Muller; CN(0,1) has real/imag variances 1/2.
    const double r = std::sqrt(-std::log(u1));
    const double phi = 2.0 * M_PI * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

double ComplexGaussianStream::uniform(std::uint64_t j) const {
    const auto block = philox4x64({j >> 2, trial_, 1, 0}, key_);
    return u64_to_unit(block[j & 3]);
}

}  // namespace spikedetect::rng
