#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

// Counter-based Philox4x32-10 generator keyed by (seed, stream index).
// Salmon et al., "Parallel random numbers: as easy as 1, 2, 3", SC 2011.
// Each Monte Carlo trial owns stream = trial index, so serial and parallel
// runs produce bit-identical draws.

namespace leoacq {

class PhiloxRng {
public:
    PhiloxRng(std::uint64_t seed, std::uint64_t stream)
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)),
          ctr2_(static_cast<std::uint32_t>(stream)),
          ctr3_(static_cast<std::uint32_t>(stream >> 32)) {}

    std::uint64_t next_u64() {
        if (have_) {
            have_ = false;
            return spare_;
        }
        std::uint32_t c0 = ctr0_, c1 = ctr1_, c2 = ctr2_, c3 = ctr3_;
        std::uint32_t k0 = key0_, k1 = key1_;
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(kMulA) * c0;
            const std::uint64_t p1 = static_cast<std::uint64_t>(kMulB) * c2;
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            const std::uint32_t n0 = hi1 ^ c1 ^ k0;
            const std::uint32_t n1 = lo1;
            const std::uint32_t n2 = hi0 ^ c3 ^ k1;
            const std::uint32_t n3 = lo0;
            c0 = n0; c1 = n1; c2 = n2; c3 = n3;
            k0 += kWeylA;
            k1 += kWeylB;
        }
        if (++ctr0_ == 0) ++ctr1_;  // ctr2/ctr3 stay pinned to the stream id
        spare_ = (static_cast<std::uint64_t>(c2) << 32) | c3;
        have_ = true;
        return (static_cast<std::uint64_t>(c0) << 32) | c1;
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1]; safe under log().
    double uniform_pos() { return 1.0 - uniform(); }

    double rayleigh(double scale) {
        return scale * std::sqrt(-2.0 * std::log(uniform_pos()));
    }

    // Standard normal pair via Box-Muller.
    void normal_pair(double& a, double& b) {
        const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        const double t = 2.0 * std::numbers::pi * uniform();
        a = r * std::cos(t);
        b = r * std::sin(t);
    }

    double normal() {
        if (have_normal_) {
            have_normal_ = false;
            return spare_normal_;
        }
        double a, b;
        normal_pair(a, b);
        spare_normal_ = b;
        have_normal_ = true;
        return a;
    }

    // Gamma(shape, 1) via Marsaglia-Tsang squeeze; shape < 1 handled with the
    // usual alpha+1 boost.
    double gamma(double shape) {
        if (shape < 1.0)
            return gamma(shape + 1.0) * std::pow(uniform_pos(), 1.0 / shape);
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            const double u = uniform_pos();
            const double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

private:
    static constexpr std::uint32_t kMulA = 0xD2511F53;
    static constexpr std::uint32_t kMulB = 0xCD9E8D57;
    static constexpr std::uint32_t kWeylA = 0x9E3779B9;
    static constexpr std::uint32_t kWeylB = 0xBB67AE85;

    std::uint32_t key0_, key1_;
    std::uint32_t ctr0_ = 0, ctr1_ = 0, ctr2_, ctr3_;
    std::uint64_t spare_ = 0;
    bool have_ = false;
    double spare_normal_ = 0.0;
    bool have_normal_ = false;
};

}  // namespace leoacq
