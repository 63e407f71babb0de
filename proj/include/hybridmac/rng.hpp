#ifndef HYBRIDMAC_RNG_HPP
#define HYBRIDMAC_RNG_HPP

#include <cstdint>
#include <string_view>

namespace hybridmac {

// Named random stream derived from a master seed. Each stochastic consumer
// (traffic generator, per-node backoff, channel error process) owns one
// stream, so adding a consumer never perturbs the draws of another.
//
// xoshiro256++ with splitmix64 seeding; hand-rolled so sequences are stable
// across standard library implementations.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::string_view stream_label);

    std::uint64_t next_u64();

    // Uniform integer in [0, bound], bound inclusive. bound = 0 returns 0.
    std::uint64_t uniform_inclusive(std::uint64_t bound);

    // Uniform double in [0, 1).
    double uniform01();

    // Exponential with the given mean (> 0).
    double exponential(double mean);

    // true with probability p (clamped to [0,1]).
    bool bernoulli(double p);

private:
    std::uint64_t state_[4];
};

}  // namespace hybridmac

#endif
