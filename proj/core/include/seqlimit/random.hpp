#pragma once

#include <cstdint>
#include <string_view>

namespace seqlimit {

/// Counter-based generator: the i-th draw of stream (seed, id) is a pure
/// function of (seed, id, i), so substreams are reproducible bit-for-bit
/// regardless of scheduling. Each output is the SplitMix64 finalizer applied
/// to key + (i+1)*golden, with the key derived from (seed, id).
///
/// All distributions here are implemented locally; std:: distributions are
/// implementation-defined and would break cross-platform reproducibility.
class SeededStream {
public:
    static constexpr std::string_view algorithm = "splitmix64-ctr-v1";

    explicit SeededStream(std::uint64_t seed = 0, std::uint64_t stream_id = 0) noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }
    std::uint64_t position() const noexcept { return counter_; }

    /// Independent child stream; the same (parent, child_id) always yields
    /// the same child.
    SeededStream substream(std::uint64_t child_id) const noexcept;

    std::uint64_t next_u64() noexcept;
    /// Uniform on [0,1) with 53 random bits.
    double uniform01() noexcept;
    /// Uniform integer in [0, bound); bound must be positive.
    std::uint64_t uniform_below(std::uint64_t bound) noexcept;
    bool bernoulli(double p) noexcept { return uniform01() < p; }

    // UniformRandomBitGenerator surface, for algorithms that only need bits.
    using result_type = std::uint64_t;
    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }
    result_type operator()() noexcept { return next_u64(); }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64_mix(std::uint64_t x) noexcept;

}  // namespace seqlimit
