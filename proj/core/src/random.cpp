#include "seqlimit/random.hpp"

namespace seqlimit {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ULL;
}  // namespace

std::uint64_t splitmix64_mix(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

SeededStream::SeededStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : seed_(seed),
      stream_id_(stream_id),
      key_(splitmix64_mix(seed ^ splitmix64_mix(stream_id * kStreamSalt + kGolden))) {}

SeededStream SeededStream::substream(std::uint64_t child_id) const noexcept {
    return SeededStream(seed_, splitmix64_mix(stream_id_ + kGolden) ^ (child_id * kStreamSalt + 1));
}

std::uint64_t SeededStream::next_u64() noexcept {
    ++counter_;
    return splitmix64_mix(key_ + counter_ * kGolden);
}

double SeededStream::uniform01() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t SeededStream::uniform_below(std::uint64_t bound) noexcept {
    // Lemire's multiply-shift with rejection; unbiased.
    std::uint64_t x = next_u64();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            x = next_u64();
            m = static_cast<__uint128_t>(x) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace seqlimit
