#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "seqlimit/random.hpp"
#include "seqlimit/rational.hpp"
#include "seqlimit/word.hpp"

namespace seqlimit {

/// Number of index sets I with sub(I,w) = u, i.e. binom(w,u). Prefix DP,
/// O(|w||u|) time and |u|+1 counters; exact. Returns 0 when |u| > |w|.
/// Throws DomainError on alphabet mismatch or empty u.
BigInt subsequence_count(const Word& w, const Word& u);

/// t(u,w) = binom(w,u) / binom(|w|,|u|). Requires 1 <= |u| <= |w|.
Rational pattern_density(const Word& w, const Word& u);

/// Complete table of t(u,w) over all u of one length.
struct DensityMap {
    Alphabet alphabet;
    std::size_t source_length = 0;
    std::size_t pattern_length = 0;
    std::map<Word, Rational> entries;

    const Rational& at(const Word& u) const;
};

inline constexpr std::size_t kDefaultDensityTableCap = std::size_t{1} << 20;

/// t(u,w) for every u in Sigma^len. Values sum to exactly 1. Work fans out
/// over `threads` workers (0 = default); the result does not depend on it.
DensityMap density_table(const Word& w, std::size_t len,
                         std::size_t cap = kDefaultDensityTableCap, unsigned threads = 0);

/// sub(I,w) for a strictly increasing 1-based index set.
Word extract(const Word& w, std::span<const std::size_t> indices);

/// Normalized Hamming distance; for alphabets beyond {0,1} the per-position
/// term is the mismatch indicator.
Rational hamming_d1(const Word& w, const Word& u);

/// sub(len,w) for an index set drawn uniformly from all len-subsets.
/// Floyd's sampler: exactly `len` draws from the stream.
Word random_subsequence(const Word& w, std::size_t len, SeededStream& stream);

/// Uniformly random len-subset of {0,...,n-1}, sorted ascending (0-based).
std::vector<std::size_t> random_index_subset(std::size_t n, std::size_t len, SeededStream& stream);

/// Greedy left-to-right test for binom(w,u) > 0. The empty pattern is
/// contained in every word.
bool contains_pattern(const Word& w, const Word& u);

/// Per-letter prefix sums; N_a(w,I) for any interval in O(1).
class LetterPrefixCounts {
public:
    explicit LetterPrefixCounts(const Word& w);

    /// Occurrences of `letter` at 1-based positions first..last inclusive.
    std::size_t count(std::uint8_t letter, std::size_t first, std::size_t last) const;
    std::size_t length() const noexcept { return n_; }
    std::size_t alphabet_size() const noexcept { return k_; }

private:
    std::size_t n_;
    std::size_t k_;
    std::vector<std::size_t> prefix_;  // (n+1) x k, row-major by position
};

}  // namespace seqlimit
