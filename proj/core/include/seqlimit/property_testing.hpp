#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seqlimit/random.hpp"
#include "seqlimit/rational.hpp"
#include "seqlimit/word.hpp"

namespace seqlimit {

inline constexpr std::size_t kDefaultAutomatonCap = 1'000'000;

/// Hereditary property given by a finite set of forbidden subsequences.
/// The avoidance automaton tracks, per pattern, the length of the greedily
/// matched prefix; a state with any pattern fully matched is dead.
class ForbiddenFamily {
public:
    explicit ForbiddenFamily(Alphabet alphabet, std::vector<Word> patterns = {});

    /// Patterns as comma-separated symbol strings, e.g. "10,110".
    static ForbiddenFamily parse(std::string_view list, const Alphabet& alphabet = Alphabet::binary());

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    const std::vector<Word>& patterns() const noexcept { return patterns_; }

    /// prod (|p| + 1), saturating at SIZE_MAX.
    std::size_t state_count() const noexcept { return state_count_; }
    std::size_t start_state() const noexcept { return 0; }
    bool is_dead(std::size_t state) const;
    std::size_t transition(std::size_t state, std::uint8_t letter) const;

private:
    Alphabet alphabet_;
    std::vector<Word> patterns_;
    std::vector<std::size_t> radix_;
    std::size_t state_count_ = 1;
};

/// No pattern of F occurs as a subsequence of w.
bool is_member(const Word& w, const ForbiddenFamily& family);

struct FamilyDistance {
    Rational distance;          // d1(w, P) = substitutions / n
    std::size_t substitutions = 0;
    Word witness;               // a closest member of the same length
};

/// Exact minimum substitution distance to the avoidance language via DP
/// over positions x reachable automaton states.
FamilyDistance d1_to_family(const Word& w, const ForbiddenFamily& family, std::size_t cap = kDefaultAutomatonCap);

struct TestReport {
    std::size_t sample_length = 0;
    std::size_t trials = 0;
    std::size_t accepted = 0;
    double accept_fraction = 0.0;
    std::optional<Rational> distance;  // exact d1(w, P) when the automaton fits the cap
    std::uint64_t seed = 0;
    std::string prng;
};

/// Accepts a trial iff sub(len, w) avoids every pattern. Members of P must
/// accept every trial; a rejection there raises InvariantViolation.
TestReport run_tester(const Word& w, std::size_t len, std::size_t trials, const ForbiddenFamily& family,
                      std::uint64_t seed, unsigned threads = 0, bool compute_distance = true);

struct CurveRow {
    Rational target_distance;
    Rational achieved_distance;
    std::size_t sample_length = 0;
    double accept_fraction = 0.0;
};

struct CurveTable {
    std::size_t n = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::string prng;
    std::vector<CurveRow> rows;
    std::vector<std::string> notes;  // skipped targets
};

/// Word of length n at exactly `substitutions` from P, found by walking
/// from a closest member of a far word towards that word; d1 changes by at
/// most 1/n per flip, so every intermediate distance is hit. Returns
/// nullopt when no candidate is far enough.
std::optional<Word> word_at_distance(const ForbiddenFamily& family, std::size_t n, std::size_t substitutions,
                                     std::uint64_t seed, std::size_t cap = kDefaultAutomatonCap);

/// Accept fraction for each (target distance, sample length). Targets are
/// rounded to the nearest multiple of 1/n.
CurveTable completeness_soundness_curve(const ForbiddenFamily& family, std::size_t n,
                                        std::span<const std::size_t> lengths, std::span<const Rational> distances,
                                        std::size_t trials, std::uint64_t seed, unsigned threads = 0);

/// Whether the positions of w can be 2-coloured so that the first colour
/// class lies in P(first) and the second in P(second).
bool is_two_colorable(const Word& w, const ForbiddenFamily& first, const ForbiddenFamily& second,
                      std::size_t cap = kDefaultAutomatonCap);

}  // namespace seqlimit
