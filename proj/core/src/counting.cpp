#include "seqlimit/counting.hpp"

#include <algorithm>

#include "seqlimit/error.hpp"
#include "seqlimit/parallel.hpp"

namespace seqlimit {

namespace {

void require_same_alphabet(const Word& w, const Word& u) {
    if (!(w.alphabet() == u.alphabet()))
        throw DomainError("alphabet mismatch: '" + w.alphabet().symbols() + "' vs '" + u.alphabet().symbols() + "'");
}

template <class Counter>
Counter count_dp(std::span<const std::uint8_t> w, std::span<const std::uint8_t> u) {
    const std::size_t len = u.size();
    std::vector<Counter> dp(len + 1, Counter(0));
    dp[0] = 1;
    for (std::uint8_t x : w)
        for (std::size_t j = len; j >= 1; --j)
            if (u[j - 1] == x) dp[j] += dp[j - 1];
    return dp[len];
}

// Every DP counter dp[j] is bounded by binom(n,j); if the largest of those
// fits in 63 bits the machine-word DP is exact.
bool fits_machine_word(std::size_t n, std::size_t len) {
    const std::size_t peak = std::min(len, n / 2);
    return binomial(n, peak) < (BigInt(1) << 63);
}

}  // namespace

BigInt subsequence_count(const Word& w, const Word& u) {
    require_same_alphabet(w, u);
    if (u.empty()) throw DomainError("subsequence_count requires a non-empty pattern");
    if (u.size() > w.size()) return BigInt(0);
    if (fits_machine_word(w.size(), u.size())) {
        const std::uint64_t c = count_dp<std::uint64_t>(w.letters(), u.letters());
        return BigInt(static_cast<unsigned long>(c));
    }
    return count_dp<BigInt>(w.letters(), u.letters());
}

Rational pattern_density(const Word& w, const Word& u) {
    require_same_alphabet(w, u);
    if (u.empty()) throw DomainError("pattern_density requires a non-empty pattern");
    if (u.size() > w.size())
        throw DomainError("pattern of length " + std::to_string(u.size()) + " is longer than the word (" +
                          std::to_string(w.size()) + "); density undefined");
    Rational t(subsequence_count(w, u), binomial(w.size(), u.size()));
    t.canonicalize();
    return t;
}

const Rational& DensityMap::at(const Word& u) const {
    auto it = entries.find(u);
    if (it == entries.end()) throw DomainError("pattern '" + u.str() + "' is not in the density map");
    return it->second;
}

DensityMap density_table(const Word& w, std::size_t len, std::size_t cap, unsigned threads) {
    if (len == 0) throw DomainError("density_table requires a positive pattern length");
    if (len > w.size())
        throw DomainError("pattern length " + std::to_string(len) + " exceeds word length " + std::to_string(w.size()));
    const std::size_t k = w.alphabet().size();
    BigInt table_size;
    mpz_ui_pow_ui(table_size.get_mpz_t(), k, len);
    if (table_size > BigInt(static_cast<unsigned long>(cap)))
        throw CapExceeded("density table size " + to_string(table_size), cap);

    std::vector<Word> patterns = all_words(w.alphabet(), len);
    std::vector<Rational> values(patterns.size());
    const BigInt total = binomial(w.size(), len);
    parallel_for(patterns.size(), threads, [&](std::size_t i) {
        Rational t(subsequence_count(w, patterns[i]), total);
        t.canonicalize();
        values[i] = std::move(t);
    });

    DensityMap map{w.alphabet(), w.size(), len, {}};
    for (std::size_t i = 0; i < patterns.size(); ++i) map.entries.emplace(std::move(patterns[i]), std::move(values[i]));
    return map;
}

Word extract(const Word& w, std::span<const std::size_t> indices) {
    std::vector<std::uint8_t> letters;
    letters.reserve(indices.size());
    std::size_t previous = 0;
    for (std::size_t idx : indices) {
        if (idx < 1 || idx > w.size())
            throw DomainError("index " + std::to_string(idx) + " out of range [1," + std::to_string(w.size()) + "]");
        if (idx <= previous) throw DomainError("index set is not strictly increasing at " + std::to_string(idx));
        letters.push_back(w[idx - 1]);
        previous = idx;
    }
    return Word(w.alphabet(), std::move(letters));
}

Rational hamming_d1(const Word& w, const Word& u) {
    require_same_alphabet(w, u);
    if (w.size() != u.size())
        throw DomainError("hamming_d1 needs equal lengths (" + std::to_string(w.size()) + " vs " +
                          std::to_string(u.size()) + ")");
    if (w.empty()) return Rational(0);
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < w.size(); ++i) mismatches += w[i] != u[i] ? 1 : 0;
    Rational d(static_cast<unsigned long>(mismatches), static_cast<unsigned long>(w.size()));
    d.canonicalize();
    return d;
}

std::vector<std::size_t> random_index_subset(std::size_t n, std::size_t len, SeededStream& stream) {
    if (len > n) throw DomainError("cannot choose " + std::to_string(len) + " of " + std::to_string(n) + " indices");
    std::vector<bool> chosen(n, false);
    std::vector<std::size_t> out;
    out.reserve(len);
    for (std::size_t j = n - len; j < n; ++j) {
        const auto t = static_cast<std::size_t>(stream.uniform_below(j + 1));
        const std::size_t pick = chosen[t] ? j : t;
        chosen[pick] = true;
        out.push_back(pick);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Word random_subsequence(const Word& w, std::size_t len, SeededStream& stream) {
    if (len < 1 || len > w.size())
        throw DomainError("subsequence length " + std::to_string(len) + " outside [1," + std::to_string(w.size()) + "]");
    const auto idx = random_index_subset(w.size(), len, stream);
    std::vector<std::uint8_t> letters;
    letters.reserve(len);
    for (std::size_t i : idx) letters.push_back(w[i]);
    return Word(w.alphabet(), std::move(letters));
}

bool contains_pattern(const Word& w, const Word& u) {
    require_same_alphabet(w, u);
    std::size_t matched = 0;
    for (std::size_t i = 0; i < w.size() && matched < u.size(); ++i)
        if (w[i] == u[matched]) ++matched;
    return matched == u.size();
}

LetterPrefixCounts::LetterPrefixCounts(const Word& w)
    : n_(w.size()), k_(w.alphabet().size()), prefix_((w.size() + 1) * w.alphabet().size(), 0) {
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t a = 0; a < k_; ++a) prefix_[(i + 1) * k_ + a] = prefix_[i * k_ + a];
        ++prefix_[(i + 1) * k_ + w[i]];
    }
}

std::size_t LetterPrefixCounts::count(std::uint8_t letter, std::size_t first, std::size_t last) const {
    if (letter >= k_) throw DomainError("letter outside alphabet");
    if (first < 1 || last > n_ || first > last + 1)
        throw DomainError("interval [" + std::to_string(first) + "," + std::to_string(last) + "] outside [1," +
                          std::to_string(n_) + "]");
    return prefix_[last * k_ + letter] - prefix_[(first - 1) * k_ + letter];
}

}  // namespace seqlimit
