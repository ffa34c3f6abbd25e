#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "seqlimit/counting.hpp"
#include "seqlimit/error.hpp"
#include "seqlimit/word.hpp"

using namespace seqlimit;

namespace {

Word W(const char* s) { return Word::parse(s); }

Word random_word(SeededStream& s, std::size_t n, const Alphabet& a = Alphabet::binary()) {
    std::vector<std::uint8_t> letters(n);
    for (auto& l : letters) l = static_cast<std::uint8_t>(s.uniform_below(a.size()));
    return Word(a, std::move(letters));
}

}  // namespace

TEST(Word, ParseAndPrint) {
    const Word w = W("0101");
    EXPECT_EQ(w.size(), 4u);
    EXPECT_EQ(w.str(), "0101");
    EXPECT_EQ(w.count(1), 2u);
    EXPECT_THROW(Word::parse("012"), DomainError);
    EXPECT_EQ((W("01") + W("1")).str(), "011");
    EXPECT_EQ(W("10").power(3).str(), "101010");
    const Alphabet abc("abc");
    EXPECT_EQ(Word::parse("cab", abc)[0], 2);
    EXPECT_THROW(Alphabet("aa"), DomainError);
}

TEST(SubsequenceCount, Examples) {
    EXPECT_EQ(subsequence_count(W("0101"), W("01")), 3);
    EXPECT_EQ(subsequence_count(W("1111"), W("11")), 6);
    EXPECT_EQ(subsequence_count(W("01"), W("0101")), 0);
    EXPECT_THROW(subsequence_count(W("01"), Word()), DomainError);
    EXPECT_THROW(subsequence_count(W("01"), Word::parse("ab", Alphabet("ab"))), DomainError);
}

TEST(SubsequenceCount, OnesPatternCountsChooseOnes) {
    SeededStream s(3, 0);
    for (int t = 0; t < 50; ++t) {
        const Word w = random_word(s, 1 + s.uniform_below(40));
        EXPECT_EQ(subsequence_count(w, W("111")), binomial(w.count(1), 3));
    }
}

TEST(SubsequenceCount, MatchesEnumerationUpToLengthTen) {
    for (std::size_t n = 0; n <= 10; ++n)
        for (const auto& ws : oracle::words("01", n))
            for (std::size_t l = 1; l <= 3; ++l)
                for (const auto& us : oracle::words("01", l)) {
                    const Word w = Word::parse(ws);
                    const Word u = Word::parse(us);
                    ASSERT_EQ(subsequence_count(w, u), BigInt(static_cast<unsigned long>(oracle::subsequence_count(ws, us))))
                        << ws << " " << us;
                }
}

TEST(SubsequenceCount, TableSumsToBinomial) {
    SeededStream s(4, 0);
    const Alphabet abc("abc");
    for (int t = 0; t < 20; ++t) {
        const Word w = random_word(s, 5 + s.uniform_below(30), abc);
        for (std::size_t l = 1; l <= 3; ++l) {
            BigInt total = 0;
            for (const Word& u : all_words(abc, l)) total += subsequence_count(w, u);
            EXPECT_EQ(total, binomial(w.size(), l));
        }
    }
}

TEST(SubsequenceCount, RelabelingInvariance) {
    SeededStream s(5, 0);
    const Alphabet abc("abc");
    const std::uint8_t perm[] = {2, 0, 1};
    auto relabel = [&](const Word& w) {
        std::vector<std::uint8_t> l(w.letters().begin(), w.letters().end());
        for (auto& x : l) x = perm[x];
        return Word(abc, std::move(l));
    };
    for (int t = 0; t < 30; ++t) {
        const Word w = random_word(s, 20, abc);
        const Word u = random_word(s, 1 + s.uniform_below(4), abc);
        EXPECT_EQ(subsequence_count(w, u), subsequence_count(relabel(w), relabel(u)));
    }
}

TEST(SubsequenceCount, ContainsIffPositive) {
    SeededStream s(6, 0);
    for (int t = 0; t < 500; ++t) {
        const Word w = random_word(s, s.uniform_below(12));
        const Word u = random_word(s, 1 + s.uniform_below(5));
        EXPECT_EQ(contains_pattern(w, u), sgn(subsequence_count(w, u)) > 0);
    }
    EXPECT_TRUE(contains_pattern(W("0101"), W("11")));
    EXPECT_FALSE(contains_pattern(W("0101"), W("110")));
    EXPECT_TRUE(contains_pattern(W("0101"), Word()));
}

TEST(PatternDensity, Examples) {
    EXPECT_EQ(pattern_density(W("0101"), W("01")), Rational(1, 2));
    EXPECT_EQ(pattern_density(W("0101"), W("11")), Rational(1, 6));
    EXPECT_EQ(pattern_density(Word::repeat(1, 9), Word::repeat(1, 4)), Rational(1));
    EXPECT_THROW(pattern_density(W("01"), W("011")), DomainError);
}

TEST(DensityTable, Examples) {
    const DensityMap one = density_table(W("01"), 1);
    EXPECT_EQ(one.at(W("0")), Rational(1, 2));
    EXPECT_EQ(one.at(W("1")), Rational(1, 2));
    const DensityMap two = density_table(W("0101"), 2);
    EXPECT_EQ(two.at(W("00")), Rational(1, 6));
    EXPECT_EQ(two.at(W("01")), Rational(1, 2));
    EXPECT_EQ(two.at(W("10")), Rational(1, 6));
    EXPECT_EQ(two.at(W("11")), Rational(1, 6));
    EXPECT_EQ(two.source_length, 4u);
    EXPECT_EQ(two.pattern_length, 2u);
}

TEST(DensityTable, SumsToOneAndIgnoresThreadCount) {
    SeededStream s(7, 0);
    for (int t = 0; t < 10; ++t) {
        const Word w = random_word(s, 10 + s.uniform_below(40));
        const DensityMap a = density_table(w, 4, kDefaultDensityTableCap, 1);
        const DensityMap b = density_table(w, 4, kDefaultDensityTableCap, 4);
        Rational total(0);
        for (const auto& [u, v] : a.entries) total += v;
        EXPECT_EQ(total, 1);
        EXPECT_EQ(a.entries, b.entries);
    }
    EXPECT_THROW(density_table(W("0101"), 3, 4), CapExceeded);
}

TEST(Extract, Examples) {
    const std::size_t odd[] = {1, 3};
    const std::size_t even[] = {2, 4};
    EXPECT_EQ(extract(W("0101"), odd).str(), "00");
    EXPECT_EQ(extract(W("0101"), even).str(), "11");
    const Alphabet abc("abc");
    const std::size_t all[] = {1, 2, 3};
    EXPECT_EQ(extract(Word::parse("abc", abc), all).str(), "abc");
    const std::size_t bad[] = {2, 2};
    EXPECT_THROW(extract(W("0101"), bad), DomainError);
}

TEST(HammingD1, Examples) {
    EXPECT_EQ(hamming_d1(W("0101"), W("0101")), 0);
    EXPECT_EQ(hamming_d1(W("0000"), W("1111")), 1);
    EXPECT_EQ(hamming_d1(W("0101"), W("0001")), Rational(1, 4));
    EXPECT_THROW(hamming_d1(W("01"), W("0")), DomainError);
}

TEST(RandomSubsequence, Examples) {
    SeededStream s(8, 0);
    EXPECT_EQ(random_subsequence(W("0110"), 4, s).str(), "0110");
    EXPECT_EQ(random_subsequence(Word::repeat(1, 30), 7, s), Word::repeat(1, 7));
    const auto idx = random_index_subset(20, 5, s);
    ASSERT_EQ(idx.size(), 5u);
    EXPECT_TRUE(std::is_sorted(idx.begin(), idx.end()));
    EXPECT_LT(idx.back(), 20u);
}

TEST(RandomSubsequence, LawMatchesDensityTable) {
    const Word w = W("0101");
    const DensityMap table = density_table(w, 2);
    const SeededStream root(11, 0);
    std::map<std::string, int> hist;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        SeededStream s = root.substream(static_cast<std::uint64_t>(i));
        ++hist[random_subsequence(w, 2, s).str()];
    }
    for (const auto& [u, t] : table.entries) {
        const double p = to_double(t);
        const double sigma = std::sqrt(draws * p * (1 - p));
        EXPECT_NEAR(hist[u.str()], draws * p, 3 * sigma) << u.str();
    }
}

TEST(LetterPrefixCounts, Examples) {
    const LetterPrefixCounts c(W("0101"));
    EXPECT_EQ(c.count(1, 1, 4), 2u);
    EXPECT_EQ(c.count(0, 1, 2), 1u);
    SeededStream s(9, 0);
    const Alphabet abc("abc");
    const Word w = random_word(s, 25, abc);
    const LetterPrefixCounts p(w);
    for (std::size_t a = 1; a <= w.size(); ++a)
        for (std::size_t b = a; b <= w.size(); ++b)
            EXPECT_EQ(p.count(0, a, b) + p.count(1, a, b) + p.count(2, a, b), b - a + 1);
}
