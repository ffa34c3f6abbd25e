#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "seqlimit/counting.hpp"
#include "seqlimit/error.hpp"
#include "seqlimit/limits.hpp"
#include "seqlimit/property_testing.hpp"

using namespace seqlimit;

namespace {

Word W(const std::string& s) { return Word::parse(s); }

std::string random_bits(SeededStream& s, std::size_t n) {
    std::string out(n, '0');
    for (auto& c : out) c = s.uniform_below(2) ? '1' : '0';
    return out;
}

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& p : v) out += (out.empty() ? "" : ",") + p;
    return out;
}

std::string rep(const std::string& s, std::size_t k) {
    std::string out;
    for (std::size_t i = 0; i < k; ++i) out += s;
    return out;
}

}  // namespace

TEST(ForbiddenFamily, ParseAndAutomaton) {
    const ForbiddenFamily f = ForbiddenFamily::parse("10,110");
    ASSERT_EQ(f.patterns().size(), 2u);
    EXPECT_EQ(f.state_count(), 12u);
    std::size_t s = f.start_state();
    for (char c : std::string("110")) s = f.transition(s, static_cast<std::uint8_t>(c - '0'));
    EXPECT_TRUE(f.is_dead(s));
    EXPECT_THROW(ForbiddenFamily::parse("1,2"), DomainError);
    EXPECT_EQ(ForbiddenFamily::parse("").patterns().size(), 0u);
}

TEST(IsMember, Examples) {
    const ForbiddenFamily f = ForbiddenFamily::parse("10");
    EXPECT_TRUE(is_member(W("0011"), f));
    EXPECT_FALSE(is_member(W("0101"), f));
    EXPECT_TRUE(is_member(W("1010"), ForbiddenFamily(Alphabet::binary())));
}

TEST(IsMember, AgreesWithSubsequenceSearch) {
    SeededStream s(81, 0);
    for (int t = 0; t < 300; ++t) {
        std::vector<std::string> pats;
        for (std::size_t k = 0, m = 1 + s.uniform_below(3); k < m; ++k) pats.push_back(random_bits(s, 1 + s.uniform_below(4)));
        const ForbiddenFamily f = ForbiddenFamily::parse(join(pats));
        const std::string w = random_bits(s, s.uniform_below(14));
        bool member = true;
        for (const auto& p : pats) member = member && !oracle::contains(w, p);
        EXPECT_EQ(is_member(W(w), f), member) << w << " " << join(pats);
    }
}

TEST(D1ToFamily, Examples) {
    const ForbiddenFamily ten = ForbiddenFamily::parse("10");
    EXPECT_EQ(d1_to_family(W("0011"), ten).distance, 0);
    for (std::size_t n = 2; n <= 12; n += 2) {
        const FamilyDistance d = d1_to_family(W(rep("10", n / 2)), ten);
        EXPECT_EQ(d.distance, Rational(1, 2));
        EXPECT_EQ(oracle::family_distance(rep("10", n / 2), {"10"}), n / 2);
        EXPECT_TRUE(is_member(d.witness, ten));
        EXPECT_EQ(hamming_d1(d.witness, W(rep("10", n / 2))), d.distance);
    }
    const ForbiddenFamily ones = ForbiddenFamily::parse("111");
    for (std::size_t n = 1; n <= 12; ++n) {
        const FamilyDistance d = d1_to_family(Word::repeat(1, n), ones);
        EXPECT_EQ(d.substitutions, n < 3 ? 0 : n - 2);
        EXPECT_EQ(d.substitutions, oracle::family_distance(std::string(n, '1'), {"111"}));
    }
    EXPECT_THROW(d1_to_family(W("0101"), ForbiddenFamily::parse("1111,0000,101010"), 10), CapExceeded);
}

TEST(D1ToFamily, MatchesBruteForce) {
    SeededStream s(82, 0);
    for (int t = 0; t < 40; ++t) {
        std::vector<std::string> pats;
        for (std::size_t k = 0, m = 1 + s.uniform_below(2); k < m; ++k) pats.push_back(random_bits(s, 1 + s.uniform_below(3)));
        const std::size_t n = 1 + s.uniform_below(12);
        const std::string w = random_bits(s, n);
        const ForbiddenFamily f = ForbiddenFamily::parse(join(pats));
        const std::size_t expected = oracle::family_distance(w, pats);
        if (expected > n) {
            // The property has no word of this length.
            EXPECT_THROW(d1_to_family(W(w), f), DomainError);
            continue;
        }
        const FamilyDistance d = d1_to_family(W(w), f);
        ASSERT_EQ(d.substitutions, expected) << w << " " << join(pats);
        EXPECT_TRUE(is_member(d.witness, f));
    }
}

TEST(RunTester, MembersAlwaysAccept) {
    const ForbiddenFamily f = ForbiddenFamily::parse("10");
    const Word member = W(std::string(300, '0') + std::string(200, '1'));
    for (std::size_t len : {1u, 5u, 50u, 500u}) {
        const TestReport r = run_tester(member, len, 200, f, 83);
        EXPECT_EQ(r.accepted, r.trials);
        EXPECT_EQ(r.accept_fraction, 1.0);
        ASSERT_TRUE(r.distance.has_value());
        EXPECT_EQ(*r.distance, 0);
    }
    // Single letters are members, so length-1 samples always pass.
    EXPECT_EQ(run_tester(W(rep("10", 50)), 1, 100, f, 84).accept_fraction, 1.0);
}

TEST(RunTester, FarWordIsRejected) {
    const ForbiddenFamily f = ForbiddenFamily::parse("10");
    const TestReport r = run_tester(W(rep("10", 500)), 20, 1000, f, 85);
    EXPECT_LE(r.accept_fraction, 1.0 / 3);
    EXPECT_EQ(*r.distance, Rational(1, 2));
    EXPECT_EQ(r.prng, SeededStream::algorithm);
    const TestReport same = run_tester(W(rep("10", 500)), 20, 1000, f, 85, 3);
    EXPECT_EQ(same.accepted, r.accepted);
    EXPECT_THROW(run_tester(W("10"), 3, 1, f, 85), DomainError);
}

TEST(WordAtDistance, HitsTargetsExactly) {
    const ForbiddenFamily f = ForbiddenFamily::parse("10");
    for (std::size_t k : {0u, 1u, 7u, 20u, 30u}) {
        const auto w = word_at_distance(f, 60, k, 86);
        ASSERT_TRUE(w.has_value()) << k;
        EXPECT_EQ(d1_to_family(*w, f).substitutions, k);
    }
    EXPECT_FALSE(word_at_distance(f, 60, 31, 86).has_value());
}

TEST(Curve, CompletenessAndSoundnessTrends) {
    const ForbiddenFamily f = ForbiddenFamily::parse("10");
    const std::size_t lengths[] = {2, 30, 200};
    const Rational dists[] = {Rational(0), Rational(1, 2), Rational(9, 10)};
    const CurveTable t = completeness_soundness_curve(f, 200, lengths, dists, 300, 87);
    EXPECT_EQ(t.notes.size(), 1u);  // 9/10 is beyond the largest possible distance
    ASSERT_EQ(t.rows.size(), 6u);
    for (const auto& r : t.rows) {
        if (r.target_distance == 0) {
            EXPECT_EQ(r.accept_fraction, 1.0);
        }
        if (r.target_distance == Rational(1, 2) && r.sample_length == 30) {
            EXPECT_LT(r.accept_fraction, 1.0 / 3);
        }
        EXPECT_EQ(r.achieved_distance, r.target_distance);
    }
    // Shorter samples never make acceptance rarer.
    const double short_p = t.rows[3].accept_fraction;
    const double long_p = t.rows[5].accept_fraction;
    EXPECT_GE(short_p + 3 * std::sqrt(short_p * (1 - short_p) / 300) + 1e-12, long_p);
}

TEST(TwoColorable, MatchesBruteForce) {
    SeededStream s(88, 0);
    for (int t = 0; t < 150; ++t) {
        const std::vector<std::string> f1{random_bits(s, 1 + s.uniform_below(3))};
        const std::vector<std::string> f2{random_bits(s, 1 + s.uniform_below(3))};
        const std::string w = random_bits(s, 1 + s.uniform_below(12));
        EXPECT_EQ(is_two_colorable(W(w), ForbiddenFamily::parse(join(f1)), ForbiddenFamily::parse(join(f2))),
                  oracle::two_colorable(w, f1, f2))
            << w << " " << f1[0] << " " << f2[0];
    }
}

TEST(TwoColorable, ShufflesOfMembersAreColorable) {
    SeededStream s(89, 0);
    const ForbiddenFamily a = ForbiddenFamily::parse("10");   // sorted words
    const ForbiddenFamily b = ForbiddenFamily::parse("01");   // reverse-sorted words
    for (int t = 0; t < 100; ++t) {
        const std::size_t n1 = s.uniform_below(9), n2 = s.uniform_below(8);
        const std::size_t z1 = s.uniform_below(n1 + 1), z2 = s.uniform_below(n2 + 1);
        const std::string u = std::string(z1, '0') + std::string(n1 - z1, '1');
        const std::string v = std::string(z2, '1') + std::string(n2 - z2, '0');
        std::string w;
        std::size_t i = 0, j = 0;
        while (i < u.size() || j < v.size())
            w += (j == v.size() || (i < u.size() && s.uniform_below(2))) ? u[i++] : v[j++];
        EXPECT_TRUE(is_two_colorable(W(w), a, b)) << w;
    }
    const ForbiddenFamily one_one = ForbiddenFamily::parse("11");
    EXPECT_TRUE(is_two_colorable(W("0110"), one_one, one_one));
    EXPECT_FALSE(is_two_colorable(W("10101"), one_one, one_one));
}

TEST(ForbiddenDensities, VanishAlongMemberSequences) {
    // For a member w of length n, t(u,f_w) <= t(u,w) + l^2/n = l^2/n for
    // every forbidden u, so the densities vanish in the limit.
    SeededStream s(90, 0);
    for (const auto& fam : {std::vector<std::string>{"10"}, std::vector<std::string>{"111", "0110"},
                            std::vector<std::string>{"101", "0100"}}) {
        const ForbiddenFamily f = ForbiddenFamily::parse(join(fam));
        for (std::size_t n : {10u, 40u, 160u}) {
            const FamilyDistance d = d1_to_family(W(random_bits(s, n)), f);
            const LimitFn lim = associated_function(d.witness);
            for (const auto& u : fam) {
                const auto l = static_cast<long>(u.size());
                Rational bound(l * l, static_cast<long>(n));
                bound.canonicalize();
                EXPECT_LE(t_density(W(u), lim), bound) << d.witness.str() << " " << u;
            }
        }
    }
    // Sorted members are closed under repeating letters, so the density is exactly 0.
    const ForbiddenFamily sorted = ForbiddenFamily::parse("10");
    for (int t = 0; t < 20; ++t) {
        const FamilyDistance d = d1_to_family(W(random_bits(s, 1 + s.uniform_below(30))), sorted);
        EXPECT_EQ(t_density(W("10"), associated_function(d.witness)), 0);
    }
}
