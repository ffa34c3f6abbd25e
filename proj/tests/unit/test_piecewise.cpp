#include <gtest/gtest.h>

#include "seqlimit/error.hpp"
#include "seqlimit/limits.hpp"
#include "seqlimit/piecewise.hpp"
#include "seqlimit/random.hpp"

using namespace seqlimit;

namespace {

Rational R(long a, long b = 1) {
    Rational q(a, b);
    q.canonicalize();
    return q;
}

const Polynomial kX{Rational(0), Rational(1)};

}  // namespace

TEST(PiecewisePoly, RejectsBadGrids) {
    EXPECT_THROW(PiecewisePoly({R(0), R(1, 2)}, {Polynomial{R(1)}}), DomainError);
    EXPECT_THROW(PiecewisePoly({R(0), R(1, 2), R(1, 2), R(1)}, {Polynomial{R(1)}, Polynomial{R(1)}, Polynomial{R(1)}}),
                 DomainError);
    EXPECT_THROW(PiecewisePoly({R(0), R(1)}, {Polynomial{R(1)}, Polynomial{R(0)}}), DomainError);
    EXPECT_THROW(PiecewisePoly({R(1, 3), R(1)}, {Polynomial{R(1)}}), DomainError);
}

TEST(PiecewisePoly, EvaluationAndOwnership) {
    const Rational vals[] = {R(1), R(0)};
    const PiecewisePoly f = PiecewisePoly::step({R(0), R(1, 2), R(1)}, vals);
    EXPECT_EQ(f(R(0)), 1);
    EXPECT_EQ(f(R(1, 2)), 0);
    EXPECT_EQ(f(R(1)), 0);
    EXPECT_EQ(f.piece_index(R(1)), 1u);
    EXPECT_TRUE(f.is_step());
    EXPECT_THROW(f(R(3, 2)), DomainError);
}

TEST(PiecewisePoly, ArithmeticOnMergedGrids) {
    const Rational a[] = {R(1), R(0)};
    const Rational b[] = {R(1, 2), R(1), R(1, 4)};
    const PiecewisePoly f = PiecewisePoly::step({R(0), R(1, 2), R(1)}, a);
    const PiecewisePoly g = PiecewisePoly::step({R(0), R(1, 3), R(2, 3), R(1)}, b);
    const PiecewisePoly s = f + g;
    EXPECT_EQ(s.piece_count(), 4u);
    for (const Rational& x : {R(0), R(1, 4), R(5, 12), R(7, 12), R(5, 6), R(1)}) {
        EXPECT_EQ(s(x), f(x) + g(x));
        EXPECT_EQ((f - g)(x), f(x) - g(x));
        EXPECT_EQ((f * g)(x), f(x) * g(x));
        EXPECT_EQ((R(3) * f)(x), 3 * f(x));
        EXPECT_EQ((-f)(x), -f(x));
    }
    EXPECT_EQ(common_grid(f, g).size(), 5u);
}

TEST(PiecewisePoly, IntegralsAndAntiderivative) {
    const PiecewisePoly x({R(0), R(1)}, {kX});
    EXPECT_EQ(x.integral(), R(1, 2));
    EXPECT_EQ(x.integral(R(1, 2), R(1)), R(3, 8));

    // f = 1 on [0,1/2): F(x) = min(x, 1/2).
    const PiecewisePoly ind = LimitFn::indicator(R(0), R(1, 2)).poly();
    const PiecewisePoly F = cdf(ind);
    for (long k = 0; k <= 10; ++k) EXPECT_EQ(F(R(k, 10)), std::min(R(k, 10), R(1, 2)));

    // f = d gives F = d x.
    const PiecewisePoly Fd = cdf(PiecewisePoly::constant(R(2, 7)));
    EXPECT_EQ(Fd(R(1, 3)), R(2, 21));
}

TEST(PiecewisePoly, AntiderivativeIsContinuousAndMonotone) {
    SeededStream s(31, 0);
    for (int t = 0; t < 50; ++t) {
        const std::size_t m = 1 + s.uniform_below(6);
        std::vector<Rational> bps{R(0)};
        for (std::size_t j = 1; j < m; ++j) bps.push_back(R(static_cast<long>(j), static_cast<long>(m)));
        bps.push_back(R(1));
        std::vector<Polynomial> pieces;
        for (std::size_t j = 0; j < m; ++j) {
            // Linear pieces with values inside [0,1] on [0,1].
            const Rational a = R(static_cast<long>(s.uniform_below(9)), 8);
            const Rational b = R(static_cast<long>(s.uniform_below(9)), 8);
            pieces.push_back(Polynomial{a, b - a});
        }
        const LimitFn f{PiecewisePoly(bps, pieces)};
        const PiecewisePoly F = cdf(f);
        EXPECT_EQ(F(R(0)), 0);
        EXPECT_EQ(F(R(1)), f.poly().integral());
        for (std::size_t j = 1; j < m; ++j) {
            const Rational& b = F.breakpoints()[j];
            EXPECT_EQ(F.pieces()[j - 1](b), F.pieces()[j](b));
        }
        Rational prev(-1);
        for (long k = 0; k <= 40; ++k) {
            const Rational v = F(R(k, 40));
            EXPECT_GE(v, prev);
            prev = v;
        }
    }
}

TEST(PiecewisePoly, RefineThenCanonicalRoundTrips) {
    const Rational vals[] = {R(1, 3), R(2, 3)};
    const PiecewisePoly f = PiecewisePoly::step({R(0), R(1, 2), R(1)}, vals);
    const Rational extra[] = {R(1, 5), R(3, 4), R(1, 2)};
    const PiecewisePoly r = f.refined(extra);
    EXPECT_EQ(r.piece_count(), 4u);
    EXPECT_EQ(r.canonical(), f);
    EXPECT_EQ(PiecewisePoly::constant(R(1, 2)).refined(extra).canonical(), PiecewisePoly::constant(R(1, 2)));
}

TEST(LimitFn, RangeIsChecked) {
    EXPECT_THROW(LimitFn(PiecewisePoly::constant(R(3, 2))), DomainError);
    EXPECT_THROW(LimitFn(PiecewisePoly({R(0), R(1)}, {Polynomial{R(-1, 10), R(1)}})), DomainError);
    // 4x(1-x) peaks at exactly 1 inside the piece.
    EXPECT_NO_THROW(LimitFn(PiecewisePoly({R(0), R(1)}, {Polynomial{R(0), R(4), R(-4)}})));
    EXPECT_THROW(LimitFn(PiecewisePoly({R(0), R(1)}, {Polynomial{R(0), R(5), R(-5)}})), DomainError);
    const LimitFn x{PiecewisePoly({R(0), R(1)}, {kX})};
    EXPECT_EQ(x.complement()(R(1, 4)), R(3, 4));
    EXPECT_EQ(x.component(0)(R(1, 4)), R(3, 4));
    EXPECT_EQ(x.component(1)(R(1, 4)), R(1, 4));
}

TEST(LimitVector, ComponentsMustSumToOne) {
    const Alphabet abc("abc");
    const Rational w[] = {R(1, 2), R(1, 4), R(1, 4)};
    const LimitVector v = LimitVector::constant(abc, w);
    EXPECT_EQ(v.component(2)(R(1, 2)), R(1, 4));
    const Rational bad[] = {R(1, 2), R(1, 4), R(1, 2)};
    EXPECT_THROW(LimitVector::constant(abc, bad), DomainError);
    const LimitVector bin(LimitFn::constant(R(1, 3)));
    EXPECT_EQ(bin.component(0)(R(0)), R(2, 3));
}
