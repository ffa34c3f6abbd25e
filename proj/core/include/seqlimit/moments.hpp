#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "seqlimit/counting.hpp"
#include "seqlimit/piecewise.hpp"
#include "seqlimit/polynomial.hpp"
#include "seqlimit/word.hpp"

namespace seqlimit {

inline constexpr std::size_t kDefaultMomentPatternCap = 12;

struct MomentTerm {
    Word pattern;
    Rational coefficient;
};

/// int_0^1 x^i F(x)^j dx written as a positive combination of densities of
/// patterns of length i+j+1.
struct MomentCombination {
    std::size_t i = 0;
    std::size_t j = 0;
    std::vector<MomentTerm> terms;
};

/// Patterns u of length i+j+1 with u_1 + ... + u_{i+j} >= j, each weighted
/// i! j! / (i+j+1)! * binom(u_1 + ... + u_{i+j}, j). The last letter is free.
MomentCombination moment_words(std::size_t i, std::size_t j, std::size_t cap = kDefaultMomentPatternCap);

/// int_0^1 x^i F(x)^j dx with F = cdf(f), by exact piecewise expansion.
Rational moment_direct(std::size_t i, std::size_t j, const PiecewisePoly& f);
inline Rational moment_direct(std::size_t i, std::size_t j, const LimitFn& f) { return moment_direct(i, j, f.poly()); }

/// Sum of coefficient * t(u) over the combination; `densities` maps each
/// pattern to its density (any lengths). Throws listing missing patterns.
Rational moment_from_densities(const MomentCombination& combination, const std::map<Word, Rational>& densities);
Rational moment_from_densities(std::size_t i, std::size_t j, const std::map<Word, Rational>& densities);

/// Polynomial in x and y stored by powers of y: sum_b by_y[b](x) y^b.
struct BivariatePoly {
    std::vector<Polynomial> by_y;

    Rational operator()(const Rational& x, const Rational& y) const;
};

/// Expansion of prod_i (y - Q_i(x))^2.
BivariatePoly squared_branch_product(const std::vector<Polynomial>& branches);

struct ForcibilityCertificate {
    LimitFn target;
    std::vector<Polynomial> branches;  // distinct pieces of cdf(target)
    BivariatePoly product;             // prod (y - Q_i(x))^2
    Rational constant;                 // sum of the y^0 terms, integrated
    std::map<Word, Rational> words;    // aggregated pattern coefficients
    std::size_t longest_pattern = 0;
    BigInt word_bound;                 // (k+1)^{2k^2(1 + max piece degree)}

    /// constant + sum coef(u) t(u,h) = int_0^1 P(x, H(x)) dx >= 0.
    Rational residual(const LimitFn& h) const;
    /// The same sum from supplied densities.
    Rational residual(const std::map<Word, Rational>& densities) const;
};

/// Certificate for a piecewise polynomial limit. Throws CapExceeded when a
/// pattern would exceed `cap` letters.
ForcibilityCertificate forcibility_certificate(const LimitFn& f, std::size_t cap = kDefaultMomentPatternCap);

/// t(u,h) for every u in `patterns`, grouped by length.
std::map<Word, Rational> densities_for(const LimitFn& h, const std::map<Word, Rational>& patterns);

struct ForcingVerdict {
    bool distinguished = false;
    std::optional<Word> witness;  // first certificate word whose densities differ
    Rational density_target;
    Rational density_other;
    Rational residual_other;
    RealPoint d1;                 // d1(f,h), reported when indistinguishable
};

ForcingVerdict check_forced(const LimitFn& f, const LimitFn& h, const ForcibilityCertificate& cert);

}  // namespace seqlimit
