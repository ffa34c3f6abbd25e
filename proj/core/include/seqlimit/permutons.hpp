#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "seqlimit/random.hpp"
#include "seqlimit/rational.hpp"

namespace seqlimit {

/// Permutation in one-line notation with 1-based values.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<std::uint32_t> values);

    /// "2,1,4,3" (whitespace tolerated).
    static Permutation parse(std::string_view text);
    static Permutation identity(std::size_t n);
    static Permutation reverse(std::size_t n);

    std::size_t size() const noexcept { return values_.size(); }
    /// sigma(i) for 1-based i.
    std::uint32_t operator()(std::size_t i) const { return values_.at(i - 1); }
    const std::vector<std::uint32_t>& values() const noexcept { return values_; }
    Permutation inverse() const;
    std::string str() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    std::vector<std::uint32_t> values_;
};

/// All k! permutations of size k in lexicographic order.
std::vector<Permutation> all_permutations(std::size_t k);

inline constexpr std::size_t kDefaultPatternSizeCap = 4;

/// Number of k-subsets of positions of sigma order-isomorphic to tau. Pattern
/// sizes above `cap` are rejected; size 2 uses merge-sort inversion counts.
BigInt pattern_count_perm(const Permutation& sigma, const Permutation& tau, std::size_t cap = kDefaultPatternSizeCap);

/// Lambda(tau,sigma) / binom(n,k), and 0 when n < k.
Rational t_perm(const Permutation& tau, const Permutation& sigma, std::size_t cap = kDefaultPatternSizeCap);

/// Measure on [0,1]^2 that is uniform inside each cell of an m x m grid.
/// mass(i,j) is the mass of [i/m,(i+1)/m) x [j/m,(j+1)/m) with i indexing x.
/// Construction checks total mass 1 and uniform marginals.
class GridMeasure {
public:
    GridMeasure(std::size_t m, std::vector<Rational> mass);

    static GridMeasure uniform(std::size_t m = 1);

    std::size_t m() const noexcept { return m_; }
    const Rational& mass(std::size_t i, std::size_t j) const { return mass_[i * m_ + j]; }
    const std::vector<Rational>& masses() const noexcept { return mass_; }

    /// Same measure on the (m*factor)-grid.
    GridMeasure refined(std::size_t factor) const;

    friend bool operator==(const GridMeasure&, const GridMeasure&) = default;

private:
    std::size_t m_;
    std::vector<Rational> mass_;
};

/// mu_sigma: mass 1/n on each cell (i, sigma(i)).
GridMeasure mu_sigma(const Permutation& sigma);

/// Mixture of `components` random permutation matrices of size m with random
/// positive integer weights; always a permuton.
GridMeasure random_grid_measure(std::size_t m, std::size_t components, SeededStream& stream);

struct GridDensity {
    bool exact = true;
    Rational value;          // exact value when `exact`
    double estimate = 0.0;   // value as double, or Monte Carlo mean
    double ci_halfwidth = 0.0;  // 99% normal interval when estimated
    std::size_t samples = 0;
};

/// t(tau, mu). Exact for |tau| <= cap: sums over cell sequences with
/// non-decreasing columns; points sharing a column (row) are in uniformly
/// random x (y) order, contributing 1/g! per group of size g. Above the
/// cap, a Monte Carlo estimate from `samples` draws of sub(k, mu).
GridDensity t_grid(const Permutation& tau, const GridMeasure& mu, std::size_t cap = kDefaultPatternSizeCap,
                   std::size_t samples = 100000, std::uint64_t seed = 0);

/// Exact t(tau, mu) for every tau of size k (lexicographic order).
std::vector<Rational> t_grid_all(std::size_t k, const GridMeasure& mu, std::size_t cap = kDefaultPatternSizeCap);

/// sup over rectangles I x J of |mu(I x J) - nu(I x J)|, on the common
/// refinement, by a sweep over column pairs.
Rational d_box_grid(const GridMeasure& mu, const GridMeasure& nu);

/// sub(k, mu): k i.i.d. points from mu; tau(i) is the y-rank of the point
/// with the i-th smallest x. Ties broken by draw index.
Permutation sample_subperm(const GridMeasure& mu, std::size_t k, SeededStream& stream);

/// int x^i y^j dmu, exact.
Rational moment_xy_direct(std::size_t i, std::size_t j, const GridMeasure& mu);

/// Coefficient of t(sigma, mu) in int x^i y^j dmu, |sigma| = i+j+1.
Rational moment_xy_coefficient(std::size_t i, std::size_t j, const Permutation& sigma);

/// sum over sigma of size i+j+1 of coefficient * t(sigma, mu). The index
/// convention is validated against moment_xy_direct on 50 random grid
/// measures at first use per (i,j); a mismatch raises InvariantViolation.
Rational moment_xy_from_densities(std::size_t i, std::size_t j, const std::map<Permutation, Rational>& densities);

}  // namespace seqlimit
