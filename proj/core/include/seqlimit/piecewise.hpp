#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "seqlimit/polynomial.hpp"
#include "seqlimit/rational.hpp"
#include "seqlimit/word.hpp"

namespace seqlimit {

/// Function on [0,1] given by breakpoints 0 = b_0 < ... < b_m = 1 and one
/// polynomial (in the global variable x) per piece [b_{j-1}, b_j); the last
/// piece also owns x = 1. No range restriction: differences of limit
/// functions live here too.
class PiecewisePoly {
public:
    /// The zero function on a single piece.
    PiecewisePoly();
    PiecewisePoly(std::vector<Rational> breakpoints, std::vector<Polynomial> pieces);

    static PiecewisePoly constant(const Rational& c);
    /// Step function with values[j] on [b_j, b_{j+1}).
    static PiecewisePoly step(std::vector<Rational> breakpoints, std::span<const Rational> values);

    const std::vector<Rational>& breakpoints() const noexcept { return breakpoints_; }
    const std::vector<Polynomial>& pieces() const noexcept { return pieces_; }
    std::size_t piece_count() const noexcept { return pieces_.size(); }
    const Rational& left(std::size_t j) const { return breakpoints_[j]; }
    const Rational& right(std::size_t j) const { return breakpoints_[j + 1]; }
    int max_degree() const noexcept;
    bool is_step() const noexcept { return max_degree() <= 0; }

    /// Index of the piece owning x (x in [0,1]).
    std::size_t piece_index(const Rational& x) const;
    Rational operator()(const Rational& x) const;

    /// Same function on the union of its grid and `extra` (points in (0,1)).
    PiecewisePoly refined(std::span<const Rational> extra) const;
    /// Adjacent pieces with identical polynomials merged.
    PiecewisePoly canonical() const;

    Rational integral() const;
    Rational integral(const Rational& a, const Rational& b) const;
    /// F(x) = int_0^x f: continuous, same grid, F(0) = 0.
    PiecewisePoly antiderivative() const;

    PiecewisePoly operator-() const;
    friend PiecewisePoly operator+(const PiecewisePoly& a, const PiecewisePoly& b);
    friend PiecewisePoly operator-(const PiecewisePoly& a, const PiecewisePoly& b);
    friend PiecewisePoly operator*(const PiecewisePoly& a, const PiecewisePoly& b);
    friend PiecewisePoly operator*(const Rational& c, const PiecewisePoly& a);

    /// Structural equality (same grid, same pieces). Use canonical() first
    /// for function equality.
    friend bool operator==(const PiecewisePoly&, const PiecewisePoly&) = default;

private:
    std::vector<Rational> breakpoints_;
    std::vector<Polynomial> pieces_;
};

/// Merged, sorted breakpoint grid of two functions.
std::vector<Rational> common_grid(const PiecewisePoly& a, const PiecewisePoly& b);

/// A word limit f: [0,1] -> [0,1] in piecewise polynomial form. Construction
/// verifies that every piece stays inside [0,1] on its interval.
class LimitFn {
public:
    LimitFn() : f_(PiecewisePoly::constant(0)) {}
    explicit LimitFn(PiecewisePoly f);

    static LimitFn constant(const Rational& c) { return LimitFn(PiecewisePoly::constant(c)); }
    /// Indicator of [a,b) (b = 1 includes 1), as a step function.
    static LimitFn indicator(const Rational& a, const Rational& b);
    static LimitFn step(std::vector<Rational> breakpoints, std::span<const Rational> values) {
        return LimitFn(PiecewisePoly::step(std::move(breakpoints), values));
    }

    const PiecewisePoly& poly() const noexcept { return f_; }
    Rational operator()(const Rational& x) const { return f_(x); }

    /// f^1 = f and f^0 = 1 - f.
    PiecewisePoly component(std::uint8_t letter) const;
    LimitFn complement() const;

    friend bool operator==(const LimitFn&, const LimitFn&) = default;

private:
    PiecewisePoly f_;
};

/// Per-letter limit (f^{a_1}, ..., f^{a_k}) on a shared grid with
/// sum_a f^a = 1 identically.
class LimitVector {
public:
    LimitVector(Alphabet alphabet, std::vector<PiecewisePoly> components);
    /// Binary limit viewed as (1 - f, f).
    explicit LimitVector(const LimitFn& f);

    /// Every component constant; `weights` must sum to 1.
    static LimitVector constant(Alphabet alphabet, std::span<const Rational> weights);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    const std::vector<PiecewisePoly>& components() const noexcept { return components_; }
    const PiecewisePoly& component(std::uint8_t letter) const;
    const std::vector<Rational>& breakpoints() const noexcept { return components_.front().breakpoints(); }

private:
    Alphabet alphabet_;
    std::vector<PiecewisePoly> components_;
};

}  // namespace seqlimit
