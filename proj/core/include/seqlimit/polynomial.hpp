#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "seqlimit/rational.hpp"

namespace seqlimit {

/// A real number produced by root isolation: `value` is exact when `exact`
/// is set, otherwise a rational within kRootTolerance of the true root.
struct RealPoint {
    Rational value;
    bool exact = true;
};

/// Width to which irrational roots are isolated (2^-64).
extern const Rational kRootTolerance;

/// Univariate polynomial with rational coefficients, ascending degree.
/// Stored trimmed: the zero polynomial has no coefficients.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);
    Polynomial(std::initializer_list<Rational> coeffs) : Polynomial(std::vector<Rational>(coeffs)) {}

    static Polynomial constant(const Rational& c) { return Polynomial({c}); }
    /// The monomial x.
    static Polynomial x() { return Polynomial({Rational(0), Rational(1)}); }

    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

    Rational operator()(const Rational& x) const;
    double operator()(double x) const;

    Polynomial derivative() const;
    /// Antiderivative vanishing at 0.
    Polynomial antiderivative() const;
    /// Exact integral over [a,b].
    Rational integral(const Rational& a, const Rational& b) const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Rational& c);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial operator-() const;
    Polynomial pow(unsigned e) const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    std::string str() const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

/// Points in the open interval (a,b) that include every point where p
/// changes sign, sorted ascending. May also include exact zeros of p that
/// are not sign changes. Rational roots are returned exactly; irrational
/// ones are isolated to kRootTolerance.
std::vector<RealPoint> sign_change_points(const Polynomial& p, const Rational& a, const Rational& b);

/// Minimum and maximum of p over [a,b] (evaluated at the endpoints and the
/// critical points). Values at inexact critical points carry exact=false.
struct PolyRange {
    RealPoint min_value;
    RealPoint max_value;
};
PolyRange range_on(const Polynomial& p, const Rational& a, const Rational& b);

}  // namespace seqlimit
