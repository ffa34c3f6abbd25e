#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "seqlimit/rational.hpp"
#include "seqlimit/word.hpp"

namespace seqlimit {

/// 1-based inclusive interval [first, last]; empty when first == last + 1.
struct Interval {
    std::size_t first = 1;
    std::size_t last = 0;

    std::size_t length() const noexcept { return last + 1 - first; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

struct Discrepancy {
    Rational value;  // sup_I |sum_{i in I} [w_i = letter] - d|I||, not divided by n
    Interval witness;
};

/// |sum_{i in I} [w_i = letter] - d|I||.
Rational interval_deviation(const Word& w, const Rational& d, const Interval& interval, std::uint8_t letter = 1);

/// O(n) prefix-sum method: the sup over intervals equals max_j - min_j of
/// S_j - d*j. d must lie in [0,1].
Discrepancy discrepancy(const Word& w, const Rational& d, std::uint8_t letter = 1);

struct UniformityReport {
    Rational density;        // minimizing d
    Rational discrepancy;    // least eps with w (d,eps)-uniform: raw / n
    Rational raw;            // un-normalized discrepancy at `density`
    Interval witness;
    Rational reference_density;      // ||w||_1 / n
    Rational reference_discrepancy;  // normalized discrepancy at the reference density
};

/// Minimizes discrepancy(w,d)/n over d in [0,1] exactly. The objective is
/// convex piecewise linear with kinks at slopes of the convex hull edges of
/// the points (j, S_j); a flat minimum resolves to the point nearest
/// ||w||_1 / n.
UniformityReport best_uniformity(const Word& w, std::uint8_t letter = 1);

/// |binom(w,u) - d^{|u|_1}(1-d)^{l-|u|_1} binom(n,l)| / n^l for every binary u
/// of length l.
std::map<Word, Rational> counting_deviation(const Word& w, const Rational& d, std::size_t len);

/// counting_deviation at length 3; requires a binary word with n >= 3.
std::map<Word, Rational> minimizer_residuals(const Word& w, const Rational& d);

/// (1/n) sum_j w_j exp(2 pi i k j / n), Neumaier-compensated double sums.
std::complex<double> exponential_sum(const Word& w, long long k);

/// Piecewise linear function on R/Z given by its values at breakpoints
/// 0 = x_0 < ... < x_m = 1, with value(0) == value(1).
class CircleFunction {
public:
    CircleFunction(std::vector<Rational> xs, std::vector<Rational> values);

    /// Distance to the nearest integer.
    static CircleFunction distance_to_integer();
    static CircleFunction constant(const Rational& c);

    Rational operator()(const Rational& x) const;  // x taken mod 1
    Rational integral() const;
    Rational lipschitz() const;

    const std::vector<Rational>& xs() const noexcept { return xs_; }
    const std::vector<Rational>& values() const noexcept { return values_; }

private:
    std::vector<Rational> xs_;
    std::vector<Rational> values_;
};

/// |(1/n) sum_j w_j phi(j/n) - d int phi| with d = ||w||_1 / n; exact.
Rational equidistribution_error(const Word& w, const CircleFunction& phi);

/// Number of induced u-walks in the Cayley graph of w: 2n * binom(w,u).
BigInt cayley_walk_count(const Word& w, const Word& u);

struct InverseCsOutcome {
    bool hypothesis = false;
    bool conclusion = false;
};

/// Hypothesis: <g,h>^2 >= |g|^2|h|^2 - eps n^3 |h|^2. Conclusion: at most
/// eps^{1/3} n indices have |g_i - (<g,h>/<h,h>) h_i| > eps^{1/3} n.
InverseCsOutcome inverse_cs_check(std::span<const double> g, std::span<const double> h, double eps);

struct QuasirandomnessDiagnostics {
    UniformityReport uniformity;
    Rational residual_density;               // d used for the residuals
    std::map<Word, Rational> residuals;      // length-3 counting deviations
    std::vector<std::complex<double>> exponential_sums;  // k = 1..K
    std::map<Word, BigInt> cayley_counts;    // u in {0,1}^3
};

/// All diagnostics for a binary word. Residuals use `d` when given, else
/// ||w||_1 / n. Length-3 entries are omitted when n < 3.
QuasirandomnessDiagnostics quasirandomness_report(const Word& w, std::size_t kmax,
                                                  std::optional<Rational> d = std::nullopt,
                                                  unsigned threads = 0);

}  // namespace seqlimit
