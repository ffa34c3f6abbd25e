#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seqlimit/piecewise.hpp"
#include "seqlimit/random.hpp"
#include "seqlimit/word.hpp"

namespace seqlimit {

/// Double-precision copy of a piecewise polynomial for hot sampling loops.
class FastEval {
public:
    explicit FastEval(const PiecewisePoly& f);
    double operator()(double x) const;

private:
    std::vector<double> breakpoints_;
    std::vector<std::vector<double>> coeffs_;
};

struct RandomLetter {
    double x = 0.0;
    std::uint8_t y = 0;
};

/// X ~ U[0,1), then Y ~ Bernoulli(f(X)). Two draws from the stream.
RandomLetter f_random_letter(const LimitFn& f, SeededStream& stream);

/// Y ~ Bernoulli(int f) first, then X from the conditional density
/// f^Y / P(Y) by inverse transform on its exact antiderivative.
class MixtureSampler {
public:
    explicit MixtureSampler(const LimitFn& f);
    RandomLetter operator()(SeededStream& stream) const;
    double mass_of_one() const noexcept { return p1_; }

private:
    double p1_;
    FastEval cdf0_;
    FastEval cdf1_;
    double total0_;
    double total1_;
};

/// sub(n,f): n independent f-random letters read in increasing order of X,
/// ties broken by draw index.
Word f_random_word(const LimitFn& f, std::size_t n, SeededStream& stream);
/// k-letter version: Y is the letter a with probability f^a(X).
Word f_random_word(const LimitVector& f, std::size_t n, SeededStream& stream);

struct TailExperiment {
    double empirical = 0.0;  // fraction of trials at or above the threshold
    double bound = 0.0;      // 4n exp(-2a^2 n), the upper bound on that probability
    double slack = 0.0;      // 3 sigma binomial allowance at the bound
    std::size_t exceed = 0;
    std::size_t trials = 0;
    double threshold = 0.0;
    std::uint64_t seed = 0;
    std::string prng;
    std::vector<double> distances;  // per-trial box distance, in trial order

    bool within_bound() const { return empirical <= bound + slack; }
};

/// Samples `trials` words sub(n,f) and measures d_box(f_{sub(n,f)}, f).
/// Threshold 8a, bound 4n exp(-2 a^2 n). Requires a >= 1/n.
TailExperiment tail_experiment_dbox(const LimitFn& f, std::size_t n, double a, std::size_t trials,
                                    std::uint64_t seed, unsigned threads = 0);

struct SubsequenceTail {
    TailExperiment result;
    double ell0 = 0.0;            // configured l_0 (default 300 / eps^2)
    bool below_ell0 = false;      // l < l_0: bound reported but not guaranteed
};

/// u = sub(l,w) per trial, measuring d_box(f_u, f_w) against eps with bound
/// 4 l exp(-eps^2 l / 300).
SubsequenceTail subsequence_tail_experiment(const Word& w, std::size_t len, double eps, std::size_t trials,
                                            std::uint64_t seed, std::optional<double> ell0 = std::nullopt,
                                            unsigned threads = 0);

struct ConvergencePoint {
    std::size_t n = 0;
    double median = 0.0;
    double mean = 0.0;
};

/// Median and mean of d_box(f_{sub(n,f)}, f) over `trials` words per n.
std::vector<ConvergencePoint> convergence_trace(const LimitFn& f, std::span<const std::size_t> ns,
                                                std::size_t trials, std::uint64_t seed, unsigned threads = 0);

/// Pearson statistic for consecutive non-overlapping letter pairs of a
/// binary word against i.i.d. Bernoulli(d); 3 degrees of freedom.
double chi_square_letter_pairs(const Word& w, double d);
inline constexpr double kChiSquare3Df1Percent = 11.344866730144373;

/// sup over x and letter e of |F_a(x,e) - F_b(x,e)| with
/// F(x,e) = P(X <= x, Y = e), from two samples.
double joint_ks_statistic(std::span<const RandomLetter> a, std::span<const RandomLetter> b);

/// Two-sample critical value at level alpha with a Bonferroni split over
/// `parts` one-dimensional comparisons.
double ks_critical_value(std::size_t na, std::size_t nb, double alpha, std::size_t parts);

}  // namespace seqlimit
