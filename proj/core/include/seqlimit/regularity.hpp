#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "seqlimit/piecewise.hpp"
#include "seqlimit/polynomial.hpp"

namespace seqlimit {

/// Partition of [0,1] into intervals 0 = p_0 < p_1 < ... < p_m = 1.
class IntervalPartition {
public:
    IntervalPartition() : points_{Rational(0), Rational(1)} {}
    explicit IntervalPartition(std::vector<Rational> points);

    /// n atoms of equal length.
    static IntervalPartition uniform(std::size_t n);

    const std::vector<Rational>& points() const noexcept { return points_; }
    std::size_t atoms() const noexcept { return points_.size() - 1; }

    /// Partition with the extra points (0 and 1 and duplicates ignored).
    IntervalPartition with_points(std::span<const Rational> extra) const;
    /// Every point of `coarser` is a point of this partition.
    bool refines(const IntervalPartition& coarser) const;

    friend bool operator==(const IntervalPartition&, const IntervalPartition&) = default;

private:
    std::vector<Rational> points_;
};

/// E(f|P): the average of f over each atom, as a step function on P.
PiecewisePoly conditional_expectation(const PiecewisePoly& f, const IntervalPartition& partition);

/// int_0^1 E(f|P)^2.
Rational energy(const PiecewisePoly& f, const IntervalPartition& partition);

struct ViolatingInterval {
    Rational left;
    Rational right;
    RealPoint mass;  // |int_left^right g| = ||g||_box
};

/// The interval maximizing |int_I g| when that maximum exceeds eps.
std::optional<ViolatingInterval> violating_interval(const PiecewisePoly& g, const Rational& eps);

struct RegularityResult {
    IntervalPartition partition;
    RealPoint box_error;               // ||f - E(f|P)||_box at the end
    std::size_t iterations = 0;
    std::vector<Rational> energy_trace;  // energy before each step and at the end
    std::size_t atom_bound = 0;          // |P_0| + 2 ceil(eps^-2)
};

/// Energy-increment refinement: while some interval carries more than eps
/// of f - E(f|P), add its endpoints. Each step must raise the energy by
/// more than eps^2, so at most ceil(eps^-2) steps run; both facts are
/// enforced and raise InvariantViolation if broken.
RegularityResult weak_regularity(const PiecewisePoly& f, const Rational& eps,
                                 const IntervalPartition& initial = IntervalPartition());

}  // namespace seqlimit
