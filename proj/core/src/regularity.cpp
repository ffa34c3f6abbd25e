#include "seqlimit/regularity.hpp"

#include <algorithm>

#include "seqlimit/error.hpp"
#include "seqlimit/limits.hpp"

namespace seqlimit {

IntervalPartition::IntervalPartition(std::vector<Rational> points) : points_(std::move(points)) {
    for (auto& p : points_) p.canonicalize();
    if (points_.size() < 2 || sgn(points_.front()) != 0 || points_.back() != 1)
        throw DomainError("partition points must start at 0 and end at 1");
    for (std::size_t i = 1; i < points_.size(); ++i)
        if (!(points_[i - 1] < points_[i]))
            throw DomainError("partition points must be strictly increasing (degenerate atom at " +
                              to_string(points_[i]) + ")");
}

IntervalPartition IntervalPartition::uniform(std::size_t n) {
    if (n == 0) throw DomainError("a partition needs at least one atom");
    std::vector<Rational> pts;
    for (std::size_t i = 0; i <= n; ++i) {
        Rational p(static_cast<unsigned long>(i), static_cast<unsigned long>(n));
        p.canonicalize();
        pts.push_back(p);
    }
    return IntervalPartition(std::move(pts));
}

IntervalPartition IntervalPartition::with_points(std::span<const Rational> extra) const {
    std::vector<Rational> pts = points_;
    for (const auto& e : extra)
        if (sgn(e) > 0 && e < 1) pts.push_back(e);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return IntervalPartition(std::move(pts));
}

bool IntervalPartition::refines(const IntervalPartition& coarser) const {
    return std::includes(points_.begin(), points_.end(), coarser.points_.begin(), coarser.points_.end());
}

PiecewisePoly conditional_expectation(const PiecewisePoly& f, const IntervalPartition& partition) {
    const auto& p = partition.points();
    std::vector<Rational> values;
    values.reserve(partition.atoms());
    for (std::size_t a = 0; a < partition.atoms(); ++a) values.push_back(f.integral(p[a], p[a + 1]) / (p[a + 1] - p[a]));
    return PiecewisePoly::step(p, values);
}

Rational energy(const PiecewisePoly& f, const IntervalPartition& partition) {
    const auto& p = partition.points();
    Rational total(0);
    for (std::size_t a = 0; a < partition.atoms(); ++a) {
        const Rational mass = f.integral(p[a], p[a + 1]);
        total += mass * mass / (p[a + 1] - p[a]);
    }
    return total;
}

std::optional<ViolatingInterval> violating_interval(const PiecewisePoly& g, const Rational& eps) {
    if (sgn(eps) <= 0) throw DomainError("violating_interval needs eps > 0");
    const PrefixExtent e = prefix_extent(g);
    const RealPoint norm{e.max_value - e.min_value, e.argmin.exact && e.argmax.exact};
    if (!(norm.value > eps)) return std::nullopt;
    const bool min_first = e.argmin.value < e.argmax.value;
    return ViolatingInterval{min_first ? e.argmin.value : e.argmax.value, min_first ? e.argmax.value : e.argmin.value,
                             norm};
}

RegularityResult weak_regularity(const PiecewisePoly& f, const Rational& eps, const IntervalPartition& initial) {
    if (sgn(eps) <= 0 || eps > 1) throw DomainError("weak_regularity needs eps in (0,1]");
    const Rational eps_sq = eps * eps;
    const BigInt ceil_inv_sq = -floor(Rational(-1) / eps_sq);

    RegularityResult r;
    r.partition = initial;
    r.atom_bound = initial.atoms() + 2 * static_cast<std::size_t>(ceil_inv_sq.get_ui());
    Rational current = energy(f, r.partition);
    r.energy_trace.push_back(current);
    while (true) {
        const PiecewisePoly residual = f - conditional_expectation(f, r.partition);
        const auto hit = violating_interval(residual, eps);
        if (!hit) {
            r.box_error = box_norm(residual);
            break;
        }
        if (BigInt(static_cast<unsigned long>(r.iterations + 1)) > ceil_inv_sq)
            throw InvariantViolation("weak_regularity exceeded its ceil(eps^-2) iteration guard");
        const Rational endpoints[] = {hit->left, hit->right};
        r.partition = r.partition.with_points(endpoints);
        const Rational next = energy(f, r.partition);
        if (hit->mass.exact && !(next - current > eps_sq))
            throw InvariantViolation("energy rose by " + to_string(Rational(next - current)) + ", not more than eps^2 = " +
                                     to_string(eps_sq));
        current = next;
        r.energy_trace.push_back(current);
        ++r.iterations;
    }
    if (r.partition.atoms() > r.atom_bound)
        throw InvariantViolation("partition has " + std::to_string(r.partition.atoms()) + " atoms, above the bound " +
                                 std::to_string(r.atom_bound));
    return r;
}

}  // namespace seqlimit
