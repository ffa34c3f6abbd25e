#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "seqlimit/counting.hpp"
#include "seqlimit/piecewise.hpp"
#include "seqlimit/polynomial.hpp"
#include "seqlimit/word.hpp"

namespace seqlimit {

/// Step function f_w(x) = w_{ceil(nx)}: value w_j on [(j-1)/n, j/n).
/// Binary words only; see associated_vector for larger alphabets.
LimitFn associated_function(const Word& w);

/// Per-letter indicator step functions of w on the grid j/n.
LimitVector associated_vector(const Word& w);

/// t(u,f) = l! * integral over x_1 < ... < x_l of prod f^{u_i}(x_i), exact.
Rational t_density(const Word& u, const LimitFn& f);
Rational t_density(const Word& u, const LimitVector& f);

/// t(u,F) for every u in Sigma^len, sharing integration work across common
/// prefixes. Values sum to exactly 1.
DensityMap limit_density_table(const LimitVector& f, std::size_t len,
                               std::size_t cap = kDefaultDensityTableCap);

/// F(x) = int_0^x f.
inline PiecewisePoly cdf(const PiecewisePoly& f) { return f.antiderivative(); }
inline PiecewisePoly cdf(const LimitFn& f) { return f.poly().antiderivative(); }

/// Location and value of the extrema of H(x) = int_0^x h over [0,1].
struct PrefixExtent {
    RealPoint argmin;
    RealPoint argmax;
    Rational min_value;  // <= 0, since H(0) = 0
    Rational max_value;  // >= 0
};
PrefixExtent prefix_extent(const PiecewisePoly& h);

/// Interval norm sup_I |int_I h| = max H - min H. `exact` is false only when
/// an extremum sits at an irrational point located to kRootTolerance.
RealPoint box_norm(const PiecewisePoly& h);

RealPoint d_box(const LimitFn& f, const LimitFn& g);
RealPoint d_box(const PiecewisePoly& f, const PiecewisePoly& g);

/// sup_b |int_0^b (f - g)|. Checks sup <= d_box <= 2 sup on every call.
RealPoint prefix_sup_dist(const PiecewisePoly& f, const PiecewisePoly& g);
inline RealPoint prefix_sup_dist(const LimitFn& f, const LimitFn& g) { return prefix_sup_dist(f.poly(), g.poly()); }

/// int |f - g|, split at the sign changes of each piece of f - g.
RealPoint d1_fn(const PiecewisePoly& f, const PiecewisePoly& g);
inline RealPoint d1_fn(const LimitFn& f, const LimitFn& g) { return d1_fn(f.poly(), g.poly()); }

/// Bernstein polynomial B_{t,J}(x) for J sampled on {0,...,t}^dims, dims in
/// {1,2}. `values` is row-major with the first coordinate slowest.
Rational bernstein_eval(std::span<const Rational> values, unsigned dims, unsigned t, std::span<const Rational> x);
double bernstein_eval(std::span<const double> values, unsigned dims, unsigned t, std::span<const double> x);

}  // namespace seqlimit
