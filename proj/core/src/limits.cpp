#include "seqlimit/limits.hpp"

#include <algorithm>
#include <cmath>

#include "seqlimit/error.hpp"

namespace seqlimit {

namespace {

// Iterated integral I_j(x) = int_0^x c(t) I_{j-1}(t) dt, one polynomial per
// piece of the shared grid.
std::vector<Polynomial> integrate_step(const std::vector<Polynomial>& prev, const std::vector<Polynomial>& comp,
                                       const std::vector<Rational>& grid) {
    std::vector<Polynomial> next;
    next.reserve(prev.size());
    Rational offset(0);
    for (std::size_t k = 0; k < prev.size(); ++k) {
        Polynomial a = (comp[k] * prev[k]).antiderivative();
        a += Polynomial::constant(offset - a(grid[k]));
        offset = a(grid[k + 1]);
        next.push_back(std::move(a));
    }
    return next;
}

Rational value_at_one(const std::vector<Polynomial>& pieces) { return pieces.back()(Rational(1)); }

struct Components {
    std::vector<Rational> grid;
    std::vector<std::vector<Polynomial>> by_letter;
};

Components components_of(const LimitVector& f) {
    Components c{f.breakpoints(), {}};
    for (const auto& comp : f.components()) c.by_letter.push_back(comp.pieces());
    return c;
}

Components components_of(const LimitFn& f) {
    const PiecewisePoly zero = f.component(0);
    Components c{zero.breakpoints(), {}};
    c.by_letter.push_back(zero.pieces());
    c.by_letter.push_back(f.poly().refined(zero.breakpoints()).pieces());
    return c;
}

Rational run_density(const Word& u, const Components& c) {
    if (u.empty()) throw DomainError("t_density requires a non-empty pattern");
    std::vector<Polynomial> current(c.grid.size() - 1, Polynomial::constant(1));
    for (std::uint8_t letter : u.letters()) {
        if (letter >= c.by_letter.size())
            throw DomainError("letter " + std::to_string(letter) + " absent from the limit object");
        current = integrate_step(current, c.by_letter[letter], c.grid);
    }
    return factorial(u.size()) * value_at_one(current);
}

}  // namespace

LimitFn associated_function(const Word& w) {
    if (w.empty()) throw DomainError("associated_function of the empty word");
    if (w.alphabet().size() != 2) throw DomainError("associated_function needs a binary word; use associated_vector");
    const auto n = static_cast<unsigned long>(w.size());
    std::vector<Rational> grid{Rational(0)};
    std::vector<Rational> values{Rational(w[0])};
    for (std::size_t j = 1; j < w.size(); ++j) {
        if (w[j] == w[j - 1]) continue;
        Rational b(static_cast<unsigned long>(j), n);
        b.canonicalize();
        grid.push_back(b);
        values.emplace_back(w[j]);
    }
    grid.emplace_back(1);
    return LimitFn::step(std::move(grid), values);
}

LimitVector associated_vector(const Word& w) {
    if (w.empty()) throw DomainError("associated_vector of the empty word");
    const auto n = static_cast<unsigned long>(w.size());
    std::vector<Rational> grid;
    for (std::size_t j = 0; j <= w.size(); ++j) {
        Rational b(static_cast<unsigned long>(j), n);
        b.canonicalize();
        grid.push_back(b);
    }
    std::vector<PiecewisePoly> comps;
    for (std::size_t a = 0; a < w.alphabet().size(); ++a) {
        std::vector<Rational> values;
        for (std::size_t j = 0; j < w.size(); ++j) values.emplace_back(w[j] == a ? 1 : 0);
        comps.push_back(PiecewisePoly::step(grid, values).canonical());
    }
    return LimitVector(w.alphabet(), std::move(comps));
}

Rational t_density(const Word& u, const LimitFn& f) {
    if (u.alphabet().size() != 2) throw DomainError("t_density on a binary limit needs a binary pattern");
    return run_density(u, components_of(f));
}

Rational t_density(const Word& u, const LimitVector& f) {
    if (!(u.alphabet() == f.alphabet())) throw DomainError("pattern alphabet differs from the limit's alphabet");
    return run_density(u, components_of(f));
}

DensityMap limit_density_table(const LimitVector& f, std::size_t len, std::size_t cap) {
    if (len == 0) throw DomainError("limit_density_table requires a positive pattern length");
    const std::size_t k = f.alphabet().size();
    BigInt table_size;
    mpz_ui_pow_ui(table_size.get_mpz_t(), k, len);
    if (table_size > BigInt(static_cast<unsigned long>(cap)))
        throw CapExceeded("density table size " + to_string(table_size), cap);

    const Components c = components_of(f);
    const BigInt scale = factorial(len);
    DensityMap map{f.alphabet(), 0, len, {}};
    std::vector<std::uint8_t> prefix;
    // Depth-first over patterns; each level holds the iterated integral of
    // the current prefix.
    auto visit = [&](auto&& self, const std::vector<Polynomial>& current) -> void {
        if (prefix.size() == len) {
            Rational t = scale * value_at_one(current);
            map.entries.emplace(Word(f.alphabet(), prefix), std::move(t));
            return;
        }
        for (std::size_t a = 0; a < k; ++a) {
            prefix.push_back(static_cast<std::uint8_t>(a));
            self(self, integrate_step(current, c.by_letter[a], c.grid));
            prefix.pop_back();
        }
    };
    visit(visit, std::vector<Polynomial>(c.grid.size() - 1, Polynomial::constant(1)));
    return map;
}

PrefixExtent prefix_extent(const PiecewisePoly& h) {
    const PiecewisePoly H = h.antiderivative();
    PrefixExtent e{{Rational(0), true}, {Rational(0), true}, Rational(0), Rational(0)};
    auto consider = [&](const RealPoint& x, const Rational& v) {
        if (v < e.min_value) {
            e.min_value = v;
            e.argmin = x;
        }
        if (v > e.max_value) {
            e.max_value = v;
            e.argmax = x;
        }
    };
    for (std::size_t j = 0; j < h.piece_count(); ++j) {
        const Polynomial& piece = H.pieces()[j];
        for (const auto& r : sign_change_points(h.pieces()[j], h.left(j), h.right(j))) consider(r, piece(r.value));
        consider({h.right(j), true}, piece(h.right(j)));
    }
    return e;
}

RealPoint box_norm(const PiecewisePoly& h) {
    const PrefixExtent e = prefix_extent(h);
    return {e.max_value - e.min_value, e.argmin.exact && e.argmax.exact};
}

RealPoint d_box(const PiecewisePoly& f, const PiecewisePoly& g) { return box_norm(f - g); }

RealPoint d_box(const LimitFn& f, const LimitFn& g) { return d_box(f.poly(), g.poly()); }

RealPoint prefix_sup_dist(const PiecewisePoly& f, const PiecewisePoly& g) {
    const PrefixExtent e = prefix_extent(f - g);
    const Rational sup = std::max(e.max_value, Rational(-e.min_value));
    const Rational box = e.max_value - e.min_value;
    if (sup > box || box > 2 * sup)
        throw InvariantViolation("prefix distance sandwich failed: sup " + to_string(sup) + ", box " + to_string(box));
    const bool exact = (e.max_value >= -e.min_value ? e.argmax.exact : e.argmin.exact);
    return {sup, exact};
}

RealPoint d1_fn(const PiecewisePoly& f, const PiecewisePoly& g) {
    const PiecewisePoly h = f - g;
    RealPoint total{Rational(0), true};
    for (std::size_t j = 0; j < h.piece_count(); ++j) {
        const Polynomial& p = h.pieces()[j];
        if (p.is_zero()) continue;
        const Polynomial anti = p.antiderivative();
        Rational lo = h.left(j);
        auto roots = sign_change_points(p, h.left(j), h.right(j));
        roots.push_back({h.right(j), true});
        for (const auto& r : roots) {
            total.value += abs(anti(r.value) - anti(lo));
            total.exact = total.exact && r.exact;
            lo = r.value;
        }
    }
    return total;
}

namespace {

template <class T>
T bernstein_weight(unsigned t, unsigned i, const T& x) {
    T w;
    if constexpr (std::is_same_v<T, Rational>)
        w = T(binomial(t, i));
    else
        w = binomial(t, i).get_d();
    for (unsigned a = 0; a < i; ++a) w *= x;
    for (unsigned a = i; a < t; ++a) w *= (T(1) - x);
    return w;
}

template <class T>
T bernstein_generic(std::span<const T> values, unsigned dims, unsigned t, std::span<const T> x) {
    if (dims == 0 || dims > 2) throw DomainError("bernstein_eval supports dimensions 1 and 2 only");
    if (t < 1) throw DomainError("bernstein_eval needs t >= 1");
    if (x.size() != dims) throw DomainError("bernstein_eval point has the wrong dimension");
    const std::size_t side = t + 1;
    const std::size_t expected = dims == 1 ? side : side * side;
    if (values.size() != expected)
        throw DomainError("bernstein_eval expects " + std::to_string(expected) + " grid values");
    for (const auto& xi : x)
        if (xi < T(0) || xi > T(1)) throw DomainError("bernstein_eval point outside the unit cube");

    std::vector<T> w0(side), w1;
    for (unsigned i = 0; i <= t; ++i) w0[i] = bernstein_weight(t, i, x[0]);
    if (dims == 1) {
        T acc(0);
        for (unsigned i = 0; i <= t; ++i) acc += values[i] * w0[i];
        return acc;
    }
    w1.resize(side);
    for (unsigned i = 0; i <= t; ++i) w1[i] = bernstein_weight(t, i, x[1]);
    T acc(0);
    for (unsigned i = 0; i <= t; ++i)
        for (unsigned j = 0; j <= t; ++j) acc += values[i * side + j] * w0[i] * w1[j];
    return acc;
}

}  // namespace

Rational bernstein_eval(std::span<const Rational> values, unsigned dims, unsigned t, std::span<const Rational> x) {
    return bernstein_generic<Rational>(values, dims, t, x);
}

double bernstein_eval(std::span<const double> values, unsigned dims, unsigned t, std::span<const double> x) {
    return bernstein_generic<double>(values, dims, t, x);
}

}  // namespace seqlimit
