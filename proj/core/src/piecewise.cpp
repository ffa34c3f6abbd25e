#include "seqlimit/piecewise.hpp"

#include <algorithm>

#include "seqlimit/error.hpp"

namespace seqlimit {

namespace {

void validate_grid(const std::vector<Rational>& b, std::size_t pieces) {
    if (b.size() < 2) throw DomainError("a piecewise function needs at least two breakpoints");
    if (b.size() != pieces + 1)
        throw DomainError("breakpoint count " + std::to_string(b.size()) + " does not match piece count " +
                          std::to_string(pieces) + " + 1");
    if (sgn(b.front()) != 0 || b.back() != 1) throw DomainError("breakpoints must start at 0 and end at 1");
    for (std::size_t i = 1; i < b.size(); ++i)
        if (!(b[i - 1] < b[i]))
            throw DomainError("breakpoints must be strictly increasing (zero-length piece at " + to_string(b[i]) + ")");
}

std::vector<Rational> merge_grids(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Pieces of f re-expressed on a finer grid that contains f's breakpoints.
std::vector<Polynomial> pieces_on(const PiecewisePoly& f, const std::vector<Rational>& grid) {
    std::vector<Polynomial> out;
    out.reserve(grid.size() - 1);
    std::size_t j = 0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        while (!(grid[i] < f.right(j))) ++j;
        out.push_back(f.pieces()[j]);
    }
    return out;
}

template <class Op>
PiecewisePoly combine(const PiecewisePoly& a, const PiecewisePoly& b, Op op) {
    std::vector<Rational> grid = merge_grids(a.breakpoints(), b.breakpoints());
    auto pa = pieces_on(a, grid);
    auto pb = pieces_on(b, grid);
    std::vector<Polynomial> out;
    out.reserve(pa.size());
    for (std::size_t i = 0; i < pa.size(); ++i) out.push_back(op(pa[i], pb[i]));
    return PiecewisePoly(std::move(grid), std::move(out));
}

}  // namespace

PiecewisePoly::PiecewisePoly() : breakpoints_{Rational(0), Rational(1)}, pieces_{Polynomial()} {}

PiecewisePoly::PiecewisePoly(std::vector<Rational> breakpoints, std::vector<Polynomial> pieces)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
    for (auto& b : breakpoints_) b.canonicalize();
    validate_grid(breakpoints_, pieces_.size());
}

PiecewisePoly PiecewisePoly::constant(const Rational& c) {
    return PiecewisePoly({Rational(0), Rational(1)}, {Polynomial::constant(c)});
}

PiecewisePoly PiecewisePoly::step(std::vector<Rational> breakpoints, std::span<const Rational> values) {
    std::vector<Polynomial> pieces;
    pieces.reserve(values.size());
    for (const auto& v : values) pieces.push_back(Polynomial::constant(v));
    return PiecewisePoly(std::move(breakpoints), std::move(pieces));
}

int PiecewisePoly::max_degree() const noexcept {
    int d = -1;
    for (const auto& p : pieces_) d = std::max(d, p.degree());
    return d;
}

std::size_t PiecewisePoly::piece_index(const Rational& x) const {
    if (sgn(x) < 0 || x > 1) throw DomainError("point " + to_string(x) + " outside [0,1]");
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    std::size_t j = static_cast<std::size_t>(it - breakpoints_.begin());
    if (j == 0) return 0;
    return std::min(j - 1, pieces_.size() - 1);
}

Rational PiecewisePoly::operator()(const Rational& x) const { return pieces_[piece_index(x)](x); }

PiecewisePoly PiecewisePoly::refined(std::span<const Rational> extra) const {
    std::vector<Rational> pts;
    for (const auto& e : extra) {
        if (!(sgn(e) > 0 && e < 1)) continue;
        pts.push_back(e);
    }
    std::sort(pts.begin(), pts.end());
    std::vector<Rational> grid = merge_grids(breakpoints_, pts);
    auto pieces = pieces_on(*this, grid);
    return PiecewisePoly(std::move(grid), std::move(pieces));
}

PiecewisePoly PiecewisePoly::canonical() const {
    std::vector<Rational> grid{breakpoints_.front()};
    std::vector<Polynomial> pieces;
    for (std::size_t j = 0; j < pieces_.size(); ++j) {
        if (!pieces.empty() && pieces.back() == pieces_[j]) {
            grid.back() = breakpoints_[j + 1];
            continue;
        }
        pieces.push_back(pieces_[j]);
        grid.push_back(breakpoints_[j + 1]);
    }
    return PiecewisePoly(std::move(grid), std::move(pieces));
}

Rational PiecewisePoly::integral() const {
    Rational total(0);
    for (std::size_t j = 0; j < pieces_.size(); ++j) total += pieces_[j].integral(left(j), right(j));
    return total;
}

Rational PiecewisePoly::integral(const Rational& a, const Rational& b) const {
    if (b < a) return -integral(b, a);
    if (sgn(a) < 0 || b > 1) throw DomainError("integration bounds outside [0,1]");
    Rational total(0);
    for (std::size_t j = 0; j < pieces_.size(); ++j) {
        const Rational lo = std::max(a, left(j));
        const Rational hi = std::min(b, right(j));
        if (lo < hi) total += pieces_[j].integral(lo, hi);
    }
    return total;
}

PiecewisePoly PiecewisePoly::antiderivative() const {
    std::vector<Polynomial> out;
    out.reserve(pieces_.size());
    Rational offset(0);
    for (std::size_t j = 0; j < pieces_.size(); ++j) {
        Polynomial a = pieces_[j].antiderivative();
        a += Polynomial::constant(offset - a(left(j)));
        offset = a(right(j));
        out.push_back(std::move(a));
    }
    return PiecewisePoly(breakpoints_, std::move(out));
}

PiecewisePoly PiecewisePoly::operator-() const {
    PiecewisePoly r = *this;
    for (auto& p : r.pieces_) p = -p;
    return r;
}

PiecewisePoly operator+(const PiecewisePoly& a, const PiecewisePoly& b) {
    return combine(a, b, [](const Polynomial& x, const Polynomial& y) { return x + y; });
}

PiecewisePoly operator-(const PiecewisePoly& a, const PiecewisePoly& b) {
    return combine(a, b, [](const Polynomial& x, const Polynomial& y) { return x - y; });
}

PiecewisePoly operator*(const PiecewisePoly& a, const PiecewisePoly& b) {
    return combine(a, b, [](const Polynomial& x, const Polynomial& y) { return x * y; });
}

PiecewisePoly operator*(const Rational& c, const PiecewisePoly& a) {
    PiecewisePoly r = a;
    for (auto& p : r.pieces_) p *= c;
    return r;
}

std::vector<Rational> common_grid(const PiecewisePoly& a, const PiecewisePoly& b) {
    return merge_grids(a.breakpoints(), b.breakpoints());
}

LimitFn::LimitFn(PiecewisePoly f) : f_(std::move(f)) {
    for (std::size_t j = 0; j < f_.piece_count(); ++j) {
        const auto range = range_on(f_.pieces()[j], f_.left(j), f_.right(j));
        const Rational slack = range.min_value.exact && range.max_value.exact ? Rational(0) : kRootTolerance;
        if (range.min_value.value < -slack || range.max_value.value > 1 + slack)
            throw DomainError("limit function leaves [0,1] on piece [" + to_string(f_.left(j)) + "," +
                              to_string(f_.right(j)) + "): values span [" + to_string(range.min_value.value) +
                              "," + to_string(range.max_value.value) + "]");
    }
}

LimitFn LimitFn::indicator(const Rational& a, const Rational& b) {
    if (sgn(a) < 0 || b > 1 || !(a < b)) throw DomainError("indicator needs 0 <= a < b <= 1");
    std::vector<Rational> grid{Rational(0)};
    std::vector<Rational> values;
    if (sgn(a) > 0) {
        grid.push_back(a);
        values.emplace_back(0);
    }
    values.emplace_back(1);
    grid.push_back(b);
    if (b < 1) {
        grid.emplace_back(1);
        values.emplace_back(0);
    }
    return step(std::move(grid), values);
}

PiecewisePoly LimitFn::component(std::uint8_t letter) const {
    if (letter == 1) return f_;
    if (letter == 0) return PiecewisePoly::constant(1) - f_;
    throw DomainError("binary limit function has no letter " + std::to_string(letter));
}

LimitFn LimitFn::complement() const { return LimitFn(component(0)); }

LimitVector::LimitVector(Alphabet alphabet, std::vector<PiecewisePoly> components)
    : alphabet_(std::move(alphabet)) {
    if (components.size() != alphabet_.size())
        throw DomainError("limit vector needs one component per letter (" + std::to_string(alphabet_.size()) +
                          "), got " + std::to_string(components.size()));
    std::vector<Rational> grid = components.front().breakpoints();
    for (const auto& c : components) grid = merge_grids(grid, c.breakpoints());
    PiecewisePoly sum = PiecewisePoly::constant(0);
    for (auto& c : components) {
        c = c.refined(grid);
        LimitFn check(c);
        sum = sum + c;
    }
    for (const auto& p : sum.pieces())
        if (!(p == Polynomial::constant(1)))
            throw DomainError("limit vector components do not sum to 1 (piece sum " + p.str() + ")");
    components_ = std::move(components);
}

LimitVector::LimitVector(const LimitFn& f)
    : LimitVector(Alphabet::binary(), {f.component(0), f.component(1)}) {}

LimitVector LimitVector::constant(Alphabet alphabet, std::span<const Rational> weights) {
    std::vector<PiecewisePoly> comps;
    for (const auto& w : weights) comps.push_back(PiecewisePoly::constant(w));
    return LimitVector(std::move(alphabet), std::move(comps));
}

const PiecewisePoly& LimitVector::component(std::uint8_t letter) const {
    if (letter >= components_.size())
        throw DomainError("letter " + std::to_string(letter) + " absent from the limit vector");
    return components_[letter];
}

}  // namespace seqlimit
