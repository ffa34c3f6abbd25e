#include "seqlimit/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace seqlimit {

const Rational kRootTolerance = Rational(1, BigInt(1) << 64);

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
    while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

double Polynomial::operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
    return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
    if (coeffs_.empty()) return {};
    std::vector<Rational> a(coeffs_.size() + 1);
    a[0] = 0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        a[i + 1] = coeffs_[i] / static_cast<unsigned long>(i + 1);
    }
    return Polynomial(std::move(a));
}

Rational Polynomial::integral(const Rational& a, const Rational& b) const {
    const Polynomial anti = antiderivative();
    return anti(b) - anti(a);
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (sgn(c) == 0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& x : coeffs_) x *= c;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (sgn(a.coeffs_[i]) == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& x : r.coeffs_) x = -x;
    return r;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial result = Polynomial::constant(1);
    Polynomial base = *this;
    while (e > 0) {
        if (e & 1U) result = result * base;
        e >>= 1U;
        if (e > 0) base = base * base;
    }
    return result;
}

std::string Polynomial::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (sgn(coeffs_[i]) == 0) continue;
        if (!first) os << " + ";
        os << to_string(coeffs_[i]);
        if (i == 1) os << "*x";
        if (i > 1) os << "*x^" << i;
        first = false;
    }
    return os.str();
}

namespace {

// Absolute value of the leading coefficient after scaling p to primitive
// integer coefficients. Any rational root p/q in lowest terms has q | lead.
BigInt integer_leading_coefficient(const Polynomial& p) {
    BigInt den_lcm(1);
    for (const auto& c : p.coeffs()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    BigInt content(0);
    for (const auto& c : p.coeffs()) {
        BigInt scaled = c.get_num() * (den_lcm / c.get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), scaled.get_mpz_t());
    }
    const auto& lead = p.coeffs().back();
    BigInt lead_int = lead.get_num() * (den_lcm / lead.get_den()) / content;
    return abs(lead_int);
}

// Root of a polynomial with a strict sign change on (lo,hi).
RealPoint refine_root(const Polynomial& p, Rational lo, Rational hi) {
    const int sign_lo = sgn(p(lo));
    const BigInt lead = integer_leading_coefficient(p);
    const bool try_exact = mpz_sizeinbase(lead.get_mpz_t(), 2) <= 2000;

    Rational width_target = kRootTolerance;
    if (try_exact) {
        Rational legendre(1, 4 * lead * lead);
        if (legendre < width_target) width_target = legendre;
    }
    while (hi - lo > width_target) {
        Rational mid = (lo + hi) / 2;
        const int s = sgn(p(mid));
        if (s == 0) return {mid, true};
        if (s == sign_lo)
            lo = mid;
        else
            hi = mid;
    }
    Rational mid = (lo + hi) / 2;
    if (try_exact) {
        // A rational root r = a/q has q <= lead and |mid - r| < 1/(2q^2),
        // so r appears among the continued-fraction convergents of mid.
        BigInt h_prev(1), h_prev2(0), k_prev(0), k_prev2(1);
        BigInt num = mid.get_num();
        BigInt den = mid.get_den();
        while (den != 0) {
            BigInt a;
            mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            BigInt h = a * h_prev + h_prev2;
            BigInt k = a * k_prev + k_prev2;
            if (k > lead) break;
            Rational candidate(h, k);
            candidate.canonicalize();
            if (candidate > lo && candidate < hi && sgn(p(candidate)) == 0) return {candidate, true};
            h_prev2 = h_prev;
            h_prev = h;
            k_prev2 = k_prev;
            k_prev = k;
            BigInt rem = num - a * den;
            num = den;
            den = rem;
        }
    }
    return {mid, false};
}

}  // namespace

std::vector<RealPoint> sign_change_points(const Polynomial& p, const Rational& a, const Rational& b) {
    std::vector<RealPoint> out;
    if (p.degree() <= 0 || !(a < b)) return out;
    if (p.degree() == 1) {
        Rational r = -p.coeff(0) / p.coeff(1);
        if (r > a && r < b) out.push_back({r, true});
        return out;
    }
    std::vector<RealPoint> grid;
    grid.push_back({a, true});
    for (auto& c : sign_change_points(p.derivative(), a, b)) grid.push_back(std::move(c));
    grid.push_back({b, true});

    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const Rational& lo = grid[i].value;
        const Rational& hi = grid[i + 1].value;
        const Rational v_lo = p(lo);
        const Rational v_hi = p(hi);
        if (i > 0 && sgn(v_lo) == 0) out.push_back(grid[i]);
        if (sgn(v_lo) * sgn(v_hi) < 0) out.push_back(refine_root(p, lo, hi));
    }
    std::sort(out.begin(), out.end(), [](const RealPoint& x, const RealPoint& y) { return x.value < y.value; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const RealPoint& x, const RealPoint& y) { return x.value == y.value; }),
              out.end());
    return out;
}

PolyRange range_on(const Polynomial& p, const Rational& a, const Rational& b) {
    RealPoint lo{p(a), true};
    RealPoint hi = lo;
    auto consider = [&](const RealPoint& x) {
        const Rational v = p(x.value);
        if (v < lo.value) lo = {v, x.exact};
        if (v > hi.value) hi = {v, x.exact};
    };
    consider({b, true});
    for (const auto& c : sign_change_points(p.derivative(), a, b)) consider(c);
    return {lo, hi};
}

}  // namespace seqlimit
