#include "seqlimit/uniformity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "seqlimit/counting.hpp"
#include "seqlimit/error.hpp"
#include "seqlimit/parallel.hpp"

namespace seqlimit {

namespace {

void require_binary(const Word& w, const char* op) {
    if (w.alphabet().size() != 2) throw DomainError(std::string(op) + " needs a binary word");
}

std::vector<std::size_t> prefix_counts(const Word& w, std::uint8_t letter) {
    std::vector<std::size_t> s(w.size() + 1, 0);
    for (std::size_t i = 0; i < w.size(); ++i) s[i + 1] = s[i] + (w[i] == letter ? 1 : 0);
    return s;
}

// Positions of the minimum and maximum of q*(S_j - d*j) = q*S_j - p*j.
template <class Int>
std::pair<std::size_t, std::size_t> extreme_positions(const std::vector<std::size_t>& s, const Int& p, const Int& q) {
    std::size_t imin = 0, imax = 0;
    Int vmin(0), vmax(0);
    for (std::size_t j = 1; j < s.size(); ++j) {
        const Int v = q * Int(static_cast<unsigned long>(s[j])) - p * Int(static_cast<unsigned long>(j));
        if (v < vmin) {
            vmin = v;
            imin = j;
        }
        if (v > vmax) {
            vmax = v;
            imax = j;
        }
    }
    return {imin, imax};
}

Rational slope(std::size_t a, std::size_t sa, std::size_t b, std::size_t sb) {
    Rational r(static_cast<unsigned long>(sb - sa), static_cast<unsigned long>(b - a));
    r.canonicalize();
    return r;
}

// Slopes of the edges of one convex hull chain of (j, s_j); upper when
// `upper` is set.
std::vector<Rational> hull_slopes(const std::vector<std::size_t>& s, bool upper) {
    std::vector<std::size_t> chain;
    auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
        const long long ax = static_cast<long long>(a - o);
        const long long ay = static_cast<long long>(s[a]) - static_cast<long long>(s[o]);
        const long long bx = static_cast<long long>(b - o);
        const long long by = static_cast<long long>(s[b]) - static_cast<long long>(s[o]);
        return static_cast<__int128_t>(ax) * by - static_cast<__int128_t>(ay) * bx;
    };
    for (std::size_t j = 0; j < s.size(); ++j) {
        while (chain.size() >= 2) {
            const auto c = cross(chain[chain.size() - 2], chain.back(), j);
            if ((upper && c >= 0) || (!upper && c <= 0))
                chain.pop_back();
            else
                break;
        }
        chain.push_back(j);
    }
    std::vector<Rational> out;
    for (std::size_t i = 1; i < chain.size(); ++i)
        out.push_back(slope(chain[i - 1], s[chain[i - 1]], chain[i], s[chain[i]]));
    return out;
}

// Neumaier compensated accumulator.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            carry += (sum - t) + x;
        else
            carry += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + carry; }
};

}  // namespace

Rational interval_deviation(const Word& w, const Rational& d, const Interval& interval, std::uint8_t letter) {
    if (interval.first < 1 || interval.last > w.size() || interval.first > interval.last + 1)
        throw DomainError("interval outside [1," + std::to_string(w.size()) + "]");
    std::size_t ones = 0;
    for (std::size_t i = interval.first; i <= interval.last; ++i) ones += w[i - 1] == letter ? 1 : 0;
    return abs(Rational(static_cast<unsigned long>(ones)) - d * static_cast<unsigned long>(interval.length()));
}

Discrepancy discrepancy(const Word& w, const Rational& d, std::uint8_t letter) {
    if (sgn(d) < 0 || d > 1) throw DomainError("density " + to_string(d) + " outside [0,1]");
    const auto s = prefix_counts(w, letter);
    std::pair<std::size_t, std::size_t> ext;
    const bool small = mpz_sizeinbase(d.get_den_mpz_t(), 2) <= 30 && w.size() < (std::size_t{1} << 31);
    if (small) {
        ext = extreme_positions<long long>(s, d.get_num().get_si(), d.get_den().get_si());
    } else {
        ext = extreme_positions<BigInt>(s, d.get_num(), d.get_den());
    }
    const auto [imin, imax] = ext;
    Interval witness{1, 0};
    if (imin < imax) witness = {imin + 1, imax};
    if (imax < imin) witness = {imax + 1, imin};
    auto value_at = [&](std::size_t j) -> Rational {
        return Rational(static_cast<unsigned long>(s[j])) - d * static_cast<unsigned long>(j);
    };
    return {value_at(imax) - value_at(imin), witness};
}

UniformityReport best_uniformity(const Word& w, std::uint8_t letter) {
    if (w.empty()) throw DomainError("best_uniformity of the empty word");
    const auto s = prefix_counts(w, letter);
    const auto n = static_cast<unsigned long>(w.size());

    std::vector<Rational> candidates{Rational(0), Rational(1)};
    for (auto& r : hull_slopes(s, true)) candidates.push_back(std::move(r));
    for (auto& r : hull_slopes(s, false)) candidates.push_back(std::move(r));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::map<std::size_t, Rational> cache;
    auto g = [&](std::size_t i) -> const Rational& {
        auto it = cache.find(i);
        if (it == cache.end()) it = cache.emplace(i, discrepancy(w, candidates[i], letter).value).first;
        return it->second;
    };
    // g is convex along the sorted candidates and affine between neighbours.
    std::size_t lo = 0, hi = candidates.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (g(mid) <= g(mid + 1))
            hi = mid;
        else
            lo = mid + 1;
    }
    std::size_t last = lo;
    while (last + 1 < candidates.size() && g(last + 1) == g(lo)) ++last;

    Rational reference(static_cast<unsigned long>(s.back()), n);
    reference.canonicalize();
    const Rational chosen = std::clamp(reference, candidates[lo], candidates[last]);
    const Discrepancy best = discrepancy(w, chosen, letter);
    const Discrepancy ref = discrepancy(w, reference, letter);

    UniformityReport report;
    report.density = chosen;
    report.raw = best.value;
    report.discrepancy = best.value / n;
    report.witness = best.witness;
    report.reference_density = reference;
    report.reference_discrepancy = ref.value / n;
    return report;
}

std::map<Word, Rational> counting_deviation(const Word& w, const Rational& d, std::size_t len) {
    require_binary(w, "counting_deviation");
    if (len == 0 || len > w.size()) throw DomainError("counting_deviation needs 1 <= l <= n");
    if (sgn(d) < 0 || d > 1) throw DomainError("density " + to_string(d) + " outside [0,1]");
    const BigInt total = binomial(w.size(), len);
    BigInt n_pow;
    mpz_ui_pow_ui(n_pow.get_mpz_t(), w.size(), len);
    std::map<Word, Rational> out;
    for (const Word& u : all_words(w.alphabet(), len)) {
        const auto ones = static_cast<unsigned>(u.count(1));
        const Rational expected = pow(d, ones) * pow(Rational(1) - d, static_cast<unsigned>(len) - ones) * total;
        Rational r = abs(Rational(subsequence_count(w, u)) - expected) / n_pow;
        out.emplace(u, std::move(r));
    }
    return out;
}

std::map<Word, Rational> minimizer_residuals(const Word& w, const Rational& d) {
    if (w.size() < 3) throw DomainError("minimizer_residuals needs n >= 3");
    return counting_deviation(w, d, 3);
}

std::complex<double> exponential_sum(const Word& w, long long k) {
    require_binary(w, "exponential_sum");
    if (k == 0) throw DomainError("exponential_sum needs k != 0");
    if (w.empty()) throw DomainError("exponential_sum of the empty word");
    const auto n = static_cast<unsigned long long>(w.size());
    const unsigned long long kk = static_cast<unsigned long long>(((k % static_cast<long long>(n)) +
                                                                   static_cast<long long>(n)) %
                                                                  static_cast<long long>(n));
    CompensatedSum re, im;
    for (unsigned long long j = 1; j <= n; ++j) {
        if (w[j - 1] != 1) continue;
        const unsigned long long r = static_cast<unsigned long long>(
            (static_cast<__uint128_t>(kk) * j) % n);
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
        re.add(std::cos(angle));
        im.add(std::sin(angle));
    }
    return {re.value() / static_cast<double>(n), im.value() / static_cast<double>(n)};
}

CircleFunction::CircleFunction(std::vector<Rational> xs, std::vector<Rational> values)
    : xs_(std::move(xs)), values_(std::move(values)) {
    if (xs_.size() < 2 || xs_.size() != values_.size())
        throw DomainError("circle function needs matching breakpoint and value lists of length >= 2");
    if (sgn(xs_.front()) != 0 || xs_.back() != 1) throw DomainError("circle function breakpoints must span [0,1]");
    for (std::size_t i = 1; i < xs_.size(); ++i)
        if (!(xs_[i - 1] < xs_[i])) throw DomainError("circle function breakpoints must be strictly increasing");
    if (values_.front() != values_.back())
        throw DomainError("phi(0) != phi(1): not a function on the circle");
}

CircleFunction CircleFunction::distance_to_integer() {
    return CircleFunction({Rational(0), Rational(1, 2), Rational(1)}, {Rational(0), Rational(1, 2), Rational(0)});
}

CircleFunction CircleFunction::constant(const Rational& c) { return CircleFunction({Rational(0), Rational(1)}, {c, c}); }

Rational CircleFunction::operator()(const Rational& x) const {
    Rational t = x - Rational(floor(x));
    auto it = std::upper_bound(xs_.begin(), xs_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - xs_.begin());
    if (i >= xs_.size()) return values_.back();
    const std::size_t a = i - 1;
    return values_[a] + (values_[i] - values_[a]) * (t - xs_[a]) / (xs_[i] - xs_[a]);
}

Rational CircleFunction::integral() const {
    Rational total(0);
    for (std::size_t i = 1; i < xs_.size(); ++i) total += (values_[i] + values_[i - 1]) * (xs_[i] - xs_[i - 1]) / 2;
    return total;
}

Rational CircleFunction::lipschitz() const {
    Rational best(0);
    for (std::size_t i = 1; i < xs_.size(); ++i)
        best = std::max(best, abs(Rational((values_[i] - values_[i - 1]) / (xs_[i] - xs_[i - 1]))));
    return best;
}

Rational equidistribution_error(const Word& w, const CircleFunction& phi) {
    require_binary(w, "equidistribution_error");
    if (w.empty()) throw DomainError("equidistribution_error of the empty word");
    const auto n = static_cast<unsigned long>(w.size());
    Rational sum(0);
    for (std::size_t j = 1; j <= w.size(); ++j) {
        if (w[j - 1] != 1) continue;
        Rational x(static_cast<unsigned long>(j), n);
        x.canonicalize();
        sum += phi(x);
    }
    Rational d(static_cast<unsigned long>(w.count(1)), n);
    d.canonicalize();
    return abs(sum / n - d * phi.integral());
}

BigInt cayley_walk_count(const Word& w, const Word& u) {
    require_binary(w, "cayley_walk_count");
    return 2 * BigInt(static_cast<unsigned long>(w.size())) * subsequence_count(w, u);
}

InverseCsOutcome inverse_cs_check(std::span<const double> g, std::span<const double> h, double eps) {
    if (g.size() != h.size() || g.empty()) throw DomainError("inverse_cs_check needs vectors of equal positive length");
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("inverse_cs_check needs eps in (0,1)");
    double gh = 0.0, gg = 0.0, hh = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        gh += g[i] * h[i];
        gg += g[i] * g[i];
        hh += h[i] * h[i];
    }
    if (hh == 0.0) throw DomainError("inverse_cs_check needs h != 0");
    const double n = static_cast<double>(g.size());
    InverseCsOutcome out;
    out.hypothesis = gh * gh >= gg * hh - eps * n * n * n * hh;
    const double c = gh / hh;
    const double threshold = std::cbrt(eps) * n;
    std::size_t bad = 0;
    for (std::size_t i = 0; i < g.size(); ++i) bad += std::abs(g[i] - c * h[i]) > threshold ? 1 : 0;
    out.conclusion = static_cast<double>(bad) <= threshold;
    return out;
}

QuasirandomnessDiagnostics quasirandomness_report(const Word& w, std::size_t kmax, std::optional<Rational> d,
                                                  unsigned threads) {
    require_binary(w, "quasirandomness_report");
    if (kmax < 1) throw DomainError("quasirandomness_report needs K >= 1");
    if (w.empty()) throw DomainError("quasirandomness_report of the empty word");
    QuasirandomnessDiagnostics q;
    Rational ref(static_cast<unsigned long>(w.count(1)), static_cast<unsigned long>(w.size()));
    ref.canonicalize();
    q.residual_density = d.value_or(ref);
    q.exponential_sums.resize(kmax);
    parallel_for(3, threads, [&](std::size_t task) {
        switch (task) {
            case 0:
                q.uniformity = best_uniformity(w);
                break;
            case 1:
                if (w.size() >= 3) q.residuals = minimizer_residuals(w, q.residual_density);
                for (const Word& u : all_words(w.alphabet(), 3)) q.cayley_counts.emplace(u, cayley_walk_count(w, u));
                break;
            default:
                for (std::size_t k = 1; k <= kmax; ++k)
                    q.exponential_sums[k - 1] = exponential_sum(w, static_cast<long long>(k));
        }
    });
    return q;
}

}  // namespace seqlimit
