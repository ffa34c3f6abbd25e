#include "seqlimit/permutons.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "seqlimit/error.hpp"

namespace seqlimit {

Permutation::Permutation(std::vector<std::uint32_t> values) : values_(std::move(values)) {
    std::vector<bool> seen(values_.size() + 1, false);
    for (auto v : values_) {
        if (v < 1 || v > values_.size() || seen[v])
            throw DomainError("not a permutation of 1.." + std::to_string(values_.size()));
        seen[v] = true;
    }
}

Permutation Permutation::parse(std::string_view text) {
    std::vector<std::uint32_t> values;
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size()) throw DomainError("bad permutation entry '" + token + "'");
        values.push_back(static_cast<std::uint32_t>(v));
        token.clear();
    };
    for (char c : text) {
        if (c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r')
            flush();
        else
            token.push_back(c);
    }
    flush();
    return Permutation(std::move(values));
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::uint32_t> v(n);
    std::iota(v.begin(), v.end(), 1U);
    return Permutation(std::move(v));
}

Permutation Permutation::reverse(std::size_t n) {
    std::vector<std::uint32_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<std::uint32_t>(n - i);
    return Permutation(std::move(v));
}

Permutation Permutation::inverse() const {
    std::vector<std::uint32_t> inv(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) inv[values_[i] - 1] = static_cast<std::uint32_t>(i + 1);
    return Permutation(std::move(inv));
}

std::string Permutation::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < values_.size(); ++i) os << (i ? "," : "") << values_[i];
    return os.str();
}

std::vector<Permutation> all_permutations(std::size_t k) {
    std::vector<std::uint32_t> v(k);
    std::iota(v.begin(), v.end(), 1U);
    std::vector<Permutation> out;
    do {
        out.emplace_back(v);
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
}

namespace {

std::uint64_t count_inversions(std::vector<std::uint32_t>& a, std::vector<std::uint32_t>& buf, std::size_t lo,
                               std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = (lo + hi) / 2;
    std::uint64_t inv = count_inversions(a, buf, lo, mid) + count_inversions(a, buf, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (a[i] <= a[j]) {
            buf[k++] = a[i++];
        } else {
            inv += mid - i;
            buf[k++] = a[j++];
        }
    }
    while (i < mid) buf[k++] = a[i++];
    while (j < hi) buf[k++] = a[j++];
    std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo), buf.begin() + static_cast<std::ptrdiff_t>(hi),
              a.begin() + static_cast<std::ptrdiff_t>(lo));
    return inv;
}

}  // namespace

BigInt pattern_count_perm(const Permutation& sigma, const Permutation& tau, std::size_t cap) {
    const std::size_t k = tau.size();
    const std::size_t n = sigma.size();
    if (k == 0) throw DomainError("pattern must be non-empty");
    if (k > cap) throw CapExceeded("exact pattern size " + std::to_string(k) + " (use Monte Carlo sampling)", cap);
    if (n < k) return BigInt(0);
    if (k == 1) return BigInt(static_cast<unsigned long>(n));
    if (k == 2) {
        std::vector<std::uint32_t> a = sigma.values(), buf(n);
        const std::uint64_t inv = count_inversions(a, buf, 0, n);
        if (tau(1) == 2) return BigInt(static_cast<unsigned long>(inv));
        return binomial(n, 2) - BigInt(static_cast<unsigned long>(inv));
    }
    std::vector<std::size_t> idx(k);
    std::uint64_t count = 0;
    auto matches = [&] {
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a + 1; b < k; ++b)
                if ((sigma.values()[idx[a]] < sigma.values()[idx[b]]) != (tau.values()[a] < tau.values()[b]))
                    return false;
        return true;
    };
    auto rec = [&](auto&& self, std::size_t depth, std::size_t start) -> void {
        if (depth == k) {
            count += matches() ? 1 : 0;
            return;
        }
        for (std::size_t p = start; p + (k - depth) <= n; ++p) {
            idx[depth] = p;
            self(self, depth + 1, p + 1);
        }
    };
    rec(rec, 0, 0);
    return BigInt(static_cast<unsigned long>(count));
}

Rational t_perm(const Permutation& tau, const Permutation& sigma, std::size_t cap) {
    if (sigma.size() < tau.size()) return Rational(0);
    Rational t(pattern_count_perm(sigma, tau, cap), binomial(sigma.size(), tau.size()));
    t.canonicalize();
    return t;
}

GridMeasure::GridMeasure(std::size_t m, std::vector<Rational> mass) : m_(m), mass_(std::move(mass)) {
    if (m_ == 0) throw DomainError("grid measure needs m >= 1");
    if (mass_.size() != m_ * m_)
        throw DomainError("grid measure with m = " + std::to_string(m_) + " needs " + std::to_string(m_ * m_) +
                          " cell masses, got " + std::to_string(mass_.size()));
    const Rational marginal(1, static_cast<unsigned long>(m_));
    for (auto& x : mass_) {
        x.canonicalize();
        if (sgn(x) < 0) throw DomainError("negative cell mass " + to_string(x));
    }
    for (std::size_t i = 0; i < m_; ++i) {
        Rational col(0), row(0);
        for (std::size_t j = 0; j < m_; ++j) {
            col += mass_[i * m_ + j];
            row += mass_[j * m_ + i];
        }
        if (col != marginal) throw DomainError("column " + std::to_string(i + 1) + " has mass " + to_string(col) + ", not 1/m");
        if (row != marginal) throw DomainError("row " + std::to_string(i + 1) + " has mass " + to_string(row) + ", not 1/m");
    }
}

GridMeasure GridMeasure::uniform(std::size_t m) {
    Rational cell(1, static_cast<unsigned long>(m * m));
    return GridMeasure(m, std::vector<Rational>(m * m, cell));
}

GridMeasure GridMeasure::refined(std::size_t factor) const {
    if (factor == 0) throw DomainError("refinement factor must be positive");
    if (factor == 1) return *this;
    const std::size_t big = m_ * factor;
    const auto share = static_cast<unsigned long>(factor * factor);
    std::vector<Rational> mass(big * big);
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t j = 0; j < m_; ++j) {
            const Rational part = mass_[i * m_ + j] / share;
            for (std::size_t a = 0; a < factor; ++a)
                for (std::size_t b = 0; b < factor; ++b) mass[(i * factor + a) * big + (j * factor + b)] = part;
        }
    return GridMeasure(big, std::move(mass));
}

GridMeasure mu_sigma(const Permutation& sigma) {
    const std::size_t n = sigma.size();
    if (n == 0) throw DomainError("mu_sigma of the empty permutation");
    std::vector<Rational> mass(n * n, Rational(0));
    const Rational cell(1, static_cast<unsigned long>(n));
    for (std::size_t i = 1; i <= n; ++i) mass[(i - 1) * n + (sigma(i) - 1)] = cell;
    return GridMeasure(n, std::move(mass));
}

GridMeasure random_grid_measure(std::size_t m, std::size_t components, SeededStream& stream) {
    if (m == 0 || components == 0) throw DomainError("random_grid_measure needs m >= 1 and components >= 1");
    std::vector<unsigned long> weights(components);
    unsigned long total = 0;
    for (auto& w : weights) {
        w = 1 + stream.uniform_below(10);
        total += w;
    }
    std::vector<Rational> mass(m * m, Rational(0));
    for (std::size_t c = 0; c < components; ++c) {
        std::vector<std::size_t> perm(m);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        for (std::size_t i = m; i > 1; --i) std::swap(perm[i - 1], perm[stream.uniform_below(i)]);
        Rational cell(weights[c], total * static_cast<unsigned long>(m));
        cell.canonicalize();
        for (std::size_t i = 0; i < m; ++i) mass[i * m + perm[i]] += cell;
    }
    return GridMeasure(m, std::move(mass));
}

namespace {

struct Cell {
    std::size_t col;
    std::size_t row;
    BigInt weight;  // mass * denominator
};

struct IntegerCells {
    std::vector<Cell> cells;  // sorted by column, then row
    BigInt denominator;
};

IntegerCells integer_cells(const GridMeasure& mu) {
    IntegerCells ic{{}, BigInt(1)};
    for (const auto& x : mu.masses())
        if (sgn(x) != 0) mpz_lcm(ic.denominator.get_mpz_t(), ic.denominator.get_mpz_t(), x.get_den_mpz_t());
    for (std::size_t i = 0; i < mu.m(); ++i)
        for (std::size_t j = 0; j < mu.m(); ++j) {
            const Rational& x = mu.mass(i, j);
            if (sgn(x) == 0) continue;
            ic.cells.push_back({i, j, x.get_num() * (ic.denominator / x.get_den())});
        }
    return ic;
}

// k!/prod(g!) over maximal runs of equal keys, or 0 if keys decrease.
std::uint64_t run_factor(const std::size_t* keys, std::size_t k, const std::uint64_t* fact) {
    std::uint64_t denom = 1;
    std::size_t run = 1;
    for (std::size_t p = 1; p < k; ++p) {
        if (keys[p] < keys[p - 1]) return 0;
        if (keys[p] == keys[p - 1]) {
            ++run;
        } else {
            denom *= fact[run];
            run = 1;
        }
    }
    denom *= fact[run];
    return fact[k] / denom;
}

template <class Acc>
std::vector<Rational> grid_densities(const IntegerCells& ic, std::size_t k, const std::vector<Permutation>& taus) {
    std::uint64_t fact[16] = {1};
    for (std::size_t i = 1; i < 16; ++i) fact[i] = fact[i - 1] * i;
    std::vector<std::vector<std::size_t>> inverse_order;
    for (const auto& tau : taus) {
        const Permutation inv = tau.inverse();
        std::vector<std::size_t> order(k);
        for (std::size_t r = 0; r < k; ++r) order[r] = inv.values()[r] - 1;
        inverse_order.push_back(std::move(order));
    }
    std::vector<Acc> sums(taus.size(), Acc(0));
    std::vector<Acc> weights(ic.cells.size());
    for (std::size_t c = 0; c < ic.cells.size(); ++c) {
        if constexpr (std::is_same_v<Acc, BigInt>)
            weights[c] = ic.cells[c].weight;
        else
            weights[c] = static_cast<Acc>(ic.cells[c].weight.get_ui());
    }

    std::vector<std::size_t> seq(k), cols(k), rows(k), ordered_rows(k);
    std::vector<Acc> prefix_weight(k + 1, Acc(1));
    auto rec = [&](auto&& self, std::size_t depth, std::size_t min_cell_col) -> void {
        if (depth == k) {
            const std::uint64_t ax = run_factor(cols.data(), k, fact);
            for (std::size_t t = 0; t < taus.size(); ++t) {
                for (std::size_t r = 0; r < k; ++r) ordered_rows[r] = rows[inverse_order[t][r]];
                const std::uint64_t ay = run_factor(ordered_rows.data(), k, fact);
                if (ay == 0) continue;
                sums[t] += prefix_weight[k] * Acc(static_cast<unsigned long>(ax * ay));
            }
            return;
        }
        for (std::size_t c = 0; c < ic.cells.size(); ++c) {
            if (ic.cells[c].col < min_cell_col) continue;
            seq[depth] = c;
            cols[depth] = ic.cells[c].col;
            rows[depth] = ic.cells[c].row;
            prefix_weight[depth + 1] = prefix_weight[depth] * weights[c];
            self(self, depth + 1, ic.cells[c].col);
        }
    };
    rec(rec, 0, 0);

    BigInt scale;
    mpz_pow_ui(scale.get_mpz_t(), ic.denominator.get_mpz_t(), k);
    scale *= BigInt(static_cast<unsigned long>(fact[k]));
    std::vector<Rational> out;
    for (const auto& s : sums) {
        BigInt num;
        if constexpr (std::is_same_v<Acc, BigInt>) {
            num = s;
        } else {
            const auto hi = static_cast<unsigned long>(static_cast<std::uint64_t>(s >> 64));
            const auto lo = static_cast<unsigned long>(static_cast<std::uint64_t>(s));
            num = (BigInt(hi) << 64) + BigInt(lo);
        }
        Rational t(num, scale);
        t.canonicalize();
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<Rational> exact_densities(const GridMeasure& mu, std::size_t k, const std::vector<Permutation>& taus) {
    const IntegerCells ic = integer_cells(mu);
    // Sum of all terms is at most D^k (k!)^2; use 128-bit accumulators when
    // that fits comfortably.
    BigInt bound;
    mpz_pow_ui(bound.get_mpz_t(), ic.denominator.get_mpz_t(), k);
    bound *= factorial(k) * factorial(k);
    if (mpz_sizeinbase(bound.get_mpz_t(), 2) < 120 && mpz_sizeinbase(ic.denominator.get_mpz_t(), 2) < 64)
        return grid_densities<__uint128_t>(ic, k, taus);
    return grid_densities<BigInt>(ic, k, taus);
}

}  // namespace

std::vector<Rational> t_grid_all(std::size_t k, const GridMeasure& mu, std::size_t cap) {
    if (k == 0) throw DomainError("pattern size must be positive");
    if (k > cap) throw CapExceeded("exact grid density for pattern size " + std::to_string(k), cap);
    return exact_densities(mu, k, all_permutations(k));
}

GridDensity t_grid(const Permutation& tau, const GridMeasure& mu, std::size_t cap, std::size_t samples,
                   std::uint64_t seed) {
    const std::size_t k = tau.size();
    if (k == 0) throw DomainError("pattern size must be positive");
    GridDensity out;
    if (k <= cap) {
        out.value = exact_densities(mu, k, {tau}).front();
        out.estimate = out.value.get_d();
        return out;
    }
    if (samples == 0) throw DomainError("Monte Carlo density needs samples > 0");
    out.exact = false;
    out.samples = samples;
    const SeededStream root(seed, 0);
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        SeededStream stream = root.substream(s);
        hits += sample_subperm(mu, k, stream) == tau ? 1 : 0;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    out.estimate = p;
    out.value = from_double(p);
    out.ci_halfwidth = 2.5758293035489004 * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    return out;
}

namespace {

template <class Int>
Int column_pair_sweep(const std::vector<Int>& diff, std::size_t m) {
    Int best(0);
    std::vector<Int> strip(m);
    for (std::size_t a = 0; a < m; ++a) {
        std::fill(strip.begin(), strip.end(), Int(0));
        for (std::size_t b = a; b < m; ++b) {
            for (std::size_t j = 0; j < m; ++j) strip[j] += diff[b * m + j];
            Int prefix(0), lo(0), hi(0);
            for (std::size_t j = 0; j < m; ++j) {
                prefix += strip[j];
                if (prefix < lo) lo = prefix;
                if (prefix > hi) hi = prefix;
            }
            if (hi - lo > best) best = hi - lo;
        }
    }
    return best;
}

}  // namespace

Rational d_box_grid(const GridMeasure& mu, const GridMeasure& nu) {
    const std::size_t m = std::lcm(mu.m(), nu.m());
    const GridMeasure a = mu.refined(m / mu.m());
    const GridMeasure b = nu.refined(m / nu.m());
    BigInt den(1);
    for (const auto* g : {&a, &b})
        for (const auto& x : g->masses()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    std::vector<BigInt> diff(m * m);
    for (std::size_t c = 0; c < m * m; ++c) {
        const Rational d = (a.masses()[c] - b.masses()[c]) * den;
        diff[c] = d.get_num();
    }
    // |partial sums| <= 2 * den.
    if (mpz_sizeinbase(den.get_mpz_t(), 2) < 60) {
        std::vector<long long> small(m * m);
        for (std::size_t c = 0; c < m * m; ++c) small[c] = diff[c].get_si();
        Rational r(BigInt(static_cast<long>(column_pair_sweep(small, m))), den);
        r.canonicalize();
        return r;
    }
    Rational r(column_pair_sweep(diff, m), den);
    r.canonicalize();
    return r;
}

Permutation sample_subperm(const GridMeasure& mu, std::size_t k, SeededStream& stream) {
    if (k == 0) throw DomainError("sub-permutation size must be positive");
    std::vector<std::size_t> cols, rows;
    std::vector<double> cumulative;
    double acc = 0.0;
    for (std::size_t i = 0; i < mu.m(); ++i)
        for (std::size_t j = 0; j < mu.m(); ++j) {
            const double w = mu.mass(i, j).get_d();
            if (w <= 0.0) continue;
            acc += w;
            cols.push_back(i);
            rows.push_back(j);
            cumulative.push_back(acc);
        }
    const double m = static_cast<double>(mu.m());
    std::vector<double> xs(k), ys(k);
    for (std::size_t p = 0; p < k; ++p) {
        const double u = stream.uniform01() * acc;
        std::size_t c = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                                                 cumulative.begin());
        c = std::min(c, cumulative.size() - 1);
        xs[p] = (static_cast<double>(cols[c]) + stream.uniform01()) / m;
        ys[p] = (static_cast<double>(rows[c]) + stream.uniform01()) / m;
    }
    auto by = [](const std::vector<double>& v) {
        return [&v](std::size_t a, std::size_t b) { return v[a] < v[b] || (v[a] == v[b] && a < b); };
    };
    std::vector<std::size_t> x_order(k), y_order(k);
    std::iota(x_order.begin(), x_order.end(), std::size_t{0});
    std::iota(y_order.begin(), y_order.end(), std::size_t{0});
    std::sort(x_order.begin(), x_order.end(), by(xs));
    std::sort(y_order.begin(), y_order.end(), by(ys));
    std::vector<std::uint32_t> y_rank(k);
    for (std::size_t r = 0; r < k; ++r) y_rank[y_order[r]] = static_cast<std::uint32_t>(r + 1);
    std::vector<std::uint32_t> tau(k);
    for (std::size_t i = 0; i < k; ++i) tau[i] = y_rank[x_order[i]];
    return Permutation(std::move(tau));
}

Rational moment_xy_direct(std::size_t i, std::size_t j, const GridMeasure& mu) {
    const std::size_t m = mu.m();
    // Average of x^e over [a/m, (a+1)/m).
    auto averages = [m](std::size_t e) {
        std::vector<Rational> out(m);
        BigInt scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), m, e);
        scale *= static_cast<unsigned long>(e + 1);
        for (std::size_t a = 0; a < m; ++a) {
            BigInt hi, lo;
            mpz_ui_pow_ui(hi.get_mpz_t(), a + 1, e + 1);
            mpz_ui_pow_ui(lo.get_mpz_t(), a, e + 1);
            out[a] = Rational(hi - lo, scale);
            out[a].canonicalize();
        }
        return out;
    };
    const auto ax = averages(i);
    const auto ay = averages(j);
    Rational total(0);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            const Rational& w = mu.mass(a, b);
            if (sgn(w) != 0) total += w * ax[a] * ay[b];
        }
    return total;
}

Rational moment_xy_coefficient(std::size_t i, std::size_t j, const Permutation& sigma) {
    const std::size_t m = i + j + 1;
    if (sigma.size() != m) throw DomainError("moment coefficient needs a permutation of size i+j+1");
    // Distinguish the point at x-rank r with y-rank s. The other i+j points
    // are labelled i "left" and j "below"; the event is that every label
    // holds. It needs no point right of and above the distinguished one;
    // then r+s-m-1 points are both left and below, and the free labels
    // among them number s-j-1.
    BigInt ways(0);
    for (std::size_t r = 1; r <= m; ++r) {
        const std::size_t s = sigma(r);
        if (s < j + 1) continue;
        bool clear = true;
        for (std::size_t q = r + 1; q <= m && clear; ++q) clear = sigma(q) < s;
        if (!clear) continue;
        const long both = static_cast<long>(r + s) - static_cast<long>(m) - 1;
        if (both < 0 || static_cast<long>(s - j - 1) > both) continue;
        ways += binomial(static_cast<std::uint64_t>(both), s - j - 1);
    }
    Rational c(ways, BigInt(static_cast<unsigned long>(m)) * binomial(i + j, i));
    c.canonicalize();
    return c;
}

namespace {

std::mutex validation_mutex;
std::set<std::pair<std::size_t, std::size_t>> validated;

void validate_moment_convention(std::size_t i, std::size_t j) {
    std::lock_guard lock(validation_mutex);
    if (validated.count({i, j})) return;
    const std::size_t k = i + j + 1;
    const auto perms = all_permutations(k);
    std::vector<Rational> coeffs;
    for (const auto& s : perms) coeffs.push_back(moment_xy_coefficient(i, j, s));
    const SeededStream root(0x6d6f6d656e74ULL, 0);
    std::ostringstream table;
    bool ok = true;
    for (std::size_t trial = 0; trial < 50; ++trial) {
        SeededStream s = root.substream(trial);
        const std::size_t m = 1 + s.uniform_below(4);
        const GridMeasure mu = random_grid_measure(m, 1 + s.uniform_below(3), s);
        const auto t = t_grid_all(k, mu, std::max(k, kDefaultPatternSizeCap));
        Rational combined(0);
        for (std::size_t p = 0; p < perms.size(); ++p) combined += coeffs[p] * t[p];
        const Rational direct = moment_xy_direct(i, j, mu);
        if (combined != direct) {
            ok = false;
            table << "  trial " << trial << " (m=" << m << "): combination " << to_string(combined) << " vs direct "
                  << to_string(direct) << "\n";
        }
    }
    if (!ok)
        throw InvariantViolation("moment coefficient convention failed for (i,j) = (" + std::to_string(i) + "," +
                                 std::to_string(j) + "):\n" + table.str());
    validated.insert({i, j});
}

}  // namespace

Rational moment_xy_from_densities(std::size_t i, std::size_t j, const std::map<Permutation, Rational>& densities) {
    const std::size_t k = i + j + 1;
    if (k > kDefaultPatternSizeCap)
        throw CapExceeded("moment pattern size " + std::to_string(k), kDefaultPatternSizeCap);
    validate_moment_convention(i, j);
    Rational total(0);
    std::string missing;
    for (const auto& sigma : all_permutations(k)) {
        const Rational c = moment_xy_coefficient(i, j, sigma);
        if (sgn(c) == 0) continue;
        auto it = densities.find(sigma);
        if (it == densities.end()) {
            missing += (missing.empty() ? "" : " ") + sigma.str();
            continue;
        }
        total += c * it->second;
    }
    if (!missing.empty()) throw DomainError("densities missing for permutations: " + missing);
    return total;
}

}  // namespace seqlimit
