// Brute-force reference implementations used only by tests. None of these
// call into the library code they are compared against.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Q = mpq_class;
using Z = mpz_class;

inline Q q(long num, long den = 1) {
    Q r(num, den);
    r.canonicalize();
    return r;
}

inline Z choose(unsigned long n, unsigned long k) {
    Z r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Z fact(unsigned long n) {
    Z r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

/// Visits every k-subset of {0..n-1} as a sorted index vector.
inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> idx(k);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
        if (pos == k) {
            fn(idx);
            return;
        }
        for (std::size_t i = start; i + (k - pos) <= n; ++i) {
            idx[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    rec(0, 0);
}

/// Number of index subsets of w spelling u.
inline std::uint64_t subsequence_count(const std::string& w, const std::string& u) {
    if (u.size() > w.size()) return 0;
    std::uint64_t count = 0;
    for_each_subset(w.size(), u.size(), [&](const std::vector<std::size_t>& idx) {
        for (std::size_t t = 0; t < idx.size(); ++t)
            if (w[idx[t]] != u[t]) return;
        ++count;
    });
    return count;
}

inline bool contains(const std::string& w, const std::string& u) { return subsequence_count(w, u) > 0; }

/// All words of length n over `symbols`, lexicographic.
inline std::vector<std::string> words(const std::string& symbols, std::size_t n) {
    std::vector<std::string> out{""};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::string> next;
        for (const auto& p : out)
            for (char c : symbols) next.push_back(p + c);
        out = std::move(next);
    }
    return out;
}

/// max over intervals of |#ones - d |I||, by direct summation.
inline Q discrepancy(const std::string& w, const Q& d) {
    Q best = 0;
    for (std::size_t a = 0; a < w.size(); ++a) {
        long ones = 0;
        for (std::size_t b = a; b < w.size(); ++b) {
            ones += w[b] == '1';
            Q dev = Q(ones) - d * Q(static_cast<long>(b - a + 1));
            if (dev < 0) dev = -dev;
            if (dev > best) best = dev;
        }
    }
    return best;
}

/// Step function: values[i] on [bps[i], bps[i+1]).
struct Step {
    std::vector<Q> bps;
    std::vector<Q> values;

    Q at(const Q& x) const {
        for (std::size_t i = 0; i + 1 < bps.size(); ++i)
            if (x < bps[i + 1]) return values[i];
        return values.back();
    }
};

/// l! * int over x_1 < ... < x_l of prod f^{u_k}(x_k) for a step function:
/// sum over non-decreasing piece assignments, a group of g points in one
/// piece of length L contributing L^g / g!.
inline Q t_density_step(const std::string& u, const Step& f) {
    const std::size_t m = f.values.size();
    const std::size_t l = u.size();
    Q total = 0;
    std::vector<std::size_t> piece(l);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t from) {
        if (pos == l) {
            Q term = 1;
            for (std::size_t k = 0; k < l; ++k) {
                const Q& v = f.values[piece[k]];
                term *= u[k] == '1' ? v : Q(1) - v;
            }
            std::size_t k = 0;
            while (k < l) {
                std::size_t g = 0;
                while (k + g < l && piece[k + g] == piece[k]) ++g;
                const Q len = f.bps[piece[k] + 1] - f.bps[piece[k]];
                Q p = 1;
                for (std::size_t e = 0; e < g; ++e) p *= len;
                term *= p / Q(fact(g));
                k += g;
            }
            total += term;
            return;
        }
        for (std::size_t p = from; p < m; ++p) {
            piece[pos] = p;
            rec(pos + 1, p);
        }
    };
    rec(0, 0);
    return total * Q(fact(l));
}

/// Values of H(x) = int_0^x (f - g) at every breakpoint of either step function.
inline Q box_distance_step(const Step& f, const Step& g) {
    std::vector<Q> pts = f.bps;
    pts.insert(pts.end(), g.bps.begin(), g.bps.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    Q h = 0, lo = 0, hi = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const Q mid = (pts[i] + pts[i + 1]) / 2;
        h += (f.at(mid) - g.at(mid)) * (pts[i + 1] - pts[i]);
        lo = std::min(lo, h);
        hi = std::max(hi, h);
    }
    return hi - lo;
}

/// Dense-grid estimate of sup_I |int_I h| for h given as a callable.
inline double box_norm_grid(const std::function<double(double)>& h, std::size_t steps) {
    double acc = 0.0, lo = 0.0, hi = 0.0;
    const double dx = 1.0 / static_cast<double>(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        const double x = (static_cast<double>(i) + 0.5) * dx;
        acc += h(x) * dx;
        lo = std::min(lo, acc);
        hi = std::max(hi, acc);
    }
    return hi - lo;
}

/// int_0^1 x^i F(x)^j dx for a step function f with F = int_0^x f, expanding
/// F = c + v x on each piece binomially.
inline Q moment_step(std::size_t i, std::size_t j, const Step& f) {
    Q total = 0, c = 0;
    for (std::size_t p = 0; p + 1 < f.bps.size(); ++p) {
        const Q& a = f.bps[p];
        const Q& b = f.bps[p + 1];
        const Q& v = f.values[p];
        const Q c0 = c - v * a;  // F(x) = c0 + v x on [a,b)
        for (std::size_t r = 0; r <= j; ++r) {
            // binom(j,r) c0^(j-r) v^r x^(i+r)
            Q coef = Q(choose(j, r));
            for (std::size_t e = 0; e < j - r; ++e) coef *= c0;
            for (std::size_t e = 0; e < r; ++e) coef *= v;
            const std::size_t deg = i + r + 1;
            Q bp = 1, ap = 1;
            for (std::size_t e = 0; e < deg; ++e) {
                bp *= b;
                ap *= a;
            }
            total += coef * (bp - ap) / Q(static_cast<long>(deg));
        }
        c += v * (b - a);
    }
    return total;
}

/// Number of k-subsets of positions of sigma (1-based values) order-isomorphic to tau.
inline std::uint64_t perm_pattern_count(const std::vector<unsigned>& sigma, const std::vector<unsigned>& tau) {
    std::uint64_t count = 0;
    const std::size_t k = tau.size();
    for_each_subset(sigma.size(), k, [&](const std::vector<std::size_t>& idx) {
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a + 1; b < k; ++b)
                if ((sigma[idx[a]] < sigma[idx[b]]) != (tau[a] < tau[b])) return;
        ++count;
    });
    return count;
}

/// All permutations of 1..n in lexicographic order.
inline std::vector<std::vector<unsigned>> perms(std::size_t n) {
    std::vector<unsigned> p(n);
    std::iota(p.begin(), p.end(), 1u);
    std::vector<std::vector<unsigned>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

/// sup over grid-aligned rectangles of |(mu - nu)(R)|; mass[i*m + j] with i
/// the column. O(m^4) with a 2-D prefix table.
inline Q box_distance_grid(std::size_t m, const std::vector<Q>& mu, const std::vector<Q>& nu) {
    std::vector<Q> pre((m + 1) * (m + 1), Q(0));
    auto P = [&](std::size_t i, std::size_t j) -> Q& { return pre[i * (m + 1) + j]; };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            P(i + 1, j + 1) = P(i, j + 1) + P(i + 1, j) - P(i, j) + mu[i * m + j] - nu[i * m + j];
    Q best = 0;
    for (std::size_t i1 = 0; i1 < m; ++i1)
        for (std::size_t i2 = i1 + 1; i2 <= m; ++i2)
            for (std::size_t j1 = 0; j1 < m; ++j1)
                for (std::size_t j2 = j1 + 1; j2 <= m; ++j2) {
                    Q v = P(i2, j2) - P(i1, j2) - P(i2, j1) + P(i1, j1);
                    if (v < 0) v = -v;
                    if (v > best) best = v;
                }
    return best;
}

/// Minimum Hamming distance from w to a word of the same length avoiding
/// every pattern, by enumerating the whole cube.
inline std::size_t family_distance(const std::string& w, const std::vector<std::string>& forbidden,
                                   const std::string& symbols = "01") {
    std::size_t best = w.size() + 1;
    for (const auto& v : words(symbols, w.size())) {
        bool member = true;
        for (const auto& f : forbidden)
            if (contains(v, f)) {
                member = false;
                break;
            }
        if (!member) continue;
        std::size_t d = 0;
        for (std::size_t i = 0; i < w.size(); ++i) d += w[i] != v[i];
        best = std::min(best, d);
    }
    return best;
}

/// Whether positions of w split into two classes avoiding f1 and f2.
inline bool two_colorable(const std::string& w, const std::vector<std::string>& f1, const std::vector<std::string>& f2) {
    const std::size_t n = w.size();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::string a, b;
        for (std::size_t i = 0; i < n; ++i) (mask >> i & 1u ? b : a) += w[i];
        bool ok = true;
        for (const auto& f : f1) ok = ok && !contains(a, f);
        for (const auto& f : f2) ok = ok && !contains(b, f);
        if (ok) return true;
    }
    return false;
}

/// Induced u-walks in the Cayley digraph on Z_{2n}: v -> v+i is an edge iff
/// w_i = 1; steps i_1 < ... < i_l in [n], edge status matching u.
inline std::uint64_t cayley_walks(const std::string& w, const std::string& u) {
    const std::size_t n = w.size();
    const std::size_t N = 2 * n;
    std::uint64_t count = 0;
    std::function<void(std::size_t, std::size_t, std::size_t)> rec = [&](std::size_t v, std::size_t k, std::size_t last) {
        if (k == u.size()) {
            ++count;
            return;
        }
        for (std::size_t next = 0; next < N; ++next) {
            const std::size_t step = (next + N - v) % N;
            if (step < 1 || step > n || step <= last) continue;
            const bool edge = w[step - 1] == '1';
            if (edge != (u[k] == '1')) continue;
            rec(next, k + 1, step);
        }
    };
    for (std::size_t v = 0; v < N; ++v) rec(v, 0, 0);
    return count;
}

}  // namespace oracle
