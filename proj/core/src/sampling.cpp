#include "seqlimit/sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "seqlimit/counting.hpp"
#include "seqlimit/error.hpp"
#include "seqlimit/limits.hpp"
#include "seqlimit/parallel.hpp"

namespace seqlimit {

FastEval::FastEval(const PiecewisePoly& f) {
    for (const auto& b : f.breakpoints()) breakpoints_.push_back(b.get_d());
    for (const auto& p : f.pieces()) {
        std::vector<double> c;
        for (const auto& q : p.coeffs()) c.push_back(q.get_d());
        coeffs_.push_back(std::move(c));
    }
}

double FastEval::operator()(double x) const {
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    std::size_t j = it == breakpoints_.begin() ? 0 : static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
    j = std::min(j, coeffs_.size() - 1);
    double acc = 0.0;
    for (auto c = coeffs_[j].rbegin(); c != coeffs_[j].rend(); ++c) acc = acc * x + *c;
    return acc;
}

RandomLetter f_random_letter(const LimitFn& f, SeededStream& stream) {
    const FastEval eval(f.poly());
    RandomLetter r;
    r.x = stream.uniform01();
    r.y = stream.bernoulli(eval(r.x)) ? 1 : 0;
    return r;
}

MixtureSampler::MixtureSampler(const LimitFn& f)
    : p1_(f.poly().integral().get_d()),
      cdf0_(f.component(0).antiderivative()),
      cdf1_(f.poly().antiderivative()),
      total0_(1.0 - p1_),
      total1_(p1_) {}

RandomLetter MixtureSampler::operator()(SeededStream& stream) const {
    RandomLetter r;
    r.y = stream.bernoulli(p1_) ? 1 : 0;
    const FastEval& cdf = r.y ? cdf1_ : cdf0_;
    const double target = stream.uniform01() * (r.y ? total1_ : total0_);
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    r.x = 0.5 * (lo + hi);
    return r;
}

namespace {

template <class Letter>
Word sorted_word(const Alphabet& alphabet, std::size_t n, SeededStream& stream, Letter draw_letter) {
    if (n < 1) throw DomainError("f_random_word needs n >= 1");
    std::vector<double> xs(n);
    std::vector<std::uint8_t> ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = stream.uniform01();
        ys[i] = draw_letter(xs[i], stream.uniform01());
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return xs[a] < xs[b] || (xs[a] == xs[b] && a < b);
    });
    std::vector<std::uint8_t> letters(n);
    for (std::size_t i = 0; i < n; ++i) letters[i] = ys[order[i]];
    return Word(alphabet, std::move(letters));
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size();
    return m % 2 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

void finish(TailExperiment& t) {
    t.trials = t.distances.size();
    t.exceed = static_cast<std::size_t>(
        std::count_if(t.distances.begin(), t.distances.end(), [&](double d) { return d >= t.threshold; }));
    t.empirical = t.trials ? static_cast<double>(t.exceed) / static_cast<double>(t.trials) : 0.0;
    const double p = std::clamp(t.bound, 0.0, 1.0);
    t.slack = 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(std::max<std::size_t>(t.trials, 1)));
}

}  // namespace

Word f_random_word(const LimitFn& f, std::size_t n, SeededStream& stream) {
    const FastEval eval(f.poly());
    return sorted_word(Alphabet::binary(), n, stream,
                       [&](double x, double u) -> std::uint8_t { return u < eval(x) ? 1 : 0; });
}

Word f_random_word(const LimitVector& f, std::size_t n, SeededStream& stream) {
    std::vector<FastEval> comps;
    for (const auto& c : f.components()) comps.emplace_back(c);
    return sorted_word(f.alphabet(), n, stream, [&](double x, double u) -> std::uint8_t {
        double acc = 0.0;
        for (std::size_t a = 0; a + 1 < comps.size(); ++a) {
            acc += comps[a](x);
            if (u < acc) return static_cast<std::uint8_t>(a);
        }
        return static_cast<std::uint8_t>(comps.size() - 1);
    });
}

TailExperiment tail_experiment_dbox(const LimitFn& f, std::size_t n, double a, std::size_t trials,
                                    std::uint64_t seed, unsigned threads) {
    if (n < 1) throw DomainError("tail_experiment_dbox needs n >= 1");
    if (a < 1.0 / static_cast<double>(n)) throw DomainError("tail_experiment_dbox needs a >= 1/n");
    if (trials < 1) throw DomainError("tail_experiment_dbox needs at least one trial");
    TailExperiment t;
    t.seed = seed;
    t.prng = std::string(SeededStream::algorithm);
    t.threshold = 8.0 * a;
    t.bound = 4.0 * static_cast<double>(n) * std::exp(-2.0 * a * a * static_cast<double>(n));
    t.distances.resize(trials);
    const SeededStream root(seed, 0);
    parallel_for(trials, threads, [&](std::size_t i) {
        SeededStream s = root.substream(i);
        const Word w = f_random_word(f, n, s);
        t.distances[i] = to_double(d_box(associated_function(w), f).value);
    });
    finish(t);
    return t;
}

SubsequenceTail subsequence_tail_experiment(const Word& w, std::size_t len, double eps, std::size_t trials,
                                            std::uint64_t seed, std::optional<double> ell0, unsigned threads) {
    if (len < 1 || len > w.size()) throw DomainError("subsequence length outside [1, |w|]");
    if (!(eps > 0.0)) throw DomainError("subsequence_tail_experiment needs eps > 0");
    if (trials < 1) throw DomainError("subsequence_tail_experiment needs at least one trial");
    SubsequenceTail out;
    out.ell0 = ell0.value_or(300.0 / (eps * eps));
    out.below_ell0 = static_cast<double>(len) < out.ell0;
    TailExperiment& t = out.result;
    t.seed = seed;
    t.prng = std::string(SeededStream::algorithm);
    t.threshold = eps;
    const double l = static_cast<double>(len);
    t.bound = 4.0 * l * std::exp(-eps * eps * l / 300.0);
    t.distances.resize(trials);
    const LimitFn fw = associated_function(w);
    const SeededStream root(seed, 0);
    parallel_for(trials, threads, [&](std::size_t i) {
        SeededStream s = root.substream(i);
        const Word u = random_subsequence(w, len, s);
        t.distances[i] = to_double(d_box(associated_function(u), fw).value);
    });
    finish(t);
    return out;
}

std::vector<ConvergencePoint> convergence_trace(const LimitFn& f, std::span<const std::size_t> ns,
                                                std::size_t trials, std::uint64_t seed, unsigned threads) {
    if (trials < 1) throw DomainError("convergence_trace needs at least one trial");
    std::vector<ConvergencePoint> out;
    const SeededStream root(seed, 0);
    for (std::size_t k = 0; k < ns.size(); ++k) {
        const SeededStream level = root.substream(k);
        std::vector<double> d(trials);
        parallel_for(trials, threads, [&](std::size_t i) {
            SeededStream s = level.substream(i);
            d[i] = to_double(d_box(associated_function(f_random_word(f, ns[k], s)), f).value);
        });
        const double mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(trials);
        out.push_back({ns[k], median_of(d), mean});
    }
    return out;
}

double chi_square_letter_pairs(const Word& w, double d) {
    if (w.alphabet().size() != 2) throw DomainError("chi_square_letter_pairs needs a binary word");
    const std::size_t pairs = w.size() / 2;
    if (pairs == 0) throw DomainError("chi_square_letter_pairs needs at least two letters");
    std::array<double, 4> observed{};
    for (std::size_t i = 0; i < pairs; ++i) observed[2 * w[2 * i] + w[2 * i + 1]] += 1.0;
    const std::array<double, 4> p{(1 - d) * (1 - d), (1 - d) * d, d * (1 - d), d * d};
    double stat = 0.0;
    for (std::size_t c = 0; c < 4; ++c) {
        const double e = p[c] * static_cast<double>(pairs);
        if (e > 0.0) stat += (observed[c] - e) * (observed[c] - e) / e;
    }
    return stat;
}

double joint_ks_statistic(std::span<const RandomLetter> a, std::span<const RandomLetter> b) {
    if (a.empty() || b.empty()) throw DomainError("joint_ks_statistic needs two non-empty samples");
    double worst = 0.0;
    for (std::uint8_t letter : {std::uint8_t{0}, std::uint8_t{1}}) {
        std::vector<double> xa, xb;
        for (const auto& r : a)
            if (r.y == letter) xa.push_back(r.x);
        for (const auto& r : b)
            if (r.y == letter) xb.push_back(r.x);
        std::sort(xa.begin(), xa.end());
        std::sort(xb.begin(), xb.end());
        const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
        std::size_t i = 0, j = 0;
        while (i < xa.size() || j < xb.size()) {
            const double x = j >= xb.size() || (i < xa.size() && xa[i] <= xb[j]) ? xa[i] : xb[j];
            while (i < xa.size() && xa[i] <= x) ++i;
            while (j < xb.size() && xb[j] <= x) ++j;
            worst = std::max(worst, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
        }
    }
    return worst;
}

double ks_critical_value(std::size_t na, std::size_t nb, double alpha, std::size_t parts) {
    const double a = alpha / static_cast<double>(std::max<std::size_t>(parts, 1));
    const double c = std::sqrt(-std::log(a / 2.0) / 2.0);
    const double m = static_cast<double>(na), n = static_cast<double>(nb);
    return c * std::sqrt((m + n) / (m * n));
}

}  // namespace seqlimit
