#include "seqlimit/moments.hpp"

#include <algorithm>
#include <set>

#include "seqlimit/error.hpp"
#include "seqlimit/limits.hpp"

namespace seqlimit {

MomentCombination moment_words(std::size_t i, std::size_t j, std::size_t cap) {
    const std::size_t len = i + j + 1;
    if (len > cap)
        throw CapExceeded("moment pattern length " + std::to_string(len), cap);
    Rational scale(factorial(i) * factorial(j), factorial(len));
    scale.canonicalize();
    MomentCombination c{i, j, {}};
    for (const Word& u : all_words(Alphabet::binary(), len)) {
        std::size_t s = 0;
        for (std::size_t k = 0; k + 1 < len; ++k) s += u[k];
        if (s < j) continue;
        c.terms.push_back({u, scale * binomial(s, j)});
    }
    return c;
}

Rational moment_direct(std::size_t i, std::size_t j, const PiecewisePoly& f) {
    const PiecewisePoly F = f.antiderivative();
    Polynomial xi = Polynomial::x().pow(static_cast<unsigned>(i));
    Rational total(0);
    for (std::size_t k = 0; k < F.piece_count(); ++k)
        total += (xi * F.pieces()[k].pow(static_cast<unsigned>(j))).integral(F.left(k), F.right(k));
    return total;
}

Rational moment_from_densities(const MomentCombination& combination, const std::map<Word, Rational>& densities) {
    Rational total(0);
    std::string missing;
    for (const auto& term : combination.terms) {
        auto it = densities.find(term.pattern);
        if (it == densities.end()) {
            missing += (missing.empty() ? "" : ",") + term.pattern.str();
            continue;
        }
        total += term.coefficient * it->second;
    }
    if (!missing.empty()) throw DomainError("densities missing for patterns: " + missing);
    return total;
}

Rational moment_from_densities(std::size_t i, std::size_t j, const std::map<Word, Rational>& densities) {
    return moment_from_densities(moment_words(i, j), densities);
}

Rational BivariatePoly::operator()(const Rational& x, const Rational& y) const {
    Rational acc(0);
    for (auto it = by_y.rbegin(); it != by_y.rend(); ++it) {
        acc *= y;
        acc += (*it)(x);
    }
    return acc;
}

BivariatePoly squared_branch_product(const std::vector<Polynomial>& branches) {
    BivariatePoly p{{Polynomial::constant(1)}};
    for (const auto& q : branches) {
        for (int rep = 0; rep < 2; ++rep) {
            // multiply by (y - q)
            std::vector<Polynomial> next(p.by_y.size() + 1);
            for (std::size_t b = 0; b < p.by_y.size(); ++b) {
                next[b + 1] += p.by_y[b];
                next[b] -= p.by_y[b] * q;
            }
            p.by_y = std::move(next);
        }
    }
    return p;
}

namespace {

BigInt word_count_bound(std::size_t k, int max_degree) {
    BigInt r;
    const unsigned long exponent = 2UL * k * k * static_cast<unsigned long>(1 + std::max(max_degree, 0));
    mpz_ui_pow_ui(r.get_mpz_t(), k + 1, exponent);
    return r;
}

}  // namespace

ForcibilityCertificate forcibility_certificate(const LimitFn& f, std::size_t cap) {
    ForcibilityCertificate cert;
    cert.target = f;
    const PiecewisePoly canonical = f.poly().canonical();
    const PiecewisePoly F = canonical.antiderivative();
    for (const auto& q : F.pieces())
        if (std::find(cert.branches.begin(), cert.branches.end(), q) == cert.branches.end())
            cert.branches.push_back(q);
    cert.product = squared_branch_product(cert.branches);
    cert.word_bound = word_count_bound(canonical.piece_count(), canonical.max_degree());

    cert.constant = 0;
    for (std::size_t b = 0; b < cert.product.by_y.size(); ++b) {
        const Polynomial& px = cert.product.by_y[b];
        for (std::size_t a = 0; a < px.coeffs().size(); ++a) {
            const Rational& c = px.coeffs()[a];
            if (sgn(c) == 0) continue;
            if (b == 0) {
                cert.constant += c / static_cast<unsigned long>(a + 1);
                continue;
            }
            const MomentCombination m = moment_words(a, b, cap);
            cert.longest_pattern = std::max(cert.longest_pattern, a + b + 1);
            for (const auto& term : m.terms) cert.words[term.pattern] += c * term.coefficient;
        }
    }
    for (auto it = cert.words.begin(); it != cert.words.end();) {
        if (sgn(it->second) == 0)
            it = cert.words.erase(it);
        else
            ++it;
    }
    return cert;
}

std::map<Word, Rational> densities_for(const LimitFn& h, const std::map<Word, Rational>& patterns) {
    std::set<std::size_t> lengths;
    for (const auto& [u, c] : patterns) lengths.insert(u.size());
    const LimitVector hv(h);
    std::map<Word, Rational> out;
    for (std::size_t len : lengths) {
        DensityMap table = limit_density_table(hv, len);
        for (auto& [u, t] : table.entries)
            if (patterns.count(u)) out.emplace(u, std::move(t));
    }
    return out;
}

Rational ForcibilityCertificate::residual(const std::map<Word, Rational>& densities) const {
    Rational total = constant;
    for (const auto& [u, c] : words) {
        auto it = densities.find(u);
        if (it == densities.end()) throw DomainError("density for certificate word " + u.str() + " not supplied");
        total += c * it->second;
    }
    return total;
}

Rational ForcibilityCertificate::residual(const LimitFn& h) const { return residual(densities_for(h, words)); }

ForcingVerdict check_forced(const LimitFn& f, const LimitFn& h, const ForcibilityCertificate& cert) {
    const auto tf = densities_for(f, cert.words);
    const auto th = densities_for(h, cert.words);
    ForcingVerdict v;
    v.residual_other = cert.residual(th);
    for (const auto& [u, value] : tf) {
        const Rational& other = th.at(u);
        if (value != other) {
            v.distinguished = true;
            v.witness = u;
            v.density_target = value;
            v.density_other = other;
            return v;
        }
    }
    v.d1 = d1_fn(f, h);
    return v;
}

}  // namespace seqlimit
