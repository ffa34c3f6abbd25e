#include "seqlimit/property_testing.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "seqlimit/counting.hpp"
#include "seqlimit/error.hpp"
#include "seqlimit/parallel.hpp"

namespace seqlimit {

ForbiddenFamily::ForbiddenFamily(Alphabet alphabet, std::vector<Word> patterns)
    : alphabet_(std::move(alphabet)), patterns_(std::move(patterns)) {
    std::sort(patterns_.begin(), patterns_.end());
    patterns_.erase(std::unique(patterns_.begin(), patterns_.end()), patterns_.end());
    for (const auto& p : patterns_) {
        if (p.empty()) throw DomainError("forbidden patterns must be non-empty");
        if (!(p.alphabet() == alphabet_)) throw DomainError("forbidden pattern '" + p.str() + "' uses another alphabet");
    }
    for (const auto& p : patterns_) {
        radix_.push_back(p.size() + 1);
        if (state_count_ > std::numeric_limits<std::size_t>::max() / (p.size() + 1))
            state_count_ = std::numeric_limits<std::size_t>::max();
        else
            state_count_ *= p.size() + 1;
    }
}

ForbiddenFamily ForbiddenFamily::parse(std::string_view list, const Alphabet& alphabet) {
    std::vector<Word> patterns;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t comma = list.find(',', start);
        const std::size_t end = comma == std::string_view::npos ? list.size() : comma;
        std::string_view item = list.substr(start, end - start);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (!item.empty()) patterns.push_back(Word::parse(item, alphabet));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return ForbiddenFamily(alphabet, std::move(patterns));
}

bool ForbiddenFamily::is_dead(std::size_t state) const {
    for (std::size_t i = 0; i < radix_.size(); ++i) {
        if (state % radix_[i] == radix_[i] - 1) return true;
        state /= radix_[i];
    }
    return false;
}

std::size_t ForbiddenFamily::transition(std::size_t state, std::uint8_t letter) const {
    std::size_t next = 0, stride = 1, rest = state;
    for (std::size_t i = 0; i < radix_.size(); ++i) {
        std::size_t matched = rest % radix_[i];
        rest /= radix_[i];
        if (matched < patterns_[i].size() && patterns_[i][matched] == letter) ++matched;
        next += matched * stride;
        stride *= radix_[i];
    }
    return next;
}

bool is_member(const Word& w, const ForbiddenFamily& family) {
    for (const auto& p : family.patterns())
        if (contains_pattern(w, p)) return false;
    return true;
}

FamilyDistance d1_to_family(const Word& w, const ForbiddenFamily& family, std::size_t cap) {
    if (!(w.alphabet() == family.alphabet())) throw DomainError("word and family use different alphabets");
    if (family.state_count() > cap)
        throw CapExceeded("avoidance automaton with " + std::to_string(family.state_count()) +
                              " states (use brute force or sampling instead)",
                          cap);
    if (w.empty()) return {Rational(0), 0, w};

    struct Entry {
        std::size_t state;
        std::size_t cost;
        std::size_t parent;
        std::uint8_t letter;
    };
    const std::size_t k = w.alphabet().size();
    std::vector<std::vector<Entry>> layers;
    layers.push_back({{family.start_state(), 0, 0, 0}});
    for (std::size_t i = 0; i < w.size(); ++i) {
        const auto& prev = layers.back();
        std::vector<Entry> next;
        std::unordered_map<std::size_t, std::size_t> index;
        for (std::size_t e = 0; e < prev.size(); ++e) {
            for (std::size_t a = 0; a < k; ++a) {
                const auto letter = static_cast<std::uint8_t>(a);
                const std::size_t s = family.transition(prev[e].state, letter);
                if (family.is_dead(s)) continue;
                const std::size_t cost = prev[e].cost + (letter != w[i] ? 1 : 0);
                auto [it, fresh] = index.emplace(s, next.size());
                if (fresh) {
                    next.push_back({s, cost, e, letter});
                } else if (cost < next[it->second].cost) {
                    next[it->second] = {s, cost, e, letter};
                }
            }
        }
        if (next.empty())
            throw DomainError("the property has no word of length " + std::to_string(i + 1) +
                              "; distance undefined");
        layers.push_back(std::move(next));
    }
    const auto& last = layers.back();
    std::size_t best = 0;
    for (std::size_t e = 1; e < last.size(); ++e)
        if (last[e].cost < last[best].cost) best = e;

    std::vector<std::uint8_t> letters(w.size());
    std::size_t e = best;
    for (std::size_t i = w.size(); i >= 1; --i) {
        letters[i - 1] = layers[i][e].letter;
        e = layers[i][e].parent;
    }
    const std::size_t subs = last[best].cost;
    Rational d(static_cast<unsigned long>(subs), static_cast<unsigned long>(w.size()));
    d.canonicalize();
    return {d, subs, Word(w.alphabet(), std::move(letters))};
}

namespace {

std::size_t count_accepts(const Word& w, std::size_t len, std::size_t trials, const ForbiddenFamily& family,
                          const SeededStream& root, unsigned threads) {
    std::vector<std::uint8_t> accepted(trials, 0);
    parallel_for(trials, threads, [&](std::size_t i) {
        SeededStream s = root.substream(i);
        accepted[i] = is_member(random_subsequence(w, len, s), family) ? 1 : 0;
    });
    return static_cast<std::size_t>(std::count(accepted.begin(), accepted.end(), std::uint8_t{1}));
}

}  // namespace

TestReport run_tester(const Word& w, std::size_t len, std::size_t trials, const ForbiddenFamily& family,
                      std::uint64_t seed, unsigned threads, bool compute_distance) {
    if (len < 1 || len > w.size()) throw DomainError("sample length must lie in [1, |w|]");
    TestReport r;
    r.sample_length = len;
    r.trials = trials;
    r.seed = seed;
    r.prng = std::string(SeededStream::algorithm);
    r.accepted = count_accepts(w, len, trials, family, SeededStream(seed, 0), threads);
    r.accept_fraction = trials ? static_cast<double>(r.accepted) / static_cast<double>(trials) : 1.0;
    if (is_member(w, family) && r.accepted != trials)
        throw InvariantViolation("a member word rejected a sample: heredity violated");
    if (compute_distance && family.state_count() <= kDefaultAutomatonCap) r.distance = d1_to_family(w, family).distance;
    return r;
}

std::optional<Word> word_at_distance(const ForbiddenFamily& family, std::size_t n, std::size_t substitutions,
                                     std::uint64_t seed, std::size_t cap) {
    if (n == 0) throw DomainError("word_at_distance needs n >= 1");
    std::vector<Word> candidates;
    for (const auto& p : family.patterns()) {
        std::vector<std::uint8_t> letters(n);
        for (std::size_t i = 0; i < n; ++i) letters[i] = p[i % p.size()];
        candidates.emplace_back(family.alphabet(), std::move(letters));
    }
    SeededStream stream(seed, 0);
    for (int r = 0; r < 8; ++r) {
        std::vector<std::uint8_t> letters(n);
        for (auto& l : letters) l = static_cast<std::uint8_t>(stream.uniform_below(family.alphabet().size()));
        candidates.emplace_back(family.alphabet(), std::move(letters));
    }
    std::optional<FamilyDistance> far;
    Word far_word;
    for (const auto& c : candidates) {
        FamilyDistance d = d1_to_family(c, family, cap);
        if (!far || d.substitutions > far->substitutions) {
            far = std::move(d);
            far_word = c;
        }
    }
    if (far->substitutions < substitutions) return std::nullopt;

    const Word& member = far->witness;
    std::vector<std::size_t> diffs;
    for (std::size_t i = 0; i < n; ++i)
        if (member[i] != far_word[i]) diffs.push_back(i);
    auto walked = [&](std::size_t j) {
        std::vector<std::uint8_t> letters(member.letters().begin(), member.letters().end());
        for (std::size_t t = 0; t < j; ++t) letters[diffs[t]] = far_word[diffs[t]];
        return Word(family.alphabet(), std::move(letters));
    };
    if (substitutions == 0) return member;
    if (far->substitutions == substitutions) return far_word;
    std::size_t lo = 0, hi = diffs.size();
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        Word candidate = walked(mid);
        const std::size_t d = d1_to_family(candidate, family, cap).substitutions;
        if (d == substitutions) return candidate;
        if (d < substitutions)
            lo = mid;
        else
            hi = mid;
    }
    throw InvariantViolation("distance walk skipped a value; substitution distance is not 1-Lipschitz");
}

CurveTable completeness_soundness_curve(const ForbiddenFamily& family, std::size_t n,
                                        std::span<const std::size_t> lengths, std::span<const Rational> distances,
                                        std::size_t trials, std::uint64_t seed, unsigned threads) {
    if (lengths.empty() || distances.empty()) throw DomainError("curve grids must be non-empty");
    CurveTable table;
    table.n = n;
    table.trials = trials;
    table.seed = seed;
    table.prng = std::string(SeededStream::algorithm);
    const SeededStream root(seed, 0);
    for (std::size_t r = 0; r < distances.size(); ++r) {
        const Rational& target = distances[r];
        if (sgn(target) < 0 || target > 1) {
            table.notes.push_back("distance " + to_string(target) + " outside [0,1]; skipped");
            continue;
        }
        const BigInt k = floor(target * static_cast<unsigned long>(n) + Rational(1, 2));
        const auto subs = static_cast<std::size_t>(k.get_ui());
        const auto word = word_at_distance(family, n, subs, root.substream(r).next_u64());
        if (!word) {
            table.notes.push_back("distance " + to_string(target) + " unreachable at n = " + std::to_string(n) +
                                  "; skipped");
            continue;
        }
        Rational achieved(static_cast<unsigned long>(subs), static_cast<unsigned long>(n));
        achieved.canonicalize();
        for (std::size_t c = 0; c < lengths.size(); ++c) {
            const std::size_t len = lengths[c];
            if (len < 1 || len > n) {
                table.notes.push_back("sample length " + std::to_string(len) + " outside [1,n]; skipped");
                continue;
            }
            const SeededStream cell = root.substream(distances.size() + r * lengths.size() + c);
            const std::size_t acc = count_accepts(*word, len, trials, family, cell, threads);
            table.rows.push_back({target, achieved, len,
                                  trials ? static_cast<double>(acc) / static_cast<double>(trials) : 1.0});
        }
    }
    return table;
}

bool is_two_colorable(const Word& w, const ForbiddenFamily& first, const ForbiddenFamily& second, std::size_t cap) {
    if (first.state_count() > cap) throw CapExceeded("first automaton", cap);
    if (second.state_count() > cap) throw CapExceeded("second automaton", cap);
    using Pair = std::pair<std::size_t, std::size_t>;
    auto hash = [](const Pair& p) { return std::hash<std::size_t>()(p.first * 1000003u ^ p.second); };
    std::unordered_set<Pair, decltype(hash)> layer(16, hash);
    layer.insert({first.start_state(), second.start_state()});
    for (std::size_t i = 0; i < w.size(); ++i) {
        std::unordered_set<Pair, decltype(hash)> next(16, hash);
        for (const auto& [a, b] : layer) {
            const std::size_t a2 = first.transition(a, w[i]);
            if (!first.is_dead(a2)) next.insert({a2, b});
            const std::size_t b2 = second.transition(b, w[i]);
            if (!second.is_dead(b2)) next.insert({a, b2});
        }
        if (next.empty()) return false;
        layer = std::move(next);
    }
    return true;
}

}  // namespace seqlimit
