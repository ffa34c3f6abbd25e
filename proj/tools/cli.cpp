#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "seqlimit/counting.hpp"
#include "seqlimit/error.hpp"
#include "seqlimit/io.hpp"
#include "seqlimit/limits.hpp"
#include "seqlimit/moments.hpp"
#include "seqlimit/parallel.hpp"
#include "seqlimit/permutons.hpp"
#include "seqlimit/property_testing.hpp"
#include "seqlimit/random.hpp"
#include "seqlimit/regularity.hpp"
#include "seqlimit/sampling.hpp"
#include "seqlimit/uniformity.hpp"

namespace seqlimit::cli {

namespace {

using io::Json;

struct Globals {
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string format = "json";
    std::string config;
};

/// A usage problem detected after CLI11 parsing (missing input, conflicting
/// inputs); reported like a CLI11 error.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string prng_id() { return std::string(SeededStream::algorithm); }

Json rat(const Rational& q) { return io::to_json(q); }

Json real_point(const RealPoint& p) { return Json{{"value", rat(p.value)}, {"exact", p.exact}}; }

Alphabet alphabet_of(const std::string& symbols) { return symbols.empty() ? Alphabet::binary() : Alphabet(symbols); }

/// A literal word, or the path of a word file when one exists.
Word load_word(const std::string& spec, const std::string& alphabet) {
    if (std::filesystem::is_regular_file(spec)) return io::read_word_file(spec, alphabet_of(alphabet));
    return Word::parse(spec, alphabet_of(alphabet));
}

struct LoadedLimit {
    std::optional<LimitFn> fn;
    LimitVector vec;
};

LoadedLimit load_limit_json(const Json& j) {
    if (j.is_object() && j.contains("components")) {
        LimitVector v = io::limit_vector_from_json(j);
        return {std::nullopt, std::move(v)};
    }
    LimitFn f = io::limit_from_json(j);
    return {f, LimitVector(f)};
}

LoadedLimit load_limit(const std::string& path) { return load_limit_json(io::read_json_file(path)); }

LimitFn load_binary_limit(const std::string& path) {
    LoadedLimit l = load_limit(path);
    if (!l.fn) throw DomainError(path + ": a binary limit function is required here");
    return *l.fn;
}

Permutation parse_pattern_text(const std::string& text) {
    if (text.find(',') != std::string::npos) return Permutation::parse(text);
    std::vector<std::uint32_t> values;
    for (char c : text) {
        if (c < '1' || c > '9') throw DomainError("pattern \"" + text + "\" must be digits or comma separated");
        values.push_back(static_cast<std::uint32_t>(c - '0'));
    }
    return Permutation(std::move(values));
}

/// A permutation literal, or the path of a permutation file.
Permutation load_permutation(const std::string& spec) {
    if (std::filesystem::is_regular_file(spec)) return io::read_permutation_file(spec);
    return Permutation::parse(spec);
}

GridMeasure load_measure(const std::string& path) {
    if (std::filesystem::path(path).extension() == ".json") return io::grid_from_json(io::read_json_file(path));
    return mu_sigma(load_permutation(path));
}

std::string csv_field(double x) { return io::format_double(x); }

struct Output {
    bool csv = false;
    std::string text;
};

Output emit(const Globals& g, const Json& json, const std::string& csv) {
    if (g.format == "csv") return {true, csv};
    return {false, io::dump(json)};
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
    std::string word_file;
    std::string word;
    std::string alphabet;
    std::string d;
    std::size_t kmax = 16;
    bool json = false;
    bool csv = false;
};

Output run_analyze(Globals g, const AnalyzeArgs& a) {
    if (a.json && a.csv) throw UsageError("--json and --csv are mutually exclusive");
    if (a.json) g.format = "json";
    if (a.csv) g.format = "csv";
    if (a.word.empty() == a.word_file.empty()) throw UsageError("analyze needs exactly one of <word-file> or --word");
    const Word w = a.word.empty() ? io::read_word_file(a.word_file, alphabet_of(a.alphabet)) : load_word(a.word, a.alphabet);
    std::optional<Rational> d;
    if (!a.d.empty()) d = parse_rational(a.d);
    const QuasirandomnessDiagnostics q = quasirandomness_report(w, a.kmax, d, g.threads);
    const UniformityReport& u = q.uniformity;

    Json residuals = Json::array();
    for (const auto& [p, v] : q.residuals) residuals.push_back(Json{{"pattern", p.str()}, {"deviation", rat(v)}});
    Json sums = Json::array();
    for (std::size_t k = 0; k < q.exponential_sums.size(); ++k) {
        const auto z = q.exponential_sums[k];
        sums.push_back(Json{{"k", k + 1}, {"re", z.real()}, {"im", z.imag()}, {"modulus", std::abs(z)}});
    }
    Json cayley = Json::array();
    for (const auto& [p, c] : q.cayley_counts) cayley.push_back(Json{{"pattern", p.str()}, {"count", to_string(c)}});
    Json doc{{"length", w.size()},
             {"ones", w.count(1)},
             {"uniformity",
              Json{{"density", rat(u.density)},
                   {"discrepancy", rat(u.discrepancy)},
                   {"raw", rat(u.raw)},
                   {"witness", Json{{"first", u.witness.first}, {"last", u.witness.last}}},
                   {"reference_density", rat(u.reference_density)},
                   {"reference_discrepancy", rat(u.reference_discrepancy)}}},
             {"residual_density", rat(q.residual_density)},
             {"residuals", residuals},
             {"exponential_sums", sums},
             {"cayley_counts", cayley}};

    std::ostringstream csv;
    csv << "quantity,key,value\n";
    csv << "uniformity,density," << to_string(u.density) << "\n";
    csv << "uniformity,discrepancy," << to_string(u.discrepancy) << "\n";
    csv << "uniformity,raw," << to_string(u.raw) << "\n";
    csv << "uniformity,witness_first," << u.witness.first << "\n";
    csv << "uniformity,witness_last," << u.witness.last << "\n";
    csv << "uniformity,reference_density," << to_string(u.reference_density) << "\n";
    csv << "uniformity,reference_discrepancy," << to_string(u.reference_discrepancy) << "\n";
    csv << "residual,density," << to_string(q.residual_density) << "\n";
    for (const auto& [p, v] : q.residuals) csv << "residual," << p.str() << "," << to_string(v) << "\n";
    for (std::size_t k = 0; k < q.exponential_sums.size(); ++k)
        csv << "exponential_sum_modulus," << k + 1 << "," << csv_field(std::abs(q.exponential_sums[k])) << "\n";
    for (const auto& [p, c] : q.cayley_counts) csv << "cayley_count," << p.str() << "," << to_string(c) << "\n";
    return emit(g, doc, csv.str());
}

// ---------------------------------------------------------------- density

struct DensityArgs {
    std::string word;
    std::string limit;
    std::string alphabet;
    std::string pattern;
    std::size_t length = 0;
    std::size_t cap = kDefaultDensityTableCap;
};

Output run_density(const Globals& g, const DensityArgs& a) {
    if (a.word.empty() == a.limit.empty()) throw UsageError("density needs exactly one of --word or --limit");
    if (a.pattern.empty() == (a.length == 0)) throw UsageError("density needs exactly one of --pattern or --length");
    if (!a.word.empty()) {
        const Word w = load_word(a.word, a.alphabet);
        if (!a.pattern.empty()) {
            const Rational t = pattern_density(w, Word::parse(a.pattern, w.alphabet()));
            return emit(g, Json{{"t", rat(t)}}, "pattern,t\n" + a.pattern + "," + to_string(t) + "\n");
        }
        const DensityMap map = density_table(w, a.length, a.cap, g.threads);
        return emit(g, io::to_json(map), io::to_csv(map));
    }
    const LoadedLimit f = load_limit(a.limit);
    if (!a.pattern.empty()) {
        const Word u = Word::parse(a.pattern, f.vec.alphabet());
        const Rational t = f.fn ? t_density(u, *f.fn) : t_density(u, f.vec);
        return emit(g, Json{{"t", rat(t)}}, "pattern,t\n" + a.pattern + "," + to_string(t) + "\n");
    }
    const DensityMap map = limit_density_table(f.vec, a.length, a.cap);
    return emit(g, io::to_json(map), io::to_csv(map));
}

// ---------------------------------------------------------------- distance

struct DistanceArgs {
    bool box = false;
    bool l1 = false;
    std::string first;
    std::string second;
};

Output run_distance(const Globals& g, const DistanceArgs& a) {
    if (a.box == a.l1) throw UsageError("distance needs exactly one of --box or --l1");
    const LimitFn f = load_binary_limit(a.first);
    const LimitFn h = load_binary_limit(a.second);
    const RealPoint d = a.box ? d_box(f, h) : d1_fn(f, h);
    const std::string metric = a.box ? "box" : "l1";
    return emit(g, Json{{"metric", metric}, {"distance", rat(d.value)}, {"exact", d.exact}},
                "metric,distance,exact\n" + metric + "," + to_string(d.value) + "," + (d.exact ? "true" : "false") + "\n");
}

// ---------------------------------------------------------------- sample

struct SampleArgs {
    std::string limit;
    std::size_t n = 0;
    std::size_t trials = 1;
    double tail = 0.0;
};

Json tail_json(const TailExperiment& t, std::size_t n, double a) {
    return Json{{"n", n},
                {"a", a},
                {"threshold", t.threshold},
                {"empirical", t.empirical},
                {"bound", t.bound},
                {"slack", t.slack},
                {"exceed", t.exceed},
                {"within_bound", t.within_bound()},
                {"trials", t.trials},
                {"seed", t.seed},
                {"prng", t.prng}};
}

std::string tail_csv(const TailExperiment& t, std::size_t n, double a) {
    std::ostringstream csv;
    csv << "n,a,empirical,bound,slack,trials,seed,prng\n"
        << n << "," << csv_field(a) << "," << csv_field(t.empirical) << "," << csv_field(t.bound) << ","
        << csv_field(t.slack) << "," << t.trials << "," << t.seed << "," << t.prng << "\n";
    return csv.str();
}

Output run_sample(const Globals& g, const SampleArgs& a) {
    const LoadedLimit f = load_limit(a.limit);
    if (a.tail > 0.0) {
        if (!f.fn) throw DomainError("the tail experiment needs a binary limit function");
        const TailExperiment t = tail_experiment_dbox(*f.fn, a.n, a.tail, a.trials, g.seed, g.threads);
        return emit(g, tail_json(t, a.n, a.tail), tail_csv(t, a.n, a.tail));
    }
    std::vector<Word> words(a.trials);
    std::vector<Rational> dist(a.trials);
    const SeededStream root(g.seed, 0);
    parallel_for(a.trials, g.threads, [&](std::size_t i) {
        SeededStream s = root.substream(i);
        words[i] = f.fn ? f_random_word(*f.fn, a.n, s) : f_random_word(f.vec, a.n, s);
        const LimitVector assoc = associated_vector(words[i]);
        Rational worst(0);
        for (std::size_t letter = 0; letter < f.vec.alphabet().size(); ++letter) {
            const auto l = static_cast<std::uint8_t>(letter);
            const Rational d = box_norm(assoc.component(l) - f.vec.component(l)).value;
            if (d > worst) worst = d;
        }
        dist[i] = worst;
    });
    Json samples = Json::array();
    std::ostringstream csv;
    csv << "trial,word,d_box,seed,prng\n";
    for (std::size_t i = 0; i < a.trials; ++i) {
        samples.push_back(Json{{"trial", i}, {"word", words[i].str()}, {"d_box", rat(dist[i])}});
        csv << i << "," << words[i].str() << "," << to_string(dist[i]) << "," << g.seed << "," << prng_id() << "\n";
    }
    return emit(g, Json{{"n", a.n}, {"trials", a.trials}, {"seed", g.seed}, {"prng", prng_id()}, {"samples", samples}},
                csv.str());
}

// ---------------------------------------------------------------- regularize

struct RegularizeArgs {
    std::string limit;
    std::string eps;
    std::string init;
};

Output run_regularize(const Globals& g, const RegularizeArgs& a) {
    const LimitFn f = load_binary_limit(a.limit);
    const Rational eps = parse_rational(a.eps);
    const IntervalPartition p0 = a.init.empty() ? IntervalPartition() : io::partition_from_json(io::read_json_file(a.init));
    const RegularityResult r = weak_regularity(f.poly(), eps, p0);
    const auto& pts = r.partition.points();
    Json bps = Json::array();
    Json values = Json::array();
    Json trace = Json::array();
    std::ostringstream csv;
    csv << "left,right,value\n";
    for (const auto& p : pts) bps.push_back(rat(p));
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const Rational v = f.poly().integral(pts[i], pts[i + 1]) / (pts[i + 1] - pts[i]);
        values.push_back(rat(v));
        csv << to_string(pts[i]) << "," << to_string(pts[i + 1]) << "," << to_string(v) << "\n";
    }
    for (const auto& e : r.energy_trace) trace.push_back(rat(e));
    return emit(g,
                Json{{"breakpoints", bps},
                     {"values", values},
                     {"box_error", rat(r.box_error.value)},
                     {"box_error_exact", r.box_error.exact},
                     {"iterations", r.iterations},
                     {"energy_trace", trace},
                     {"atom_bound", r.atom_bound}},
                csv.str());
}

// ---------------------------------------------------------------- test

struct TestArgs {
    std::string word;
    std::string alphabet;
    std::string forbid;
    std::size_t len = 0;
    std::size_t trials = 1000;
    bool no_distance = false;
    bool curve = false;
    std::size_t n = 0;
    std::vector<std::size_t> lengths;
    std::vector<std::string> distances;
};

Json curve_json(const CurveTable& t) {
    Json rows = Json::array();
    for (const auto& r : t.rows)
        rows.push_back(Json{{"distance", rat(r.target_distance)},
                            {"achieved_distance", rat(r.achieved_distance)},
                            {"ell", r.sample_length},
                            {"accept_fraction", r.accept_fraction}});
    return Json{{"n", t.n}, {"trials", t.trials}, {"seed", t.seed}, {"prng", t.prng}, {"rows", rows}, {"notes", t.notes}};
}

std::string curve_csv(const CurveTable& t) {
    std::ostringstream csv;
    csv << "distance,ell,accept_fraction,trials,seed,prng\n";
    for (const auto& r : t.rows)
        csv << csv_field(to_double(r.achieved_distance)) << "," << r.sample_length << "," << csv_field(r.accept_fraction)
            << "," << t.trials << "," << t.seed << "," << t.prng << "\n";
    return csv.str();
}

Output run_test(const Globals& g, const TestArgs& a) {
    if (a.forbid.empty()) throw UsageError("test needs --forbid");
    const ForbiddenFamily family = ForbiddenFamily::parse(a.forbid, alphabet_of(a.alphabet));
    if (a.curve) {
        if (a.n == 0 || a.lengths.empty() || a.distances.empty())
            throw UsageError("test --curve needs --n, --lengths and --distances");
        std::vector<Rational> ds;
        for (const auto& d : a.distances) ds.push_back(parse_rational(d));
        const CurveTable t = completeness_soundness_curve(family, a.n, a.lengths, ds, a.trials, g.seed, g.threads);
        return emit(g, curve_json(t), curve_csv(t));
    }
    if (a.word.empty() || a.len == 0) throw UsageError("test needs --word and --len (or --curve)");
    const Word w = load_word(a.word, a.alphabet);
    const TestReport r = run_tester(w, a.len, a.trials, family, g.seed, g.threads, !a.no_distance);
    Json doc{{"sample_length", r.sample_length},
             {"trials", r.trials},
             {"accepted", r.accepted},
             {"accept_fraction", r.accept_fraction},
             {"distance", r.distance ? rat(*r.distance) : Json(nullptr)},
             {"seed", r.seed},
             {"prng", r.prng}};
    std::ostringstream csv;
    csv << "distance,ell,accept_fraction,trials,seed,prng\n"
        << (r.distance ? csv_field(to_double(*r.distance)) : std::string()) << "," << r.sample_length << ","
        << csv_field(r.accept_fraction) << "," << r.trials << "," << r.seed << "," << r.prng << "\n";
    return emit(g, doc, csv.str());
}

// ---------------------------------------------------------------- forcibility

struct ForcibilityArgs {
    std::string limit;
    std::string check;
    std::size_t cap = kDefaultMomentPatternCap;
};

Output run_forcibility(const Globals& g, const ForcibilityArgs& a) {
    const LimitFn f = load_binary_limit(a.limit);
    const ForcibilityCertificate cert = forcibility_certificate(f, a.cap);
    Json words = Json::array();
    std::ostringstream csv;
    csv << "pattern,coefficient\n";
    for (const auto& [u, c] : cert.words) {
        words.push_back(Json{{"pattern", u.str()}, {"coefficient", rat(c)}});
        csv << u.str() << "," << to_string(c) << "\n";
    }
    Json branches = Json::array();
    for (const auto& b : cert.branches) {
        Json coeffs = Json::array();
        for (const auto& c : b.coeffs()) coeffs.push_back(rat(c));
        branches.push_back(coeffs);
    }
    Json doc{{"target", io::to_json(f.poly())},
             {"branches", branches},
             {"constant", rat(cert.constant)},
             {"words", words},
             {"longest_pattern", cert.longest_pattern},
             {"word_bound", to_string(cert.word_bound)},
             {"residual", rat(cert.residual(f))}};
    if (!a.check.empty()) {
        const LimitFn h = load_binary_limit(a.check);
        const ForcingVerdict v = check_forced(f, h, cert);
        doc["check"] = Json{{"distinguished", v.distinguished},
                            {"witness", v.witness ? Json(v.witness->str()) : Json(nullptr)},
                            {"density_target", rat(v.density_target)},
                            {"density_other", rat(v.density_other)},
                            {"residual", rat(v.residual_other)},
                            {"d1", real_point(v.d1)}};
    }
    return emit(g, doc, csv.str());
}

// ---------------------------------------------------------------- permuton

struct PermutonDensityArgs {
    std::string perm;
    std::string measure;
    std::string pattern;
    std::size_t cap = kDefaultPatternSizeCap;
    std::size_t samples = 100000;
};

Output run_permuton_density(const Globals& g, const PermutonDensityArgs& a) {
    if (a.perm.empty() == a.measure.empty()) throw UsageError("permuton density needs exactly one of --perm or --measure");
    const Permutation tau = parse_pattern_text(a.pattern);
    if (!a.perm.empty()) {
        const Rational t = t_perm(tau, load_permutation(a.perm), a.cap);
        return emit(g, Json{{"pattern", tau.str()}, {"t", rat(t)}},
                    "pattern,t\n\"" + tau.str() + "\"," + to_string(t) + "\n");
    }
    const GridMeasure mu = io::grid_from_json(io::read_json_file(a.measure));
    const GridDensity d = t_grid(tau, mu, a.cap, a.samples, g.seed);
    Json doc{{"pattern", tau.str()}, {"exact", d.exact}};
    std::ostringstream csv;
    if (d.exact) {
        doc["t"] = rat(d.value);
        csv << "pattern,t\n\"" << tau.str() << "\"," << to_string(d.value) << "\n";
    } else {
        doc["estimate"] = d.estimate;
        doc["ci_halfwidth"] = d.ci_halfwidth;
        doc["trials"] = d.samples;
        doc["seed"] = g.seed;
        doc["prng"] = prng_id();
        csv << "pattern,estimate,ci_halfwidth,trials,seed,prng\n\"" << tau.str() << "\"," << csv_field(d.estimate)
            << "," << csv_field(d.ci_halfwidth) << "," << d.samples << "," << g.seed << "," << prng_id() << "\n";
    }
    return emit(g, doc, csv.str());
}

struct PermutonDistanceArgs {
    std::string first;
    std::string second;
};

Output run_permuton_distance(const Globals& g, const PermutonDistanceArgs& a) {
    const Rational d = d_box_grid(load_measure(a.first), load_measure(a.second));
    return emit(g, Json{{"d_box", rat(d)}}, "d_box\n" + to_string(d) + "\n");
}

// ---------------------------------------------------------------- experiment

struct ExperimentArgs {
    std::string spec;
    std::string out_dir;
};

const Json* find(const Json& j, const char* key) { return j.contains(key) ? &j.at(key) : nullptr; }

template <class T>
T param(const Json& j, const char* key, T fallback) {
    const Json* v = find(j, key);
    return v ? v->get<T>() : fallback;
}

Rational rational_param(const Json& j) {
    if (j.is_number_float()) return parse_rational(j.dump());
    return io::rational_from_json(j, "distance");
}

LimitFn experiment_limit(const Json& e) {
    if (const Json* l = find(e, "limit")) return io::limit_from_json(*l);
    if (const Json* p = find(e, "limit_file")) return io::limit_from_json(io::read_json_file(p->get<std::string>()));
    return LimitFn::constant(Rational(1, 2));
}

struct ExperimentResult {
    std::string name;
    std::string kind;
    bool ok = false;
    Json result;
    std::string csv;
    std::string error;
};

ExperimentResult run_one_experiment(const Json& e, std::size_t index, std::uint64_t default_seed, unsigned threads) {
    ExperimentResult r;
    r.kind = e.is_object() ? param<std::string>(e, "kind", "") : "";
    r.name = e.is_object() ? param<std::string>(e, "name", r.kind + "_" + std::to_string(index)) : std::to_string(index);
    try {
        if (!e.is_object()) throw DomainError("experiment entries must be objects");
        const std::uint64_t seed = param<std::uint64_t>(e, "seed", default_seed);
        if (r.kind == "tail_dbox") {
            const std::size_t n = param<std::size_t>(e, "n", 400);
            const double a = param<double>(e, "a", 0.1);
            const TailExperiment t =
                tail_experiment_dbox(experiment_limit(e), n, a, param<std::size_t>(e, "trials", 2000), seed, threads);
            r.result = tail_json(t, n, a);
            r.csv = tail_csv(t, n, a);
        } else if (r.kind == "tester_curve") {
            const ForbiddenFamily family =
                ForbiddenFamily::parse(param<std::string>(e, "forbid", "10"), alphabet_of(param<std::string>(e, "alphabet", "")));
            const auto lengths = param<std::vector<std::size_t>>(e, "lengths", {10, 20, 30});
            std::vector<Rational> ds;
            if (const Json* d = find(e, "distances")) {
                for (const auto& x : *d) ds.push_back(rational_param(x));
            } else {
                ds = {Rational(0), Rational(1, 10), Rational(1, 4)};
            }
            const CurveTable t = completeness_soundness_curve(family, param<std::size_t>(e, "n", 200), lengths, ds,
                                                              param<std::size_t>(e, "trials", 1000), seed, threads);
            r.result = curve_json(t);
            r.csv = curve_csv(t);
        } else if (r.kind == "convergence") {
            const auto ns = param<std::vector<std::size_t>>(e, "ns", {100, 1000, 10000});
            const std::size_t trials = param<std::size_t>(e, "trials", 100);
            const auto points = convergence_trace(experiment_limit(e), ns, trials, seed, threads);
            Json rows = Json::array();
            std::ostringstream csv;
            csv << "n,median,mean,trials,seed,prng\n";
            for (const auto& p : points) {
                rows.push_back(Json{{"n", p.n}, {"median", p.median}, {"mean", p.mean}});
                csv << p.n << "," << csv_field(p.median) << "," << csv_field(p.mean) << "," << trials << "," << seed << ","
                    << prng_id() << "\n";
            }
            r.result = Json{{"trials", trials}, {"seed", seed}, {"prng", prng_id()}, {"rows", rows}};
            r.csv = csv.str();
        } else {
            throw DomainError("unknown experiment kind \"" + r.kind + "\"");
        }
        r.ok = true;
    } catch (const std::exception& ex) {
        r.ok = false;
        r.error = ex.what();
    }
    return r;
}

int run_experiment(const Globals& g, const ExperimentArgs& a, std::ostream& out, std::ostream& err) {
    const Json spec = io::read_json_file(a.spec);
    Json entries = Json::array();
    if (spec.is_array()) {
        entries = spec;
    } else if (spec.is_object()) {
        if (const Json* e = find(spec, "experiments")) entries = *e;
    } else {
        throw DomainError(a.spec + ": experiment spec must be an object or an array");
    }
    if (!entries.is_array()) throw DomainError(a.spec + ": \"experiments\" must be an array");

    std::vector<ExperimentResult> results(entries.size());
    const unsigned inner = entries.size() > 1 ? 1u : g.threads;
    parallel_for(entries.size(), g.threads,
                 [&](std::size_t i) { results[i] = run_one_experiment(entries[i], i, g.seed, inner); });

    const bool csv = g.format == "csv";
    if (!a.out_dir.empty()) std::filesystem::create_directories(a.out_dir);
    Json bundle_entries = Json::array();
    std::string csv_bundle;
    bool failed = false;
    for (const auto& r : results) {
        Json entry{{"name", r.name}, {"kind", r.kind}, {"status", r.ok ? "ok" : "error"}};
        if (r.ok) {
            entry["result"] = r.result;
            if (!a.out_dir.empty()) {
                const auto path = std::filesystem::path(a.out_dir) / (r.name + (csv ? ".csv" : ".json"));
                std::ofstream file(path, std::ios::binary);
                file << (csv ? r.csv : io::dump(r.result));
                if (!file) throw DomainError("cannot write " + path.string());
                entry["file"] = path.string();
            }
            csv_bundle += "# " + r.name + "\n" + r.csv;
        } else {
            failed = true;
            entry["error"] = r.error;
            err << "experiment " << r.name << ": " << r.error << "\n";
        }
        bundle_entries.push_back(entry);
    }
    if (csv && a.out_dir.empty())
        out << csv_bundle;
    else
        out << io::dump(Json{{"seed", g.seed}, {"prng", prng_id()}, {"experiments", bundle_entries}});
    return failed ? kExitFailure : kExitOk;
}

// ---------------------------------------------------------------- config

std::string flag_name(const std::string& key) {
    std::string s = key;
    std::replace(s.begin(), s.end(), '_', '-');
    return "--" + s;
}

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
    return std::any_of(args.begin(), args.end(),
                       [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

std::string scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

/// Appends the entries of a --config JSON object as flags that the command
/// line does not already set.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;
    const Json cfg = io::read_json_file(path);
    if (!cfg.is_object()) throw ParseError(path, 1, "config must be a JSON object");
    std::vector<std::string> extra;
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        const std::string flag = flag_name(it.key());
        if (flag == "--config" || has_flag(args, flag)) continue;
        const Json& v = it.value();
        if (v.is_boolean()) {
            if (v.get<bool>()) extra.push_back(flag);
        } else if (v.is_array()) {
            std::string joined;
            for (std::size_t i = 0; i < v.size(); ++i) joined += (i ? "," : "") + scalar_text(v[i]);
            extra.push_back(flag);
            extra.push_back(joined);
        } else if (!v.is_null()) {
            extra.push_back(flag);
            extra.push_back(scalar_text(v));
        }
    }
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
}

}  // namespace

int dispatch(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    Globals g;
    AnalyzeArgs analyze;
    DensityArgs density;
    DistanceArgs distance;
    SampleArgs sample;
    RegularizeArgs regularize;
    TestArgs test;
    ForcibilityArgs forcibility;
    PermutonDensityArgs pdensity;
    PermutonDistanceArgs pdistance;
    ExperimentArgs experiment;

    CLI::App app{"Subsequence densities, word limits, permutons and property testing", "seqlimit"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--seed", g.seed, "Seed for every randomized step");
    app.add_option("--threads", g.threads, "Worker threads (0: $SEQLIMIT_THREADS or all cores)");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--config", g.config, "JSON object whose keys mirror the long flags");

    auto* a = app.add_subcommand("analyze", "Uniformity and quasirandomness diagnostics of a binary word");
    a->add_option("word-file", analyze.word_file, "Word file");
    a->add_option("--word", analyze.word, "Literal word or word file");
    a->add_option("--alphabet", analyze.alphabet, "Alphabet symbols, e.g. 01");
    a->add_option("--d", analyze.d, "Density for the counting residuals (default ||w||_1/n)");
    a->add_option("--kmax", analyze.kmax, "Largest frequency for exponential sums");
    a->add_flag("--json", analyze.json, "Same as --format json");
    a->add_flag("--csv", analyze.csv, "Same as --format csv");

    auto* d = app.add_subcommand("density", "Pattern densities of a word or a limit");
    d->add_option("--word", density.word, "Literal word or word file");
    d->add_option("--limit", density.limit, "Limit function or limit vector JSON");
    d->add_option("--alphabet", density.alphabet, "Alphabet symbols");
    d->add_option("--pattern", density.pattern, "Single pattern");
    d->add_option("--length", density.length, "Emit the full table for this pattern length");
    d->add_option("--cap", density.cap, "Largest table size");

    auto* di = app.add_subcommand("distance", "Distance between two limit functions");
    di->add_flag("--box", distance.box, "Interval (box) distance");
    di->add_flag("--l1", distance.l1, "L1 distance");
    di->add_option("first", distance.first, "Limit JSON")->required();
    di->add_option("second", distance.second, "Limit JSON")->required();

    auto* s = app.add_subcommand("sample", "Random words sampled from a limit");
    s->add_option("--limit", sample.limit, "Limit function or limit vector JSON")->required();
    s->add_option("--n", sample.n, "Word length")->required();
    s->add_option("--trials", sample.trials, "Number of words");
    s->add_option("--tail", sample.tail, "Run the box-distance tail experiment with this a");

    auto* r = app.add_subcommand("regularize", "Weak regularity partition of a limit function");
    r->add_option("--limit", regularize.limit, "Limit function JSON")->required();
    r->add_option("--eps", regularize.eps, "Target box error (rational or decimal)")->required();
    r->add_option("--init", regularize.init, "Initial partition JSON");

    auto* t = app.add_subcommand("test", "Sampling tester for a forbidden-pattern property");
    t->add_option("--word", test.word, "Literal word or word file");
    t->add_option("--alphabet", test.alphabet, "Alphabet symbols");
    t->add_option("--forbid", test.forbid, "Forbidden patterns, comma separated")->required();
    t->add_option("--len", test.len, "Sample length");
    t->add_option("--trials", test.trials, "Number of samples");
    t->add_flag("--no-distance", test.no_distance, "Skip the exact distance to the property");
    t->add_flag("--curve", test.curve, "Accept fractions over distances and sample lengths");
    t->add_option("--n", test.n, "Word length for --curve");
    t->add_option("--lengths", test.lengths, "Sample lengths for --curve")->delimiter(',');
    t->add_option("--distances", test.distances, "Target distances for --curve")->delimiter(',');

    auto* f = app.add_subcommand("forcibility", "Forcing certificate for a piecewise polynomial limit");
    f->add_option("--limit", forcibility.limit, "Limit function JSON")->required();
    f->add_option("--check", forcibility.check, "Second limit to compare against the certificate");
    f->add_option("--cap", forcibility.cap, "Longest pattern allowed");

    auto* p = app.add_subcommand("permuton", "Permutation pattern densities and permuton distances");
    p->require_subcommand(1);
    auto* pd = p->add_subcommand("density", "Density of a pattern in a permutation or grid measure");
    pd->add_option("--perm", pdensity.perm, "Permutation literal or file");
    pd->add_option("--measure", pdensity.measure, "Grid measure JSON");
    pd->add_option("--pattern", pdensity.pattern, "Pattern, e.g. 231 or 2,3,1")->required();
    pd->add_option("--cap", pdensity.cap, "Largest pattern size computed exactly");
    pd->add_option("--samples", pdensity.samples, "Monte Carlo draws above the cap");
    auto* px = p->add_subcommand("distance", "Box distance between two grid measures or permutations");
    px->add_option("first", pdistance.first, "Grid measure JSON or permutation file")->required();
    px->add_option("second", pdistance.second, "Grid measure JSON or permutation file")->required();

    auto* e = app.add_subcommand("experiment", "Run a batch of experiments from a JSON spec");
    e->add_option("spec", experiment.spec, "Experiment spec JSON")->required();
    e->add_option("--out-dir", experiment.out_dir, "Write one file per experiment here");

    try {
        const std::vector<std::string> args = expand_config(raw_args);
        std::vector<const char*> argv{"seqlimit"};
        for (const auto& arg : args) argv.push_back(arg.c_str());
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp&) {
            out << app.help();
            return kExitOk;
        } catch (const CLI::ParseError& ex) {
            err << "seqlimit: " << ex.what() << "\n";
            return kExitUsage;
        }
        set_default_threads(g.threads);

        Output o;
        if (a->parsed()) {
            o = run_analyze(g, analyze);
        } else if (d->parsed()) {
            o = run_density(g, density);
        } else if (di->parsed()) {
            o = run_distance(g, distance);
        } else if (s->parsed()) {
            o = run_sample(g, sample);
        } else if (r->parsed()) {
            o = run_regularize(g, regularize);
        } else if (t->parsed()) {
            o = run_test(g, test);
        } else if (f->parsed()) {
            o = run_forcibility(g, forcibility);
        } else if (pd->parsed()) {
            o = run_permuton_density(g, pdensity);
        } else if (px->parsed()) {
            o = run_permuton_distance(g, pdistance);
        } else if (e->parsed()) {
            return run_experiment(g, experiment, out, err);
        }
        out << o.text;
        return kExitOk;
    } catch (const UsageError& ex) {
        err << "seqlimit: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const Error& ex) {
        err << "seqlimit: " << ex.what() << "\n";
        return kExitFailure;
    } catch (const nlohmann::json::exception& ex) {
        err << "seqlimit: " << ex.what() << "\n";
        return kExitFailure;
    } catch (const std::filesystem::filesystem_error& ex) {
        err << "seqlimit: " << ex.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace seqlimit::cli
