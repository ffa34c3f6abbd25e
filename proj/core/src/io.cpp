#include "seqlimit/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "seqlimit/error.hpp"

namespace seqlimit::io {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, 0, "cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::size_t line_of(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

const Json& member(const Json& j, const char* key, std::string_view what) {
    if (!j.is_object() || !j.contains(key))
        throw DomainError(std::string(what) + ": missing field \"" + key + "\"");
    return j.at(key);
}

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j, std::string_view what) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) return Rational(BigInt(std::to_string(j.get<std::uint64_t>())));
        return Rational(BigInt(std::to_string(j.get<std::int64_t>())));
    }
    throw DomainError(std::string(what) + ": expected a rational string or integer");
}

Json to_json(const PiecewisePoly& f) {
    Json out = Json::object();
    Json bps = Json::array();
    for (const auto& b : f.breakpoints()) bps.push_back(to_json(b));
    Json pieces = Json::array();
    for (const auto& p : f.pieces()) {
        Json coeffs = Json::array();
        for (const auto& c : p.coeffs()) coeffs.push_back(to_json(c));
        if (coeffs.empty()) coeffs.push_back("0");
        pieces.push_back(Json{{"coeffs", coeffs}});
    }
    out["breakpoints"] = bps;
    out["pieces"] = pieces;
    return out;
}

PiecewisePoly piecewise_from_json(const Json& j) {
    const Json& bps = member(j, "breakpoints", "limit");
    const Json& pieces = member(j, "pieces", "limit");
    if (!bps.is_array() || !pieces.is_array()) throw DomainError("limit: breakpoints and pieces must be arrays");
    std::vector<Rational> breakpoints;
    for (const auto& b : bps) breakpoints.push_back(rational_from_json(b, "breakpoint"));
    std::vector<Polynomial> polys;
    for (const auto& p : pieces) {
        const Json& coeffs = p.is_array() ? p : member(p, "coeffs", "piece");
        std::vector<Rational> cs;
        for (const auto& c : coeffs) cs.push_back(rational_from_json(c, "coefficient"));
        polys.emplace_back(std::move(cs));
    }
    return PiecewisePoly(std::move(breakpoints), std::move(polys));
}

LimitFn limit_from_json(const Json& j) { return LimitFn(piecewise_from_json(j)); }

Json to_json(const LimitVector& f) {
    Json comps = Json::array();
    for (const auto& c : f.components()) comps.push_back(to_json(c));
    return Json{{"alphabet", alphabet_json(f.alphabet())}, {"components", comps}};
}

LimitVector limit_vector_from_json(const Json& j) {
    const Json& comps = member(j, "components", "limit vector");
    if (!comps.is_array()) throw DomainError("limit vector: components must be an array");
    std::vector<PiecewisePoly> parts;
    for (const auto& c : comps) parts.push_back(piecewise_from_json(c));
    return LimitVector(alphabet_from_json(member(j, "alphabet", "limit vector")), std::move(parts));
}

Json to_json(const IntervalPartition& p) {
    Json pts = Json::array();
    for (const auto& x : p.points()) pts.push_back(to_json(x));
    return Json{{"breakpoints", pts}};
}

IntervalPartition partition_from_json(const Json& j) {
    const Json& bps = j.is_array() ? j : member(j, "breakpoints", "partition");
    std::vector<Rational> pts;
    for (const auto& b : bps) pts.push_back(rational_from_json(b, "breakpoint"));
    return IntervalPartition(std::move(pts));
}

Json to_json(const GridMeasure& mu) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < mu.m(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < mu.m(); ++k) row.push_back(to_json(mu.mass(i, k)));
        rows.push_back(row);
    }
    return Json{{"m", mu.m()}, {"mass", rows}};
}

GridMeasure grid_from_json(const Json& j) {
    const Json& mj = member(j, "m", "grid measure");
    if (!mj.is_number_unsigned() || mj.get<std::uint64_t>() == 0)
        throw DomainError("grid measure: m must be a positive integer");
    const std::size_t m = mj.get<std::size_t>();
    const Json& rows = member(j, "mass", "grid measure");
    if (!rows.is_array() || rows.size() != m) throw DomainError("grid measure: mass must have m rows");
    std::vector<Rational> mass;
    mass.reserve(m * m);
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != m) throw DomainError("grid measure: each mass row must have m entries");
        for (const auto& c : row) mass.push_back(rational_from_json(c, "mass"));
    }
    return GridMeasure(m, std::move(mass));
}

Json alphabet_json(const Alphabet& alphabet) {
    Json out = Json::array();
    for (char c : alphabet.symbols()) out.push_back(std::string(1, c));
    return out;
}

Alphabet alphabet_from_json(const Json& j) {
    if (!j.is_array()) throw DomainError("alphabet must be an array of one-character strings");
    std::string symbols;
    for (const auto& s : j) {
        if (!s.is_string() || s.get<std::string>().size() != 1)
            throw DomainError("alphabet must be an array of one-character strings");
        symbols += s.get<std::string>();
    }
    return Alphabet(symbols);
}

Json to_json(const DensityMap& map) {
    Json entries = Json::array();
    for (const auto& [u, t] : map.entries)
        entries.push_back(Json{{"pattern", u.str()},
                               {"num", to_string(BigInt(t.get_num()))},
                               {"den", to_string(BigInt(t.get_den()))}});
    return Json{{"alphabet", alphabet_json(map.alphabet)},
                {"source_length", map.source_length},
                {"pattern_length", map.pattern_length},
                {"entries", entries}};
}

std::string to_csv(const DensityMap& map) {
    std::string out = "pattern,num,den\n";
    for (const auto& [u, t] : map.entries)
        out += u.str() + "," + to_string(BigInt(t.get_num())) + "," + to_string(BigInt(t.get_den())) + "\n";
    return out;
}

Json parse_json(std::string_view text, const std::string& source) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(source, line_of(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
    }
}

Json read_json_file(const std::string& path) { return parse_json(slurp(path), path); }

Word parse_word_text(std::string_view text, const std::string& source, const Alphabet& fallback) {
    Alphabet alphabet = fallback;
    std::size_t pos = 0;
    std::size_t line = 1;
    // Skip leading blank space to find a possible header.
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r' || text[pos] == '\n')) {
        if (text[pos] == '\n') ++line;
        ++pos;
    }
    if (pos < text.size() && text[pos] == '{') {
        const std::size_t eol = text.find('\n', pos);
        const std::string_view header = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        Json h;
        try {
            h = Json::parse(header.begin(), header.end());
            alphabet = alphabet_from_json(member(h, "alphabet", "word header"));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(source, line, std::string("bad word header: ") + e.what());
        } catch (const DomainError& e) {
            throw ParseError(source, line, e.what());
        }
        pos += header.size();
    }
    std::vector<std::uint8_t> letters;
    for (; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (c == '\n') {
            ++line;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') continue;
        if (!alphabet.contains(c))
            throw ParseError(source, line, std::string("symbol '") + c + "' is not in the alphabet \"" +
                                               alphabet.symbols() + "\"");
        letters.push_back(alphabet.index_of(c));
    }
    return Word(alphabet, std::move(letters));
}

Word read_word_file(const std::string& path, const Alphabet& fallback) {
    return parse_word_text(slurp(path), path, fallback);
}

Permutation read_permutation_file(const std::string& path) {
    const std::string text = slurp(path);
    try {
        return Permutation::parse(text);
    } catch (const DomainError& e) {
        throw ParseError(path, 1, e.what());
    }
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

void write_json(const Json& j, std::string& out, std::size_t depth) {
    const auto indent = [&](std::size_t d) { out.append(2 * d, ' '); };
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            std::size_t i = 0;
            for (auto it = j.begin(); it != j.end(); ++it, ++i) {
                indent(depth + 1);
                out += Json(it.key()).dump();
                out += ": ";
                write_json(it.value(), out, depth + 1);
                out += i + 1 < j.size() ? ",\n" : "\n";
            }
            indent(depth);
            out += "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                indent(depth + 1);
                write_json(j[i], out, depth + 1);
                out += i + 1 < j.size() ? ",\n" : "\n";
            }
            indent(depth);
            out += "]";
            return;
        }
        case Json::value_t::number_float: {
            const double x = j.get<double>();
            if (!std::isfinite(x)) {
                out += "null";
                return;
            }
            std::string s = format_double(x);
            // Keep it a float on re-parse.
            if (s.find_first_of(".eE") == std::string::npos) s += ".0";
            out += s;
            return;
        }
        default:
            out += j.dump();
    }
}

}  // namespace

std::string dump(const Json& j) {
    std::string out;
    write_json(j, out, 0);
    out += "\n";
    return out;
}

}  // namespace seqlimit::io
