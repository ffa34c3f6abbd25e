#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "seqlimit/counting.hpp"
#include "seqlimit/permutons.hpp"
#include "seqlimit/piecewise.hpp"
#include "seqlimit/regularity.hpp"
#include "seqlimit/word.hpp"

namespace seqlimit::io {

/// Insertion-ordered JSON so emitted documents have a fixed field order.
using Json = nlohmann::ordered_json;

/// Canonical "num/den" string.
Json to_json(const Rational& q);
/// Accepts a rational string ("3/4", "0.25") or a JSON integer.
Rational rational_from_json(const Json& j, std::string_view what);

/// {"breakpoints":["0","1/2","1"],"pieces":[{"coeffs":["1"]},{"coeffs":["0"]}]}
Json to_json(const PiecewisePoly& f);
PiecewisePoly piecewise_from_json(const Json& j);
LimitFn limit_from_json(const Json& j);

/// {"alphabet":["a","b","c"],"components":[<limit>,...]}
Json to_json(const LimitVector& f);
LimitVector limit_vector_from_json(const Json& j);

/// {"breakpoints":[...]}
Json to_json(const IntervalPartition& p);
IntervalPartition partition_from_json(const Json& j);

/// {"m":n,"mass":[[...],...]}; mass[i][j] is the cell in x-column i, y-row j.
Json to_json(const GridMeasure& mu);
GridMeasure grid_from_json(const Json& j);

/// {"alphabet":[...],"source_length":n,"pattern_length":l,
///  "entries":[{"pattern":"01","num":"3","den":"6"},...]}
Json to_json(const DensityMap& map);
/// pattern,num,den rows with a header line.
std::string to_csv(const DensityMap& map);

Json alphabet_json(const Alphabet& alphabet);
Alphabet alphabet_from_json(const Json& j);

/// Reads a JSON document; syntax errors become ParseError with the line.
Json read_json_file(const std::string& path);
Json parse_json(std::string_view text, const std::string& source);

/// Word file: an optional first line {"alphabet":["a","b",...]} followed by
/// the symbols (line breaks and spaces ignored). `fallback` applies when
/// there is no header.
Word read_word_file(const std::string& path, const Alphabet& fallback = Alphabet::binary());
Word parse_word_text(std::string_view text, const std::string& source, const Alphabet& fallback);

/// One-line permutation file such as "2,1,4,3".
Permutation read_permutation_file(const std::string& path);

/// printf("%.17g").
std::string format_double(double x);

/// Serializes with two-space indentation. Unlike Json::dump, floating-point
/// values are written with 17 significant digits.
std::string dump(const Json& j);

}  // namespace seqlimit::io
