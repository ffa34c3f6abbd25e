#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "seqlimit/error.hpp"
#include "seqlimit/io.hpp"
#include "seqlimit/limits.hpp"

using namespace seqlimit;
namespace io = seqlimit::io;

namespace {

Rational R(long a, long b = 1) {
    Rational q(a, b);
    q.canonicalize();
    return q;
}

class TempFile {
public:
    explicit TempFile(const std::string& content, const std::string& suffix = ".txt") {
        static int counter = 0;
        path_ = (std::filesystem::temp_directory_path() /
                 ("seqlimit_io_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + suffix))
                    .string();
        std::ofstream(path_) << content;
    }
    ~TempFile() { std::filesystem::remove(path_); }
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

}  // namespace

TEST(Json, RationalRoundTrip) {
    for (const Rational& q : {R(0), R(-3, 4), R(7), R(1, 1000000007)})
        EXPECT_EQ(io::rational_from_json(io::to_json(q), "q"), q);
    EXPECT_EQ(io::to_json(R(6, 8)), "3/4");
    EXPECT_EQ(io::rational_from_json(io::Json(5), "q"), 5);
    EXPECT_EQ(io::rational_from_json(io::Json("0.25"), "q"), R(1, 4));
    EXPECT_THROW(io::rational_from_json(io::Json(0.5), "q"), Error);
    EXPECT_THROW(io::rational_from_json(io::Json("x"), "q"), Error);
}

TEST(Json, LimitRoundTrip) {
    const PiecewisePoly f({R(0), R(1, 3), R(1)}, {Polynomial{R(1, 2)}, Polynomial{R(0), R(1, 2), R(1, 4)}});
    const io::Json j = io::to_json(f);
    EXPECT_EQ(j["breakpoints"][1], "1/3");
    EXPECT_EQ(io::piecewise_from_json(j), f);
    EXPECT_EQ(io::limit_from_json(j).poly(), f);

    const io::Json doc = io::parse_json(R"({"breakpoints":["0","1/2","1"],"pieces":[{"coeffs":["1"]},{"coeffs":["0"]}]})", "f");
    EXPECT_EQ(io::limit_from_json(doc), LimitFn::indicator(R(0), R(1, 2)));
    const io::Json bare = io::parse_json(R"({"breakpoints":["0","1"],"pieces":[["0","1"]]})", "f");
    EXPECT_EQ(io::limit_from_json(bare)(R(1, 3)), R(1, 3));
    const io::Json bad = io::parse_json(R"({"breakpoints":["0","1"],"pieces":[{"coeffs":["2"]}]})", "f");
    EXPECT_THROW(io::limit_from_json(bad), DomainError);
}

TEST(Json, VectorPartitionGridRoundTrip) {
    const Alphabet abc("abc");
    const Rational w[] = {R(1, 2), R(1, 3), R(1, 6)};
    const LimitVector v = LimitVector::constant(abc, w);
    const LimitVector back = io::limit_vector_from_json(io::to_json(v));
    EXPECT_EQ(back.alphabet(), abc);
    EXPECT_EQ(back.components(), v.components());

    const IntervalPartition p({R(0), R(1, 5), R(1)});
    EXPECT_EQ(io::partition_from_json(io::to_json(p)), p);
    EXPECT_EQ(io::partition_from_json(io::parse_json(R"(["0","1/5","1"])", "p")), p);

    const GridMeasure mu = mu_sigma(Permutation::parse("2,3,1"));
    const io::Json g = io::to_json(mu);
    EXPECT_EQ(g["m"], 3);
    EXPECT_EQ(g["mass"][0][1], "1/3");
    EXPECT_EQ(io::grid_from_json(g), mu);
}

TEST(Json, DensityMapFormats) {
    const DensityMap d = density_table(Word::parse("0101"), 2);
    const io::Json j = io::to_json(d);
    EXPECT_EQ(j["source_length"], 4);
    EXPECT_EQ(j["entries"].size(), 4u);
    EXPECT_EQ(j["entries"][1]["pattern"], "01");
    EXPECT_EQ(j["entries"][1]["num"], "1");
    EXPECT_EQ(j["entries"][1]["den"], "2");
    const std::string csv = io::to_csv(d);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "pattern,num,den");
    EXPECT_NE(csv.find("01,1,2"), std::string::npos);
}

TEST(Json, ParseErrorsCarryLineNumbers) {
    try {
        io::parse_json("{\n  \"a\": 1,\n  \"b\": ]\n}", "doc.json");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_EQ(e.source(), "doc.json");
    }
    const TempFile broken("{\n\n  oops\n}", ".json");
    try {
        io::read_json_file(broken.path());
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    EXPECT_THROW(io::read_json_file("/nonexistent/seqlimit.json"), Error);
}

TEST(Words, FileFormats) {
    const TempFile plain("0101\n 11 0\n");
    EXPECT_EQ(io::read_word_file(plain.path()).str(), "0101110");
    const TempFile header("{\"alphabet\":[\"a\",\"b\",\"c\"]}\nabc\ncab\n");
    const Word w = io::read_word_file(header.path());
    EXPECT_EQ(w.alphabet(), Alphabet("abc"));
    EXPECT_EQ(w.str(), "abccab");
    const TempFile bad("0101\n0120\n");
    try {
        io::read_word_file(bad.path());
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    EXPECT_EQ(io::parse_word_text("xyx", "lit", Alphabet("xy")).str(), "xyx");
}

TEST(Permutations, FileFormat) {
    const TempFile p("2,1,4,3\n");
    EXPECT_EQ(io::read_permutation_file(p.path()), Permutation::parse("2,1,4,3"));
    const TempFile bad("2,2\n");
    EXPECT_THROW(io::read_permutation_file(bad.path()), Error);
}

TEST(Dump, SeventeenDigitFloats) {
    EXPECT_EQ(io::format_double(0.1), "0.10000000000000001");
    io::Json j;
    j["x"] = 0.1;
    j["n"] = 3;
    j["whole"] = 2.0;
    j["nan"] = std::nan("");
    j["s"] = "a\"b";
    j["list"] = io::Json::array({1, 2});
    const std::string text = io::dump(j);
    EXPECT_NE(text.find("\"x\": 0.10000000000000001"), std::string::npos) << text;
    EXPECT_NE(text.find("\"whole\": 2.0"), std::string::npos) << text;
    EXPECT_NE(text.find("\"nan\": null"), std::string::npos) << text;
    EXPECT_NE(text.find("\"s\": \"a\\\"b\""), std::string::npos) << text;
    // The output is valid JSON and keeps every value.
    const io::Json back = io::parse_json(text, "dump");
    EXPECT_EQ(back["x"].get<double>(), 0.1);
    EXPECT_EQ(back["list"][1], 2);
    EXPECT_EQ(j.begin().key(), "x");
}
