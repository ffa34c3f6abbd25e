#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "seqlimit/io.hpp"
#include "seqlimit/limits.hpp"

using namespace seqlimit;
namespace io = seqlimit::io;

namespace {

struct Invocation {
    int code;
    std::string out;
    std::string err;
};

Invocation run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

io::Json json_of(const Invocation& r) { return io::parse_json(r.out, "stdout"); }

class TempFile {
public:
    explicit TempFile(const std::string& content, const std::string& suffix = ".json") {
        static int counter = 0;
        path_ = (std::filesystem::temp_directory_path() /
                 ("seqlimit_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + suffix))
                    .string();
        std::ofstream(path_) << content;
    }
    ~TempFile() { std::filesystem::remove(path_); }
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

const char* kHalf = R"({"breakpoints":["0","1"],"pieces":[{"coeffs":["1/2"]}]})";
const char* kFirstHalf = R"({"breakpoints":["0","1/2","1"],"pieces":[{"coeffs":["1"]},{"coeffs":["0"]}]})";

}  // namespace

TEST(Cli, DensityOfWordPattern) {
    const Invocation r = run({"density", "--word", "0101", "--pattern", "01"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_EQ(json_of(r)["t"], "1/2");
    const Invocation csv = run({"--format", "csv", "density", "--word", "0101", "--pattern", "01"});
    EXPECT_EQ(csv.out, "pattern,t\n01,1/2\n");
    const Invocation table = run({"density", "--word", "0101", "--length", "2"});
    EXPECT_EQ(json_of(table)["entries"].size(), 4u);
}

TEST(Cli, DensityOfLimitFile) {
    const TempFile f(kFirstHalf);
    const Invocation r = run({"density", "--limit", f.path(), "--pattern", "10"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_EQ(json_of(r)["t"], "1/2");
}

TEST(Cli, AnalyzeConstantWord) {
    const Invocation r = run({"analyze", "--word", "1111"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const io::Json j = json_of(r);
    EXPECT_EQ(j["uniformity"]["density"], "1");
    EXPECT_EQ(j["uniformity"]["discrepancy"], "0");
    EXPECT_EQ(j["length"], 4);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"density", "--word", "01", "--pattern", "1", "--bogus"}).code, cli::kExitUsage);
    EXPECT_EQ(run({}).code, cli::kExitUsage);
    EXPECT_EQ(run({"nosuch"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"density", "--pattern", "01"}).code, cli::kExitUsage);
    const Invocation bad = run({"density", "--word", "0121", "--pattern", "01"});
    EXPECT_EQ(bad.code, cli::kExitFailure);
    EXPECT_FALSE(bad.err.empty());
    EXPECT_TRUE(bad.out.empty());
    EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}

TEST(Cli, MalformedFileReportsLine) {
    const TempFile f("{\n\"breakpoints\": [\"0\", \"1\"],\n  oops\n}");
    const Invocation r = run({"density", "--limit", f.path(), "--pattern", "1"});
    EXPECT_EQ(r.code, cli::kExitFailure);
    EXPECT_NE(r.err.find(f.path()), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("3"), std::string::npos) << r.err;
}

TEST(Cli, DistanceAndRegularize) {
    const TempFile a(kHalf), b(kFirstHalf);
    const Invocation box = run({"distance", "--box", a.path(), b.path()});
    ASSERT_EQ(box.code, cli::kExitOk) << box.err;
    EXPECT_EQ(json_of(box)["distance"], "1/4");
    EXPECT_EQ(json_of(run({"distance", "--l1", a.path(), b.path()}))["distance"], "1/2");
    EXPECT_EQ(run({"distance", "--box", "--l1", a.path(), b.path()}).code, cli::kExitUsage);

    const Invocation reg = run({"regularize", "--limit", b.path(), "--eps", "1/10"});
    ASSERT_EQ(reg.code, cli::kExitOk) << reg.err;
    EXPECT_EQ(json_of(reg)["box_error"], "0");
}

TEST(Cli, SampleIsDeterministicAndRecordsSeed) {
    const TempFile f(kHalf);
    const std::vector<std::string> args{"--seed", "42", "sample", "--limit", f.path(), "--n", "50", "--trials", "3"};
    const Invocation a = run(args), b = run(args);
    ASSERT_EQ(a.code, cli::kExitOk) << a.err;
    EXPECT_EQ(a.out, b.out);
    const io::Json j = json_of(a);
    EXPECT_EQ(j["seed"], 42);
    EXPECT_EQ(j["prng"], "splitmix64-ctr-v1");
    EXPECT_EQ(j["samples"].size(), 3u);
    EXPECT_EQ(j["samples"][0]["word"].get<std::string>().size(), 50u);
    const Invocation other = run({"--seed", "43", "sample", "--limit", f.path(), "--n", "50", "--trials", "3"});
    EXPECT_NE(other.out, a.out);
    // Thread count does not change the output.
    const Invocation threaded = run({"--seed", "42", "--threads", "3", "sample", "--limit", f.path(), "--n", "50", "--trials", "3"});
    EXPECT_EQ(threaded.out, a.out);
}

TEST(Cli, TesterAndForcibility) {
    const Invocation t = run({"--seed", "5", "test", "--word", "1010101010", "--forbid", "10", "--len", "4", "--trials", "200"});
    ASSERT_EQ(t.code, cli::kExitOk) << t.err;
    const io::Json j = json_of(t);
    EXPECT_EQ(j["distance"], "1/2");
    EXPECT_EQ(j["trials"], 200);
    EXPECT_EQ(j["seed"], 5);

    const TempFile half(kHalf), ind(kFirstHalf);
    const Invocation f = run({"forcibility", "--limit", half.path(), "--check", ind.path()});
    ASSERT_EQ(f.code, cli::kExitOk) << f.err;
    const io::Json c = json_of(f);
    EXPECT_EQ(c["residual"], "0");
    EXPECT_LE(c["longest_pattern"].get<int>(), 3);
    EXPECT_EQ(c["check"]["distinguished"], true);
}

TEST(Cli, Permutons) {
    const Invocation d = run({"permuton", "density", "--perm", "2,1", "--pattern", "21"});
    ASSERT_EQ(d.code, cli::kExitOk) << d.err;
    EXPECT_EQ(json_of(d)["t"], "1");
    const TempFile p1("1\n", ".txt"), p2("1,2\n", ".txt");
    const Invocation x = run({"permuton", "distance", p1.path(), p2.path()});
    ASSERT_EQ(x.code, cli::kExitOk) << x.err;
    EXPECT_EQ(json_of(x)["d_box"], "1/4");
    EXPECT_EQ(run({"permuton"}).code, cli::kExitUsage);
}

TEST(Cli, ConfigFileMirrorsFlags) {
    const TempFile cfg(R"({"word": "0101", "pattern": "01", "format": "csv"})");
    const Invocation r = run({"density", "--config", cfg.path()});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_EQ(r.out, "pattern,t\n01,1/2\n");
    // Explicit flags win over the config file.
    const Invocation o = run({"density", "--config", cfg.path(), "--pattern", "11"});
    EXPECT_EQ(o.out, "pattern,t\n11,1/6\n");
    const TempFile unknown(R"({"frobnicate": 1})");
    EXPECT_EQ(run({"density", "--word", "01", "--pattern", "1", "--config", unknown.path()}).code, cli::kExitUsage);
}

TEST(Cli, ExperimentBundle) {
    const TempFile empty(R"({"experiments": []})");
    const Invocation e = run({"experiment", empty.path()});
    ASSERT_EQ(e.code, cli::kExitOk) << e.err;
    EXPECT_EQ(json_of(e)["experiments"].size(), 0u);

    const TempFile spec(R"({"experiments": [
        {"name": "tail", "kind": "tail_dbox", "n": 100, "a": 0.1, "trials": 50},
        {"name": "curve", "kind": "tester_curve", "forbid": "10", "n": 40, "lengths": [2, 10], "distances": ["0", "1/4"], "trials": 50},
        {"name": "broken", "kind": "nonsense"}]})");
    const Invocation a = run({"--seed", "9", "experiment", spec.path()});
    EXPECT_EQ(a.code, cli::kExitFailure);
    const io::Json j = json_of(a);
    ASSERT_EQ(j["experiments"].size(), 3u);
    EXPECT_EQ(j["experiments"][0]["status"], "ok");
    EXPECT_EQ(j["experiments"][1]["status"], "ok");
    EXPECT_EQ(j["experiments"][2]["status"], "error");
    EXPECT_EQ(j["experiments"][1]["result"]["rows"].size(), 4u);
    EXPECT_EQ(run({"--seed", "9", "experiment", spec.path()}).out, a.out);

    const Invocation csv = run({"--seed", "9", "--format", "csv", "experiment", spec.path()});
    EXPECT_NE(csv.out.find("n,a,empirical,bound"), std::string::npos) << csv.out;
    EXPECT_NE(csv.out.find("distance,ell,accept_fraction"), std::string::npos) << csv.out;

    const auto dir = std::filesystem::temp_directory_path() / ("seqlimit_cli_out_" + std::to_string(::getpid()));
    const Invocation files = run({"--seed", "9", "--format", "csv", "experiment", spec.path(), "--out-dir", dir.string()});
    EXPECT_TRUE(std::filesystem::exists(dir / "tail.csv"));
    EXPECT_TRUE(std::filesystem::exists(dir / "curve.csv"));
    EXPECT_FALSE(std::filesystem::exists(dir / "broken.csv"));
    std::filesystem::remove_all(dir);
}

TEST(Cli, EmittedLimitsRoundTrip) {
    const TempFile b(kFirstHalf);
    const Invocation reg = run({"regularize", "--limit", b.path(), "--eps", "1/10"});
    const io::Json j = json_of(reg);
    std::vector<Rational> bps, vals;
    for (const auto& p : j["breakpoints"]) bps.push_back(io::rational_from_json(p, "bp"));
    for (const auto& v : j["values"]) vals.push_back(io::rational_from_json(v, "v"));
    EXPECT_EQ(LimitFn::step(bps, vals), io::limit_from_json(io::read_json_file(b.path())));
}
