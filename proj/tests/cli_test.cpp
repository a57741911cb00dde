#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "funbialign/cli.hpp"
#include "funbialign/errors.hpp"
#include "funbialign/io.hpp"
#include "funbialign/plot.hpp"

using namespace funbialign;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::main_entry(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("funbialign_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

} // namespace

TEST_SUITE("io") {

TEST_CASE("curve json and csv") {
    const CurveSet set = io::parse_curves_json(
        R"({"grid_step": 0.5, "curves": [{"id": "x", "values": [1, 2, 3]}, {"id": "y", "values": [4, 5]}]})");
    REQUIRE(set.size() == 2);
    CHECK(set.grid_step() == 0.5);
    CHECK(set[1].id() == "y");
    const CurveSet back = io::parse_curves_json(io::curves_to_json(set));
    CHECK(io::curves_to_json(back) == io::curves_to_json(set));

    const CurveSet csv = io::parse_curves_csv("id,t0,t1,t2\na,1,2,3\nb,4,5\n", true);
    REQUIRE(csv.size() == 2);
    CHECK(csv[0].size() == 3);
    CHECK(csv[1].values()[1] == 5.0);
    const CurveSet csv_back = io::parse_curves_csv(io::curves_to_csv(csv), false);
    CHECK(io::curves_to_json(csv_back) == io::curves_to_json(csv));
}

TEST_CASE("malformed input") {
    CHECK_THROWS_AS(io::parse_curves_json("{not json"), Error);
    CHECK_THROWS_AS(io::parse_curves_json(R"({"curves": [{"id": "a"}]})"), Error);
    CHECK_THROWS_AS(io::parse_curves_csv("a,1,zz\n", false), Error);
    try {
        (void)io::read_text("/nonexistent/file.json");
        FAIL("expected FileNotFound");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::FileNotFound);
    }
}

TEST_CASE("portion references") {
    const CurveSet set({SampledCurve("a", {1, 2, 3, 4}), SampledCurve("b", {1, 2, 3, 4})});
    const auto refs = io::parse_portion_refs(
        R"([{"curve_id": "b", "start": 1, "length": 3}, {"curve_index": 0, "start": 0, "length": 3}])", set);
    REQUIRE(refs.size() == 2);
    CHECK(refs[0] == PortionRef{1, 1, 3});
    CHECK(refs[1] == PortionRef{0, 0, 3});
    CHECK_THROWS_AS(io::parse_portion_refs(R"([{"curve_id": "q", "start": 0, "length": 3}])", set), Error);
}

TEST_CASE("atomic write") {
    const fs::path dir = scratch("atomic");
    io::atomic_write(dir / "a.txt", "hello\n");
    CHECK(io::read_text(dir / "a.txt") == "hello\n");
    CHECK_FALSE(fs::exists(dir / "a.txt.tmp"));
}

}

TEST_SUITE("plot") {

TEST_CASE("one polyline per portion") {
    std::vector<double> v(200);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i % 17);
    const CurveSet set({SampledCurve("s", v)});
    ReportedMotif m{1, {}};
    for (std::size_t k = 0; k < 8; ++k) m.portions.push_back({"s", 20 * k, 10});
    const std::string svg = plot::motif_svg(m, set);
    CHECK(svg.rfind("<svg", 0) != std::string::npos);
    CHECK(count(svg, "<polyline") == 8);
    CHECK(plot::motif_svg(m, set) == svg);
}

TEST_CASE("no motifs gives only the curve figure") {
    const CurveSet set({SampledCurve("s", {1, 2, 3, 2, 1})});
    const fs::path dir = scratch("plot_empty");
    const auto files = plot::write_plots({}, set, dir);
    REQUIRE(files.size() == 1);
    CHECK(files[0].filename() == "curves.svg");
    std::size_t present = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        (void)entry;
        ++present;
    }
    CHECK(present == 1);
    CHECK(count(io::read_text(files[0]), "<polyline") == 1);
    CHECK(count(io::read_text(files[0]), "<rect") == 1);
}

}

TEST_SUITE("cli") {

TEST_CASE("version and help") {
    const Run v = call({"--version"});
    CHECK(v.code == 0);
    CHECK(v.out.find("funbialign 1.0.0") != std::string::npos);
    CHECK(v.out.find("mt19937_64") != std::string::npos);
    CHECK(call({"--help"}).code == 0);
}

TEST_CASE("unknown flags are rejected") {
    const Run r = call({"discover", "--bogus", "1"});
    CHECK(r.code == 1);
    CHECK_FALSE(r.err.empty());
    CHECK(call({"frobnicate"}).code == 1);
    CHECK(call({"discover", "--criterion", "best"}).code == 1);
}

TEST_CASE("short curve diagnostic") {
    const fs::path dir = scratch("short");
    write(dir / "two.json", R"({"curves": [{"id": "a", "values": [1, 2]}]})");
    const Run r = call({"discover", "--input", (dir / "two.json").string(), "--length", "41", "--out",
                        (dir / "m.json").string()});
    CHECK(r.code == 1);
    CHECK(r.err == "CurveTooShort: curve 'a' has 2 samples, portion length is 41\n");
    CHECK_FALSE(fs::exists(dir / "m.json"));
}

TEST_CASE("missing file diagnostic") {
    const Run r = call({"discover", "--input", "/nonexistent/c.json", "--out", "/tmp/unused.json"});
    CHECK(r.code == 1);
    CHECK(r.err.rfind("FileNotFound: ", 0) == 0);
}

TEST_CASE("bias verification") {
    const Run r = call({"verify-bias", "--cardinality", "6", "--length", "20", "--trials", "50", "--seed", "1"});
    CHECK(r.code == 0);
    std::istringstream in(r.out);
    std::string first, second;
    in >> first >> second;
    REQUIRE(first.rfind("max_relative_deviation=", 0) == 0);
    CHECK(std::stod(first.substr(first.find('=') + 1)) < 1e-10);
    CHECK(std::stod(second.substr(second.find('=') + 1)) < 1e-10);
}

TEST_CASE("score prints the adjusted fMSR") {
    const fs::path dir = scratch("score");
    write(dir / "c.json", R"({"curves": [{"id": "a", "values": [0, 0, 0, 1]}]})");
    write(dir / "p.json", R"([{"curve_id": "a", "start": 0, "length": 2}, {"curve_id": "a", "start": 2, "length": 2}])");
    const Run r = call({"score", "--input", (dir / "c.json").string(), "--portions", (dir / "p.json").string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("h=0.0625") != std::string::npos);
    CHECK(r.out.find("n_Q=2") != std::string::npos);
}

TEST_CASE("config round trip") {
    const fs::path dir = scratch("config");
    std::ostringstream sink;
    const std::vector<std::vector<std::string>> commands{
        {"--threads", "3", "simulate", "--points", "2001", "--sigma", "0.5,1", "--seed", "9", "--out", "c.json"},
        {"discover", "--input", "c.json", "--length", "31", "--min-card", "4", "--criterion", "hadj",
         "--csv-header"},
        {"evaluate", "--motifs", "m.json", "--truth", "t.json", "--threshold", "0.75"},
        {"--log-level", "info", "verify-bias", "--cardinality", "5", "--trials", "3"},
        {"plot", "--motifs", "m.json", "--curves", "c.json", "--out", "figs"},
    };
    for (const auto& args : commands) {
        const auto first = cli::parse_args(args, sink, sink);
        REQUIRE(first.kind == cli::ParseOutcome::Kind::Run);
        write(dir / "run.cfg", cli::serialize(first.config));
        const auto second =
            cli::parse_args({"--config", (dir / "run.cfg").string(), first.config.subcommand}, sink, sink);
        REQUIRE(second.kind == cli::ParseOutcome::Kind::Run);
        CHECK(second.config == first.config);
    }
}

TEST_CASE("explicit flags override the config file") {
    const fs::path dir = scratch("override");
    write(dir / "run.cfg", "# defaults\nlength = 21\nmin-card=5\n");
    std::ostringstream sink;
    const auto parsed = cli::parse_args(
        {"--config", (dir / "run.cfg").string(), "discover", "--min-card", "9"}, sink, sink);
    REQUIRE(parsed.kind == cli::ParseOutcome::Kind::Run);
    CHECK(parsed.config.length == 21);
    CHECK(parsed.config.min_card == 9);

    write(dir / "bad.cfg", "length 21\n");
    const auto bad = cli::parse_args({"--config", (dir / "bad.cfg").string(), "discover"}, sink, sink);
    CHECK(bad.kind == cli::ParseOutcome::Kind::Exit);
    CHECK(bad.exit_code == 1);
}

TEST_CASE("sigma accepts lists and repeats") {
    std::ostringstream sink;
    const auto a = cli::parse_args({"simulate", "--sigma", "0.1,0.2"}, sink, sink);
    CHECK(a.config.sigma == std::vector<double>{0.1, 0.2});
    const auto b = cli::parse_args({"simulate", "--sigma", "0.1", "--sigma", "0.2"}, sink, sink);
    CHECK(b.config.sigma == std::vector<double>{0.1, 0.2});
}

TEST_CASE("simulate, discover, evaluate and plot") {
    const fs::path dir = scratch("pipeline");
    const auto p = [&](const char* name) { return (dir / name).string(); };
    REQUIRE(call({"simulate", "--points", "2001", "--n-motifs", "2", "--sigma", "0.1", "--seed", "7",
                  "--out", p("c.json"), "--truth", p("t.json")})
                .code == 0);
    const std::string first = io::read_text(p("c.json"));
    REQUIRE(call({"simulate", "--points", "2001", "--n-motifs", "2", "--sigma", "0.1", "--seed", "7",
                  "--out", p("c.json"), "--truth", p("t.json")})
                .code == 0);
    CHECK(io::read_text(p("c.json")) == first);

    REQUIRE(call({"discover", "--input", p("c.json"), "--out", p("m.json"), "--dump-dendrogram",
                  p("d.json")})
                .code == 0);
    const auto motifs = io::parse_motifs(io::read_text(p("m.json")));
    REQUIRE_FALSE(motifs.empty());
    CHECK(motifs.front().final_rank == 1);

    const Run eval = call({"evaluate", "--motifs", p("m.json"), "--truth", p("t.json"), "--out", p("e.json")});
    CHECK(eval.code == 0);
    CHECK(eval.out.find("correct") != std::string::npos);
    CHECK(fs::exists(p("e.json")));

    CHECK(call({"plot", "--motifs", p("m.json"), "--curves", p("c.json"), "--out", p("figs")}).code == 0);
    CHECK(fs::exists(dir / "figs" / "curves.svg"));
    CHECK(fs::exists(dir / "figs" / "motif_001.svg"));

    const Run mismatch = call({"evaluate", "--motifs", p("m.json"), "--truth", p("c.json")});
    CHECK(mismatch.code == 1);
}

}

TEST_SUITE("errors") {

TEST_CASE("every error kind has its own diagnostic name") {
    const std::vector<std::pair<ErrorKind, std::string>> golden{
        {ErrorKind::EmptyCurveSet, "EmptyCurveSet"},
        {ErrorKind::CurveTooShort, "CurveTooShort"},
        {ErrorKind::InvalidLength, "InvalidLength"},
        {ErrorKind::IndexOutOfRange, "IndexOutOfRange"},
        {ErrorKind::InvalidCurve, "InvalidCurve"},
        {ErrorKind::GridMismatch, "GridMismatch"},
        {ErrorKind::DuplicateCurveId, "DuplicateCurveId"},
        {ErrorKind::TooFewPortions, "TooFewPortions"},
        {ErrorKind::LengthMismatch, "LengthMismatch"},
        {ErrorKind::NonFiniteInput, "NonFiniteInput"},
        {ErrorKind::InvalidCardinality, "InvalidCardinality"},
        {ErrorKind::CardinalityTooLarge, "CardinalityTooLarge"},
        {ErrorKind::NegativeScore, "NegativeScore"},
        {ErrorKind::BiasLawViolation, "BiasLawViolation"},
        {ErrorKind::SinglePortion, "SinglePortion"},
        {ErrorKind::InconsistentTree, "InconsistentTree"},
        {ErrorKind::PlacementInfeasible, "PlacementInfeasible"},
        {ErrorKind::InvalidConfig, "InvalidConfig"},
        {ErrorKind::CurveMismatch, "CurveMismatch"},
        {ErrorKind::FileNotFound, "FileNotFound"},
        {ErrorKind::MalformedInput, "MalformedInput"},
    };
    for (const auto& [kind, name] : golden) {
        CHECK(error_kind_name(kind) == name);
        CHECK(std::string(Error(kind, "detail").what()) == name + ": detail");
    }
    CHECK(is_internal(ErrorKind::InconsistentTree));
    CHECK(is_internal(ErrorKind::NegativeScore));
    CHECK(is_internal(ErrorKind::BiasLawViolation));
    CHECK_FALSE(is_internal(ErrorKind::CurveTooShort));
    CHECK_FALSE(is_internal(ErrorKind::MalformedInput));
}

TEST_CASE("command-line diagnostics") {
    const fs::path dir = scratch("golden");
    const auto p = [&](const char* name) { return (dir / name).string(); };
    write(p("dup.json"), R"({"curves": [{"id": "a", "values": [1, 2, 3]}, {"id": "a", "values": [1, 2, 3]}]})");
    write(p("empty.json"), R"({"curves": []})");
    write(p("broken.json"), "{");
    const std::vector<std::pair<std::vector<std::string>, std::string>> cases{
        {{"discover", "--input", p("dup.json"), "--length", "3"}, "DuplicateCurveId: "},
        {{"discover", "--input", p("empty.json")}, "EmptyCurveSet: "},
        {{"discover", "--input", p("broken.json")}, "MalformedInput: "},
        {{"simulate", "--points", "2000", "--out", p("c.json")}, "InvalidConfig: "},
        {{"simulate"}, "InvalidConfig: "},
        {{"simulate", "--points", "2001", "--occurrences", "40", "--out", p("c.json")}, "PlacementInfeasible: "},
        {{"verify-bias", "--cardinality", "13"}, "CardinalityTooLarge: "},
    };
    for (const auto& [args, prefix] : cases) {
        const Run r = call(args);
        CHECK(r.code == 1);
        CHECK(r.err.rfind(prefix, 0) == 0);
        CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
    }
}

}
