#include "attnpath/cli.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <sstream>

using namespace attnpath;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "attnpath");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

/// A small synthetic corpus shared by the subcommand tests.
const test::TempDir& corpus_dir() {
    static const test::TempDir dir("cli-corpus");
    static const bool made = [] {
        const auto r = run({"synth", "--out", dir.str("corpus"), "--speakers-per-class", "6", "--seed", "5"});
        REQUIRE(r.code == 0);
        return true;
    }();
    (void)made;
    return dir;
}

std::string manifest() { return corpus_dir().str("corpus/manifest.csv"); }

}  // namespace

TEST_CASE("help and usage errors") {
    CHECK(run({"--help"}).code == cli::kExitOk);
    CHECK(run({"cv", "--help"}).code == cli::kExitOk);
    CHECK(run({}).code == cli::kExitValidation);
    CHECK(run({"bogus"}).code == cli::kExitValidation);
    CHECK(run({"cv", "--manifest", "x.csv"}).code == cli::kExitValidation);
    CHECK(run({"cv", "--manifest", manifest(), "--out", "/tmp/x", "--k", "1"}).code == cli::kExitValidation);
}

TEST_CASE("validation failures exit 2 and leave no output") {
    test::TempDir dir("cli-bad");
    const auto missing = run({"features", "--manifest", dir.str("nope.csv"), "--out", dir.str("o")});
    CHECK(missing.code == cli::kExitValidation);
    CHECK(missing.err.find("error:") != std::string::npos);
    CHECK(!fs::exists(dir.str("o")));

    write_file(dir.str("bad.csv"), "session_id,label\nx,AD\n");
    CHECK(run({"features", "--manifest", dir.str("bad.csv"), "--out", dir.str("o")}).code == cli::kExitValidation);
    CHECK(run({"features", "--manifest", manifest(), "--out", dir.str("o"), "--mask", "aoi+nope"}).code ==
          cli::kExitValidation);
    CHECK(!fs::exists(dir.str("o")));
}

TEST_CASE("synth writes a manifest and CTMs") {
    const auto text = read_file(manifest());
    CHECK(text.rfind("session_id,speaker_id,label,ctm_path", 0) == 0);
    CHECK(parse_manifest(text).size() == 12);
    CHECK(fs::exists(corpus_dir().str("corpus/ctm/hc001-1.ctm")));
}

TEST_CASE("features writes one row per session") {
    test::TempDir dir("cli-features");
    const auto r = run({"features", "--manifest", manifest(), "--out", dir.str("f")});
    REQUIRE(r.code == 0);
    const auto csv = read_file(dir.str("f/features.csv"));
    const auto lines = split_lines(csv);
    REQUIRE(lines.size() == 14);
    CHECK(lines[0].rfind("# ", 0) == 0);
    CHECK(lines[0].find("manifest.csv") != std::string_view::npos);
    CHECK(lines[0].find("mask=all") != std::string_view::npos);
    CHECK(split_csv_record(lines[1]).size() == 3 + 68);
    CHECK(split_csv_record(lines[2]).size() == 3 + 68);
}

TEST_CASE("cv writes metrics, folds and predictions") {
    test::TempDir dir("cli-cv");
    const auto r = run({"cv", "--manifest", manifest(), "--out", dir.str("cv"), "--k", "3", "--seed", "9"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("f1 ") != std::string::npos);
    const auto json = nlohmann::json::parse(read_file(dir.str("cv/metrics.json")));
    CHECK(json["config"]["k"] == 3);
    CHECK(json["config"]["seed"] == 9);
    CHECK(json["per_fold"].size() == 3);
    CHECK(json.contains("f1"));
    CHECK(split_lines(read_file(dir.str("cv/predictions.csv"))).size() >= 13);
    CHECK(fs::exists(dir.str("cv/folds.tsv")));
    CHECK(!fs::exists(dir.str(".cv.partial")));
}

TEST_CASE("scanpath renders selected sessions") {
    test::TempDir dir("cli-scan");
    auto r = run({"scanpath", "--manifest", manifest(), "--out", dir.str("s"), "--session", "ad002-1"});
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir.str("s/ad002-1.scanpath.svg")));
    CHECK(fs::exists(dir.str("s/ad002-1.scanpath.jsonl")));
    CHECK(!fs::exists(dir.str("s/hc001-1.scanpath.svg")));
    r = run({"scanpath", "--manifest", manifest(), "--out", dir.str("t"), "--session", "zz9"});
    CHECK(r.code == cli::kExitValidation);
}

TEST_CASE("heatmap writes group, reference and difference maps") {
    test::TempDir dir("cli-heat");
    const auto r = run({"heatmap", "--manifest", manifest(), "--out", dir.str("h"), "--cell-size", "10"});
    REQUIRE(r.code == 0);
    for (const char* name : {"reference.heat.pgm", "AD.heat.pgm", "HC.heat.pgm", "AD-minus-HC.pos.pgm",
                             "AD-minus-HC.neg.pgm"}) {
        INFO(name);
        CHECK(fs::exists(dir.str(std::string("h/") + name)));
    }
    const auto pgm = read_file(dir.str("h/AD.heat.pgm"));
    const auto lines = split_lines(pgm);
    CHECK(lines[0] == "P2");
    CHECK(lines[1].find("cell_size=10.000000") != std::string_view::npos);
    CHECK(lines[2] == "75 58");
    CHECK(run({"heatmap", "--manifest", manifest(), "--out", dir.str("z"), "--cell-size", "0"}).code ==
          cli::kExitValidation);
    CHECK(run({"heatmap", "--manifest", manifest(), "--out", dir.str("z"), "--group-by", "age"}).code ==
          cli::kExitValidation);
}

TEST_CASE("report prints the ablation table") {
    test::TempDir dir("cli-report");
    const auto r = run({"report", "--manifest", manifest(), "--out", dir.str("r"), "--k", "3"});
    REQUIRE(r.code == 0);
    for (const char* row : {"\nAOI\t", "\nAoA\t", "\nWV\t", "\nAll\t"}) CHECK(r.out.find(row) != std::string::npos);
    CHECK(read_file(dir.str("r/report.tsv")) == r.out);
    CHECK(nlohmann::json::parse(read_file(dir.str("r/report.json"))).size() == 4);
}
