#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "bibsonic/pipeline.hpp"
#include "support/corpus.hpp"
#include "support/util.hpp"

using namespace bibsonic;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("bibsonic_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::filesystem::path operator/(const std::string& name) const { return path / name; }
};

std::vector<std::uint8_t> slurp(const std::filesystem::path& p) {
    const std::string text = testutil::read_file(p.string());
    return {text.begin(), text.end()};
}

RunConfig corpus_config(const TempDir& dir) {
    RunConfig config;
    config.inputs = {testutil::fixture_path("early_phase.csv"),
                     testutil::fixture_path("late_phase.csv")};
    config.out_wav = dir / "track.wav";
    config.out_midi = dir / "track.mid";
    config.out_log = dir / "track.json";
    config.out_report = dir / "track.csv";
    return config;
}

} // namespace

TEST_CASE("run sonifies the corpus end to end") {
    const TempDir dir;
    const RunConfig config = corpus_config(dir);
    const RunSummary summary = run(config);

    CHECK(summary.publications == 64);
    CHECK(summary.oa_count == 34);
    CHECK(summary.duration_seconds > 49.0);

    for (const char* name : {"track.wav", "track.mid", "track.json", "track.csv"})
        CHECK(std::filesystem::exists(dir / name));

    const CsvTable report = parse_csv(testutil::read_file((dir / "track.csv").string()));
    CHECK(report.rows.size() == 64);

    // no stray temp files
    for (const auto& entry : std::filesystem::directory_iterator(dir.path))
        CHECK(entry.path().extension() != ".tmp");
}

TEST_CASE("identical config and inputs give byte-identical outputs") {
    const TempDir dir_a, dir_b;
    run(corpus_config(dir_a));
    run(corpus_config(dir_b));
    for (const char* name : {"track.wav", "track.mid", "track.json", "track.csv"})
        CHECK(slurp(dir_a / name) == slurp(dir_b / name));
}

TEST_CASE("no legend plus an empty input yields bare lead-in silence") {
    const TempDir dir;
    const auto input = dir / "empty.csv";
    std::ofstream(input) << "id,year,month,mncs,citations,categories,oa,title\n";

    RunConfig config;
    config.inputs = {input};
    config.legend = false;
    config.out_wav = dir / "out.wav";
    const RunSummary summary = run(config);

    CHECK(summary.publications == 0);
    const auto bytes = slurp(dir / "out.wav");
    CHECK(bytes.size() == 44 + 2 * 44100); // 1.0 s lead-in at 44.1 kHz
    for (std::size_t i = 44; i < bytes.size(); ++i) CHECK(bytes[i] == 0);
}

TEST_CASE("a missing input path fails loudly and leaves nothing behind") {
    const TempDir dir;
    RunConfig config;
    config.inputs = {dir / "absent.csv"};
    config.out_wav = dir / "out.wav";
    CHECK_THROWS_WITH(run(config), Catch::Matchers::ContainsSubstring("absent.csv"));
    CHECK(!std::filesystem::exists(dir / "out.wav"));
}

TEST_CASE("year filters drop records outside the window") {
    const TempDir dir;
    RunConfig config;
    config.inputs = {testutil::fixture_path("early_phase.csv")};
    config.out_report = dir / "report.csv";

    SECTION("max year") {
        config.max_pub_year = 1997;
        const RunSummary summary = run(config);
        CHECK(summary.publications == 7); // three 1996 + four 1997 rows
    }
    SECTION("min year") {
        config.min_pub_year = 2002;
        const RunSummary summary = run(config);
        CHECK(summary.publications == 9);
    }
    SECTION("window") {
        config.min_pub_year = 1998;
        config.max_pub_year = 2001;
        const RunSummary summary = run(config);
        CHECK(summary.publications == 16);
    }
}

TEST_CASE("run applies schema and timing overrides from files") {
    const TempDir dir;
    const auto schema_path = dir / "schema.json";
    const auto timing_path = dir / "timing.json";
    std::ofstream(schema_path) << R"({"octave_anchor":3})";
    std::ofstream(timing_path) << R"({"slot":0.5,"tone_offset":0.2,"tone_duration":0.25})";

    RunConfig config;
    config.inputs = {testutil::fixture_path("early_phase.csv")};
    config.schema = schema_path;
    config.timing = timing_path;
    config.legend = false;
    config.out_log = dir / "log.json";
    run(config);

    const auto j = nlohmann::json::parse(testutil::read_file((dir / "log.json").string()));
    CHECK(j.at("schema").at("octave_anchor") == 3);
    CHECK(j.at("timing").at("slot") == 0.5);

    // first tone of the first slot reflects both overrides
    bool found = false;
    for (const auto& je : j.at("events"))
        if (je.at("kind") == "impact_tone") {
            CHECK(je.at("onset").get<double>() == 1.2); // lead_in 1.0 + tone_offset 0.2
            found = true;
            break;
        }
    CHECK(found);

    std::ofstream(schema_path) << R"({"bins":[{"class":1}]})"; // scale no longer matches
    CHECK_THROWS_AS(run(config), ConfigError);
}

TEST_CASE("json input is interchangeable with csv") {
    const TempDir dir;
    const auto records =
        parse_records(testutil::read_fixture("early_phase.csv"), RecordFormat::Csv);
    const auto json_input = dir / "early.json";
    std::ofstream(json_input) << records_to_json(records).dump(2);

    RunConfig from_csv;
    from_csv.inputs = {testutil::fixture_path("early_phase.csv")};
    from_csv.out_report = dir / "from_csv.csv";
    from_csv.out_midi = dir / "from_csv.mid";
    run(from_csv);

    RunConfig from_json;
    from_json.inputs = {json_input};
    from_json.format = RecordFormat::Json;
    from_json.out_report = dir / "from_json.csv";
    from_json.out_midi = dir / "from_json.mid";
    run(from_json);

    CHECK(slurp(dir / "from_csv.csv") == slurp(dir / "from_json.csv"));
    CHECK(slurp(dir / "from_csv.mid") == slurp(dir / "from_json.mid"));
}

TEST_CASE("records without scores resolve through the baseline table") {
    const TempDir dir;
    const auto input = dir / "raw.csv";
    const auto baselines = dir / "baselines.csv";
    std::ofstream(input) << "id,year,month,mncs,citations,categories,oa,title\n"
                            "WOS:1,2019,,,14,Information Science,1,\n"
                            "WOS:2,2019,,,0,Information Science,0,\n";
    std::ofstream(baselines) << "category,year,expected\nInformation Science,2019,7.0\n";

    RunConfig config;
    config.inputs = {input};
    config.baselines = baselines;
    config.legend = false;
    config.out_report = dir / "report.csv";
    run(config);

    const CsvTable report = parse_csv(testutil::read_file((dir / "report.csv").string()));
    REQUIRE(report.rows.size() == 2);
    CHECK(report.rows[0][1] == "2");   // 14 / 7
    CHECK(report.rows[0][4] == "C");   // class 5
    CHECK(report.rows[1][1] == "0");
    CHECK(report.rows[1][4] == "F");

    // without the table the same input cannot resolve
    config.baselines.reset();
    CHECK_THROWS_AS(run(config), MissingBaselineError);
}
