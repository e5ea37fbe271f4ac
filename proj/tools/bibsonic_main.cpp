// Command-line driver: ingest publication metadata, map it onto the
// seven-tone impact scale, and emit WAV/MIDI/JSON/CSV renditions.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bibsonic/bibsonic.hpp"

int main(int argc, char** argv) {
    CLI::App app{"bibsonic - sonify bibliometric publication metadata"};

    bibsonic::RunConfig config;
    std::vector<std::string> inputs;
    std::string format = "csv";
    std::string baselines, schema, timing;
    std::string out_wav, out_midi, out_log, out_report;
    bool no_legend = false;
    int min_year = 0, max_year = 0;

    app.add_option("--input", inputs, "Input file, repeatable; one track segment each")
        ->required()
        ->take_all();
    app.add_option("--format", format, "Input format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--baselines", baselines, "Citation baseline table (CSV: category,year,expected)");
    app.add_option("--schema", schema, "Mapping schema overrides (JSON)");
    app.add_option("--timing", timing, "Timing config overrides (JSON)");
    app.add_option("--out-wav", out_wav, "Rendered audio output path");
    app.add_option("--out-midi", out_midi, "Symbolic MIDI output path");
    app.add_option("--out-log", out_log, "JSON event log output path");
    app.add_option("--out-report", out_report, "CSV mapping report output path");
    app.add_option("--seed", config.seed, "Master seed for the noise events")->capture_default_str();
    app.add_flag("--no-legend", no_legend, "Skip the introductory legend segment");
    auto* min_opt = app.add_option("--min-pub-year", min_year, "Drop records published before this year");
    auto* max_opt = app.add_option("--max-pub-year", max_year, "Drop records published after this year");

    CLI11_PARSE(app, argc, argv);

    for (const std::string& p : inputs) config.inputs.emplace_back(p);
    config.format = format == "json" ? bibsonic::RecordFormat::Json : bibsonic::RecordFormat::Csv;
    if (!baselines.empty()) config.baselines = baselines;
    if (!schema.empty()) config.schema = schema;
    if (!timing.empty()) config.timing = timing;
    if (!out_wav.empty()) config.out_wav = out_wav;
    if (!out_midi.empty()) config.out_midi = out_midi;
    if (!out_log.empty()) config.out_log = out_log;
    if (!out_report.empty()) config.out_report = out_report;
    config.legend = !no_legend;
    if (min_opt->count() > 0) config.min_pub_year = min_year;
    if (max_opt->count() > 0) config.max_pub_year = max_year;

    try {
        const bibsonic::RunSummary summary = bibsonic::run(config);
        std::printf("sonified %zu publications (%zu OA), %.3f s\n", summary.publications,
                    summary.oa_count, summary.duration_seconds);
    } catch (const bibsonic::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 1;
    }
    return 0;
}
