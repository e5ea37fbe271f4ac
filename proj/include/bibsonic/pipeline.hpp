#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "bibsonic/baselines.hpp"
#include "bibsonic/errors.hpp"
#include "bibsonic/event_log.hpp"
#include "bibsonic/mapping.hpp"
#include "bibsonic/midi.hpp"
#include "bibsonic/records.hpp"
#include "bibsonic/report.hpp"
#include "bibsonic/synth.hpp"
#include "bibsonic/timeline.hpp"
#include "bibsonic/wav.hpp"

namespace bibsonic {

/// Everything one end-to-end invocation needs. Each input file becomes one
/// track segment; the legend segment is prepended unless disabled.
struct RunConfig {
    std::vector<std::filesystem::path> inputs;
    RecordFormat format = RecordFormat::Csv;
    std::optional<std::filesystem::path> baselines;
    std::optional<std::filesystem::path> schema;
    std::optional<std::filesystem::path> timing;
    std::optional<std::filesystem::path> out_wav;
    std::optional<std::filesystem::path> out_midi;
    std::optional<std::filesystem::path> out_log;
    std::optional<std::filesystem::path> out_report;
    std::uint64_t seed = 0;
    bool legend = true;
    std::optional<int> min_pub_year;
    std::optional<int> max_pub_year;
    unsigned threads = 0; // 0 = hardware concurrency
};

struct RunSummary {
    std::size_t publications = 0;
    std::size_t oa_count = 0;
    double duration_seconds = 0.0;
};

namespace detail {

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path.string() + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (!in.good() && !in.eof()) throw IoError("error while reading '" + path.string() + "'");
    return text;
}

/// Write via a sibling temp file and rename, so a failed run never leaves
/// a partial output behind.
inline void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write '" + path.string() + "'");
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
        if (!out.good()) {
            out.close();
            std::filesystem::remove(tmp);
            throw IoError("error while writing '" + path.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw IoError("cannot move output into place at '" + path.string() + "': " + ec.message());
    }
}

inline nlohmann::json parse_json_file(const std::filesystem::path& path) {
    try {
        return nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("'" + path.string() + "': " + e.what());
    }
}

} // namespace detail

/// ingest -> normalize -> map -> schedule -> render -> export.
inline RunSummary run(const RunConfig& config) {
    if (config.inputs.empty()) throw ConfigError("at least one input file is required");

    const MappingSchema schema = config.schema
                                     ? schema_from_json(detail::parse_json_file(*config.schema))
                                     : MappingSchema::defaults();
    schema.validate();
    const TimingConfig timing =
        config.timing ? timing_from_json(detail::parse_json_file(*config.timing)) : TimingConfig{};
    timing.validate();
    const std::vector<CitationBaseline> baseline_table =
        config.baselines ? parse_baselines(detail::read_file(*config.baselines))
                         : std::vector<CitationBaseline>{};

    std::vector<Timeline> segments;
    if (config.legend) segments.push_back(build_legend(schema, timing));

    std::vector<MappedPublication> all_mapped;
    for (const std::filesystem::path& input : config.inputs) {
        std::vector<PublicationRecord> records;
        const std::string context = "'" + input.string() + "': ";
        try {
            records = parse_records(detail::read_file(input), config.format);
        } catch (const ParseError& e) {
            throw ParseError(context + e.what());
        } catch (const RangeError& e) {
            throw RangeError(context + e.what());
        } catch (const ValidationError& e) {
            throw ValidationError(context + e.what());
        }

        std::erase_if(records, [&](const PublicationRecord& r) {
            return (config.min_pub_year && r.year < *config.min_pub_year) ||
                   (config.max_pub_year && r.year > *config.max_pub_year);
        });
        records = sort_chronological(std::move(records));

        std::vector<MappedPublication> mapped;
        mapped.reserve(records.size());
        for (const PublicationRecord& r : records)
            mapped.push_back(map_record(r, resolve_mncs(r, baseline_table), schema));

        segments.push_back(schedule(mapped, timing));
        all_mapped.insert(all_mapped.end(), std::make_move_iterator(mapped.begin()),
                          std::make_move_iterator(mapped.end()));
    }

    const Timeline track = concat(segments, timing.segment_gap);

    if (config.out_wav) {
        const AudioBuffer buffer = render(track, schema, config.seed, config.threads);
        detail::write_file(*config.out_wav, write_wav(buffer));
    }
    if (config.out_midi) detail::write_file(*config.out_midi, write_midi(track));
    if (config.out_log)
        detail::write_file(*config.out_log, write_event_log(track, all_mapped, schema, timing));
    if (config.out_report)
        detail::write_file(*config.out_report, write_mapping_report(report_rows(all_mapped)));

    RunSummary summary;
    summary.publications = all_mapped.size();
    for (const MappedPublication& m : all_mapped)
        if (m.oa) ++summary.oa_count;
    summary.duration_seconds = track.total_duration;
    return summary;
}

} // namespace bibsonic
