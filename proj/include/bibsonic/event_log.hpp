#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bibsonic/errors.hpp"
#include "bibsonic/mapping.hpp"
#include "bibsonic/records.hpp"
#include "bibsonic/timeline.hpp"

namespace bibsonic {

/// Records serialized with the same keys the JSON ingest format accepts,
/// so a written log's `records` array parses back to field-equal records.
inline nlohmann::ordered_json records_to_json(std::span<const PublicationRecord> records) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const PublicationRecord& r : records) {
        nlohmann::ordered_json j;
        j["id"] = r.id;
        j["year"] = r.year;
        if (r.month) j["month"] = *r.month;
        if (r.mncs) j["mncs"] = *r.mncs;
        if (r.citations) j["citations"] = *r.citations;
        if (!r.categories.empty()) j["categories"] = r.categories;
        j["oa"] = r.oa;
        if (r.title) j["title"] = *r.title;
        arr.push_back(std::move(j));
    }
    return arr;
}

/// JSON log carrying the schema snapshot, the timing config, the source
/// records, and one entry per scheduled event.
inline std::vector<std::uint8_t> write_event_log(const Timeline& timeline,
                                                 std::span<const MappedPublication> mapped,
                                                 const MappingSchema& schema,
                                                 const TimingConfig& timing) {
    nlohmann::ordered_json j;
    j["schema"] = schema_to_json(schema);
    j["timing"] = timing_to_json(timing);
    j["sample_rate"] = timeline.sample_rate;
    j["total_duration"] = timeline.total_duration;

    std::vector<PublicationRecord> records;
    records.reserve(mapped.size());
    for (const MappedPublication& m : mapped) records.push_back(m.record);
    j["records"] = records_to_json(records);

    j["events"] = nlohmann::ordered_json::array();
    for (const SonicEvent& e : timeline.events) {
        nlohmann::ordered_json je;
        je["kind"] = to_string(e.kind);
        je["onset"] = e.onset;
        je["duration"] = e.duration;
        je["gain"] = e.gain;
        if (e.kind == EventKind::ImpactTone || e.kind == EventKind::ClassMarker)
            je["class"] = e.impact_class;
        if (e.kind == EventKind::ImpactTone) {
            je["freq"] = e.freq_hz;
            je["midi"] = e.midi_note;
        }
        if (!e.source_id.empty()) je["source_id"] = e.source_id;
        if (e.kind == EventKind::ExternalInsert) je["path"] = e.insert_path;
        j["events"].push_back(std::move(je));
    }

    const std::string text = j.dump(2) + "\n";
    return {text.begin(), text.end()};
}

/// Rebuild the timeline a log was written from.
inline Timeline read_event_log(std::string_view json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what());
    }
    Timeline t;
    try {
        t.sample_rate = j.at("sample_rate").get<double>();
        t.total_duration = j.at("total_duration").get<double>();
        for (const auto& je : j.at("events")) {
            SonicEvent e;
            e.kind = event_kind_from_string(je.at("kind").get<std::string>());
            e.onset = je.at("onset").get<double>();
            e.duration = je.at("duration").get<double>();
            e.gain = je.at("gain").get<double>();
            if (je.contains("class")) e.impact_class = je.at("class").get<int>();
            if (je.contains("freq")) e.freq_hz = je.at("freq").get<double>();
            if (je.contains("midi")) e.midi_note = je.at("midi").get<int>();
            if (je.contains("source_id")) e.source_id = je.at("source_id").get<std::string>();
            if (je.contains("path")) e.insert_path = je.at("path").get<std::string>();
            t.events.push_back(std::move(e));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("event log: ") + e.what());
    }
    return t;
}

} // namespace bibsonic
