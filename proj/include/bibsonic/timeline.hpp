#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "bibsonic/errors.hpp"
#include "bibsonic/mapping.hpp"

namespace bibsonic {

constexpr double kDefaultSampleRate = 44100.0;

/// Enum order doubles as the tie-break order for events sharing an onset.
enum class EventKind { PubWhoosh, OaDrop, ImpactTone, ClassMarker, ExternalInsert };

inline std::string to_string(EventKind k) {
    switch (k) {
    case EventKind::PubWhoosh: return "pub_whoosh";
    case EventKind::OaDrop: return "oa_drop";
    case EventKind::ImpactTone: return "impact_tone";
    case EventKind::ClassMarker: return "class_marker";
    case EventKind::ExternalInsert: return "external_insert";
    }
    throw DomainError("unknown event kind");
}

inline EventKind event_kind_from_string(std::string_view name) {
    for (EventKind k : {EventKind::PubWhoosh, EventKind::OaDrop, EventKind::ImpactTone,
                        EventKind::ClassMarker, EventKind::ExternalInsert})
        if (to_string(k) == name) return k;
    throw ValidationError("unknown event kind '" + std::string(name) + "'");
}

/// One scheduled sound. Class markers are silent in audio rendering; they
/// surface only in the event log and as MIDI text events.
struct SonicEvent {
    EventKind kind = EventKind::PubWhoosh;
    double onset = 0.0;
    double duration = 0.0;
    double gain = 1.0;
    int impact_class = 0;    // ImpactTone, ClassMarker
    int midi_note = 0;       // ImpactTone
    double freq_hz = 0.0;    // ImpactTone
    std::string insert_path; // ExternalInsert
    std::string source_id;   // originating publication, empty for legend events

    bool operator==(const SonicEvent&) const = default;
};

/// Per-publication spacing of the scheduled sounds, in seconds.
struct TimingConfig {
    double slot = 0.75;
    double oa_offset = 0.15;
    double tone_offset = 0.30;
    double tone_duration = 0.40;
    double lead_in = 1.0;
    double segment_gap = 2.0;

    bool operator==(const TimingConfig&) const = default;

    void validate() const {
        for (auto [v, name] : {std::pair{slot, "slot"}, {oa_offset, "oa_offset"},
                               {tone_offset, "tone_offset"}, {tone_duration, "tone_duration"},
                               {lead_in, "lead_in"}, {segment_gap, "segment_gap"}})
            if (!(v > 0.0))
                throw ConfigError(std::string("timing: '") + name + "' must be positive");
        if (!(oa_offset < tone_offset && tone_offset < slot))
            throw ConfigError("timing: need oa_offset < tone_offset < slot");
    }
};

struct Timeline {
    double sample_rate = kDefaultSampleRate;
    std::vector<SonicEvent> events; // sorted by onset, ties by kind order
    double total_duration = 0.0;
};

namespace detail {

inline void sort_events(std::vector<SonicEvent>& events) {
    std::stable_sort(events.begin(), events.end(), [](const SonicEvent& a, const SonicEvent& b) {
        return a.onset != b.onset ? a.onset < b.onset : a.kind < b.kind;
    });
}

inline double events_end(const std::vector<SonicEvent>& events) {
    double end = 0.0;
    for (const SonicEvent& e : events) end = std::max(end, e.onset + e.duration);
    return end;
}

} // namespace detail

/// Lay out one slot per publication: the whoosh at the slot start, the OA
/// drop (when flagged) at +oa_offset, and the impact tone plus its class
/// marker at +tone_offset. Input order becomes onset order.
inline Timeline schedule(std::span<const MappedPublication> mapped, const TimingConfig& cfg,
                         double sample_rate = kDefaultSampleRate) {
    cfg.validate();
    Timeline t;
    t.sample_rate = sample_rate;
    for (std::size_t i = 0; i < mapped.size(); ++i) {
        const MappedPublication& m = mapped[i];
        const double start = cfg.lead_in + static_cast<double>(i) * cfg.slot;
        t.events.push_back({EventKind::PubWhoosh, start, m.whoosh.duration, m.whoosh.gain,
                            0, 0, 0.0, "", m.id});
        if (m.oa)
            t.events.push_back({EventKind::OaDrop, start + cfg.oa_offset, m.drop.duration,
                                m.drop.gain, 0, 0, 0.0, "", m.id});
        t.events.push_back({EventKind::ImpactTone, start + cfg.tone_offset, cfg.tone_duration,
                            m.tone.gain, m.impact_class, m.midi_note, m.freq_hz, "", m.id});
        t.events.push_back({EventKind::ClassMarker, start + cfg.tone_offset, cfg.tone_duration,
                            0.0, m.impact_class, 0, 0.0, "", m.id});
    }
    detail::sort_events(t.events);
    t.total_duration = std::max(cfg.lead_in + static_cast<double>(mapped.size()) * cfg.slot,
                                detail::events_end(t.events));
    return t;
}

/// The introductory passage demonstrating each mapped sound in turn:
/// a publication whoosh, the OA drop, the medium / high / low impact
/// tones (classes 3, 6, 1), then the class markers 1..N in sequence.
inline Timeline build_legend(const MappingSchema& schema, const TimingConfig& cfg,
                             double sample_rate = kDefaultSampleRate) {
    cfg.validate();
    schema.validate();
    const EventSoundParams& es = schema.event_sounds;

    Timeline t;
    t.sample_rate = sample_rate;
    double onset = cfg.lead_in;
    auto demonstrate = [&](EventKind kind, double duration, double gain, int impact_class = 0,
                           int midi_note = 0, double freq_hz = 0.0) {
        SonicEvent e;
        e.kind = kind;
        e.onset = onset;
        e.duration = duration;
        e.gain = gain;
        e.impact_class = impact_class;
        e.midi_note = midi_note;
        e.freq_hz = freq_hz;
        t.events.push_back(std::move(e));
        onset += cfg.segment_gap;
    };

    demonstrate(EventKind::PubWhoosh, es.whoosh.duration, es.whoosh.gain);
    demonstrate(EventKind::OaDrop, es.drop.duration, es.drop.gain);
    const int n = static_cast<int>(schema.bins.size());
    const int medium = classify(1.0, schema); // the bin holding average impact
    for (int demo_class : {medium, std::max(n - 1, 1), 1}) {
        const int note = pitch_to_midi(class_to_pitch(demo_class, schema));
        demonstrate(EventKind::ImpactTone, cfg.tone_duration, es.tone.gain, demo_class, note,
                    midi_to_freq(note, schema.reference_pitch));
    }
    for (int marker_class = 1; marker_class <= n; ++marker_class)
        demonstrate(EventKind::ClassMarker, cfg.tone_duration, 0.0, marker_class);

    detail::sort_events(t.events);
    t.total_duration = detail::events_end(t.events);
    return t;
}

/// Segments laid end to end, `gap` seconds apart. All segments must share
/// one sample rate; a single segment passes through unchanged.
inline Timeline concat(std::span<const Timeline> segments, double gap) {
    if (segments.empty()) return Timeline{kDefaultSampleRate, {}, 0.0};
    Timeline out;
    out.sample_rate = segments.front().sample_rate;
    double offset = 0.0;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const Timeline& seg = segments[i];
        if (seg.sample_rate != out.sample_rate)
            throw ConfigError("concat: segment " + std::to_string(i) + " has sample rate " +
                              std::to_string(seg.sample_rate) + ", expected " +
                              std::to_string(out.sample_rate));
        if (i > 0) offset += gap;
        for (SonicEvent e : seg.events) {
            e.onset += offset;
            out.events.push_back(std::move(e));
        }
        offset += seg.total_duration;
    }
    out.total_duration = offset;
    return out;
}

// -- JSON (de)serialization ------------------------------------------------

inline TimingConfig timing_from_json(const nlohmann::json& j) {
    TimingConfig cfg;
    try {
        if (j.contains("slot")) cfg.slot = j.at("slot").get<double>();
        if (j.contains("oa_offset")) cfg.oa_offset = j.at("oa_offset").get<double>();
        if (j.contains("tone_offset")) cfg.tone_offset = j.at("tone_offset").get<double>();
        if (j.contains("tone_duration")) cfg.tone_duration = j.at("tone_duration").get<double>();
        if (j.contains("lead_in")) cfg.lead_in = j.at("lead_in").get<double>();
        if (j.contains("segment_gap")) cfg.segment_gap = j.at("segment_gap").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("timing: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

inline nlohmann::ordered_json timing_to_json(const TimingConfig& cfg) {
    return nlohmann::ordered_json{
        {"slot", cfg.slot},
        {"oa_offset", cfg.oa_offset},
        {"tone_offset", cfg.tone_offset},
        {"tone_duration", cfg.tone_duration},
        {"lead_in", cfg.lead_in},
        {"segment_gap", cfg.segment_gap},
    };
}

} // namespace bibsonic
