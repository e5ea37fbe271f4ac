#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bibsonic/errors.hpp"
#include "bibsonic/pitch.hpp"
#include "bibsonic/records.hpp"

namespace bibsonic {

/// One impact class: a half-open-ended interval of one-decimal MNCS values.
/// An absent bound means the bin is open on that side.
struct ImpactBin {
    std::optional<double> lower;
    std::optional<double> upper;
    std::string meaning;
    int impact_class = 0;

    bool operator==(const ImpactBin&) const = default;
};

/// Synthesis parameters for the publication-event noise burst.
struct WhooshParams {
    double duration = 0.30;
    double gain = 0.70;
    double band_lo = 800.0;
    double band_hi = 4000.0;

    bool operator==(const WhooshParams&) const = default;
};

/// Synthesis parameters for the descending open-access bass marker.
struct DropParams {
    double duration = 0.50;
    double gain = 0.90;
    double freq_start = 80.0;
    double freq_end = 40.0;

    bool operator==(const DropParams&) const = default;
};

/// Gain and ADSR shape applied to impact tones.
struct ToneParams {
    double gain = 0.80;
    double attack = 0.01;
    double decay = 0.08;
    double sustain = 0.70;
    double release = 0.10;

    bool operator==(const ToneParams&) const = default;
};

struct EventSoundParams {
    WhooshParams whoosh;
    DropParams drop;
    ToneParams tone;

    bool operator==(const EventSoundParams&) const = default;
};

/// The bins, scale, octave anchor, and event-sound parameters that define
/// one sonification. Defaults: seven impact classes over the F natural
/// minor pitch set, first degree in octave 4, A4 = 440 Hz.
struct MappingSchema {
    std::vector<ImpactBin> bins;
    std::vector<PitchClass> scale;
    int octave_anchor = 4;
    double reference_pitch = 440.0;
    EventSoundParams event_sounds;

    static MappingSchema defaults();
    void validate() const;

    bool operator==(const MappingSchema&) const = default;
};

inline MappingSchema MappingSchema::defaults() {
    MappingSchema s;
    s.bins = {
        {std::nullopt, 0.2, "Far below", 1},
        {0.3, 0.7, "Below", 2},
        {0.8, 1.2, "Average", 3},
        {1.3, 1.6, "Above", 4},
        {1.7, 2.2, "Far above", 5},
        {2.3, 4.0, "Outreaching", 6},
        {4.1, std::nullopt, "Far outreaching", 7},
    };
    s.scale = {PitchClass::F, PitchClass::G, PitchClass::Gs, PitchClass::As,
               PitchClass::C, PitchClass::Cs, PitchClass::Ds};
    return s;
}

/// Round to one decimal place, halves away from zero. Inputs are treated
/// as printed decimals: a 1e-9 relative snap absorbs the binary
/// representation error of values like 0.15 before the half is resolved.
inline double round_one_decimal(double x) {
    if (x < 0.0) throw RangeError("round_one_decimal: negative input");
    const double tenths = std::round(x * 10.0 * 1e9) / 1e9;
    return std::floor(tenths + 0.5) / 10.0;
}

namespace detail {

inline long long to_tenths(double bound) { return std::llround(bound * 10.0); }

} // namespace detail

inline void MappingSchema::validate() const {
    if (bins.empty())
        throw ConfigError("schema: at least one impact bin is required");
    if (scale.size() != bins.size())
        throw ConfigError("schema: scale has " + std::to_string(scale.size()) +
                          " degrees but there are " + std::to_string(bins.size()) + " bins");
    if (reference_pitch <= 0.0)
        throw ConfigError("schema: reference_pitch must be positive");
    if (bins.front().lower)
        throw ConfigError("schema: first bin must be open below");
    if (bins.back().upper)
        throw ConfigError("schema: last bin must be open above");
    for (std::size_t i = 0; i < bins.size(); ++i) {
        if (bins[i].impact_class != static_cast<int>(i) + 1)
            throw ConfigError("schema: bin " + std::to_string(i) + " has class " +
                              std::to_string(bins[i].impact_class) + ", expected " +
                              std::to_string(i + 1));
        if (i > 0 && !bins[i].lower)
            throw ConfigError("schema: interior bin " + std::to_string(i) + " lacks a lower bound");
        if (i + 1 < bins.size() && !bins[i].upper)
            throw ConfigError("schema: interior bin " + std::to_string(i) + " lacks an upper bound");
        if (bins[i].lower && bins[i].upper &&
            detail::to_tenths(*bins[i].lower) > detail::to_tenths(*bins[i].upper))
            throw ConfigError("schema: bin " + std::to_string(i) + " has lower > upper");
        // adjacent bounds must meet without gap or overlap at one-decimal resolution
        if (i > 0 && detail::to_tenths(*bins[i].lower) != detail::to_tenths(*bins[i - 1].upper) + 1)
            throw ConfigError("schema: bins " + std::to_string(i - 1) + " and " + std::to_string(i) +
                              " do not tile at one-decimal resolution");
    }
}

/// Impact class of the bin containing the one-decimal rounding of `mncs`.
/// Bins tile [0, inf), so every non-negative score classifies.
inline int classify(double mncs, const MappingSchema& schema) {
    const long long tenths = detail::to_tenths(round_one_decimal(mncs));
    // binary search over lower bounds; the first bin has no lower bound
    std::size_t lo = 0, hi = schema.bins.size();
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (detail::to_tenths(*schema.bins[mid].lower) <= tenths)
            lo = mid;
        else
            hi = mid;
    }
    return schema.bins[lo].impact_class;
}

/// The class-th scale degree. The octave starts at the schema anchor and
/// increments each time the scale wraps past B (chromatic index resets).
inline PitchLabel class_to_pitch(int impact_class, const MappingSchema& schema) {
    if (impact_class < 1 || impact_class > static_cast<int>(schema.scale.size()))
        throw DomainError("class " + std::to_string(impact_class) + " is outside 1-" +
                          std::to_string(schema.scale.size()));
    int octave = schema.octave_anchor;
    for (int degree = 1; degree < impact_class; ++degree)
        if (chromatic_index(schema.scale[degree]) < chromatic_index(schema.scale[degree - 1]))
            ++octave;
    return PitchLabel{schema.scale[impact_class - 1], octave};
}

/// A publication translated into its sonic ingredients: impact class,
/// tone pitch, and the event-sound parameters active when it was mapped.
struct MappedPublication {
    std::string id;
    double mncs = 0.0;
    bool oa = false;
    int impact_class = 0;
    PitchLabel pitch;
    int midi_note = 0;
    double freq_hz = 0.0;
    WhooshParams whoosh;
    DropParams drop;
    ToneParams tone;
    PublicationRecord record;
};

/// Maps the three sonified properties: the publication event itself, the
/// open-access flag, and the citation-impact tone (plus its class marker).
inline MappedPublication map_record(const PublicationRecord& record, double mncs,
                                    const MappingSchema& schema) {
    MappedPublication m;
    m.id = record.id;
    m.mncs = mncs;
    m.oa = record.oa;
    m.impact_class = classify(mncs, schema);
    m.pitch = class_to_pitch(m.impact_class, schema);
    m.midi_note = pitch_to_midi(m.pitch);
    m.freq_hz = midi_to_freq(m.midi_note, schema.reference_pitch);
    m.whoosh = schema.event_sounds.whoosh;
    m.drop = schema.event_sounds.drop;
    m.tone = schema.event_sounds.tone;
    m.record = record;
    return m;
}

// -- JSON (de)serialization ------------------------------------------------

/// Overlay a JSON config file onto the built-in defaults. Every key is
/// optional; `bins` and `scale` replace the default lists wholesale.
inline MappingSchema schema_from_json(const nlohmann::json& j) {
    MappingSchema s = MappingSchema::defaults();
    try {
        if (j.contains("bins")) {
            s.bins.clear();
            for (const auto& jb : j.at("bins")) {
                ImpactBin b;
                if (jb.contains("lower") && !jb.at("lower").is_null())
                    b.lower = jb.at("lower").get<double>();
                if (jb.contains("upper") && !jb.at("upper").is_null())
                    b.upper = jb.at("upper").get<double>();
                if (jb.contains("meaning")) b.meaning = jb.at("meaning").get<std::string>();
                b.impact_class = jb.at("class").get<int>();
                s.bins.push_back(std::move(b));
            }
        }
        if (j.contains("scale")) {
            s.scale.clear();
            for (const auto& name : j.at("scale"))
                s.scale.push_back(pitch_class_from_string(name.get<std::string>()));
        }
        if (j.contains("octave_anchor")) s.octave_anchor = j.at("octave_anchor").get<int>();
        if (j.contains("reference_pitch")) s.reference_pitch = j.at("reference_pitch").get<double>();
        if (j.contains("event_sounds")) {
            const auto& es = j.at("event_sounds");
            if (es.contains("whoosh")) {
                const auto& w = es.at("whoosh");
                if (w.contains("duration")) s.event_sounds.whoosh.duration = w.at("duration").get<double>();
                if (w.contains("gain")) s.event_sounds.whoosh.gain = w.at("gain").get<double>();
                if (w.contains("band_lo")) s.event_sounds.whoosh.band_lo = w.at("band_lo").get<double>();
                if (w.contains("band_hi")) s.event_sounds.whoosh.band_hi = w.at("band_hi").get<double>();
            }
            if (es.contains("drop")) {
                const auto& d = es.at("drop");
                if (d.contains("duration")) s.event_sounds.drop.duration = d.at("duration").get<double>();
                if (d.contains("gain")) s.event_sounds.drop.gain = d.at("gain").get<double>();
                if (d.contains("freq_start")) s.event_sounds.drop.freq_start = d.at("freq_start").get<double>();
                if (d.contains("freq_end")) s.event_sounds.drop.freq_end = d.at("freq_end").get<double>();
            }
            if (es.contains("tone")) {
                const auto& t = es.at("tone");
                if (t.contains("gain")) s.event_sounds.tone.gain = t.at("gain").get<double>();
                if (t.contains("attack")) s.event_sounds.tone.attack = t.at("attack").get<double>();
                if (t.contains("decay")) s.event_sounds.tone.decay = t.at("decay").get<double>();
                if (t.contains("sustain")) s.event_sounds.tone.sustain = t.at("sustain").get<double>();
                if (t.contains("release")) s.event_sounds.tone.release = t.at("release").get<double>();
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("schema: ") + e.what());
    }
    s.validate();
    return s;
}

inline nlohmann::ordered_json schema_to_json(const MappingSchema& s) {
    nlohmann::ordered_json j;
    j["bins"] = nlohmann::ordered_json::array();
    for (const ImpactBin& b : s.bins) {
        nlohmann::ordered_json jb;
        jb["lower"] = b.lower ? nlohmann::ordered_json(*b.lower) : nlohmann::ordered_json(nullptr);
        jb["upper"] = b.upper ? nlohmann::ordered_json(*b.upper) : nlohmann::ordered_json(nullptr);
        jb["class"] = b.impact_class;
        jb["meaning"] = b.meaning;
        j["bins"].push_back(std::move(jb));
    }
    j["scale"] = nlohmann::ordered_json::array();
    for (PitchClass pc : s.scale) j["scale"].push_back(to_string(pc));
    j["octave_anchor"] = s.octave_anchor;
    j["reference_pitch"] = s.reference_pitch;
    j["event_sounds"] = {
        {"whoosh",
         {{"duration", s.event_sounds.whoosh.duration},
          {"gain", s.event_sounds.whoosh.gain},
          {"band_lo", s.event_sounds.whoosh.band_lo},
          {"band_hi", s.event_sounds.whoosh.band_hi}}},
        {"drop",
         {{"duration", s.event_sounds.drop.duration},
          {"gain", s.event_sounds.drop.gain},
          {"freq_start", s.event_sounds.drop.freq_start},
          {"freq_end", s.event_sounds.drop.freq_end}}},
        {"tone",
         {{"gain", s.event_sounds.tone.gain},
          {"attack", s.event_sounds.tone.attack},
          {"decay", s.event_sounds.tone.decay},
          {"sustain", s.event_sounds.tone.sustain},
          {"release", s.event_sounds.tone.release}}},
    };
    return j;
}

} // namespace bibsonic
