#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "bibsonic/timeline.hpp"

namespace bibsonic {

// SMF type 0 layout constants. The whoosh and drop stand-ins are arbitrary
// but fixed: closed hi-hat on the percussion channel and a low E1.
constexpr int kMidiTicksPerQuarter = 480;
constexpr int kMidiTempoBpm = 120;
constexpr std::uint32_t kMidiTempoMicros = 500000;
constexpr int kMidiMelodicChannel = 0;
constexpr int kMidiDropChannel = 1;
constexpr int kMidiPercussionChannel = 9; // "channel 10" in 1-based MIDI parlance
constexpr int kMidiWhooshNote = 42;
constexpr int kMidiDropNote = 28;

namespace detail {

/// seconds -> ticks at 120 BPM and 480 TPQ, halves away from zero
inline std::int64_t seconds_to_ticks(double seconds) {
    return std::llround(seconds * kMidiTicksPerQuarter * (kMidiTempoBpm / 60.0));
}

inline void put_vlq(std::vector<std::uint8_t>& out, std::uint32_t value) {
    std::uint8_t stack[5];
    int count = 0;
    do {
        stack[count++] = static_cast<std::uint8_t>(value & 0x7F);
        value >>= 7;
    } while (value != 0);
    while (count > 1) out.push_back(static_cast<std::uint8_t>(stack[--count] | 0x80));
    out.push_back(stack[0]);
}

struct TimedMessage {
    std::int64_t tick;
    std::vector<std::uint8_t> bytes;
};

inline int velocity_from_gain(double gain) {
    return std::clamp(static_cast<int>(std::llround(gain * 127.0)), 1, 127);
}

} // namespace detail

/// Standard MIDI File type 0: one track, 480 ticks per quarter, 120 BPM.
/// Impact tones become note-on/off pairs on the melodic channel; whooshes
/// and drops map to their fixed stand-in notes; class markers become text
/// meta-events "class:N".
inline std::vector<std::uint8_t> write_midi(const Timeline& timeline) {
    std::vector<detail::TimedMessage> messages;
    messages.reserve(timeline.events.size() * 2 + 1);

    if (!timeline.events.empty())
        messages.push_back({0, {0xFF, 0x51, 0x03, (kMidiTempoMicros >> 16) & 0xFF,
                                (kMidiTempoMicros >> 8) & 0xFF, kMidiTempoMicros & 0xFF}});

    auto push_note = [&](const SonicEvent& e, int channel, int note, int velocity) {
        const std::int64_t on = detail::seconds_to_ticks(e.onset);
        const std::int64_t off =
            on + std::max<std::int64_t>(1, detail::seconds_to_ticks(e.duration));
        const auto key = static_cast<std::uint8_t>(note);
        messages.push_back({on, {static_cast<std::uint8_t>(0x90 | channel), key,
                                 static_cast<std::uint8_t>(velocity)}});
        messages.push_back({off, {static_cast<std::uint8_t>(0x80 | channel), key, 0x40}});
    };

    for (const SonicEvent& e : timeline.events) {
        switch (e.kind) {
        case EventKind::PubWhoosh:
            push_note(e, kMidiPercussionChannel, kMidiWhooshNote,
                      detail::velocity_from_gain(e.gain));
            break;
        case EventKind::OaDrop:
            push_note(e, kMidiDropChannel, kMidiDropNote, detail::velocity_from_gain(e.gain));
            break;
        case EventKind::ImpactTone:
            push_note(e, kMidiMelodicChannel, e.midi_note, detail::velocity_from_gain(e.gain));
            break;
        case EventKind::ClassMarker: {
            const std::string text = "class:" + std::to_string(e.impact_class);
            std::vector<std::uint8_t> bytes = {0xFF, 0x01,
                                               static_cast<std::uint8_t>(text.size())};
            bytes.insert(bytes.end(), text.begin(), text.end());
            messages.push_back({detail::seconds_to_ticks(e.onset), std::move(bytes)});
            break;
        }
        case EventKind::ExternalInsert:
            break; // audio-only
        }
    }

    std::stable_sort(messages.begin(), messages.end(),
                     [](const detail::TimedMessage& a, const detail::TimedMessage& b) {
                         return a.tick < b.tick;
                     });

    std::vector<std::uint8_t> track;
    std::int64_t last_tick = 0;
    for (const detail::TimedMessage& m : messages) {
        detail::put_vlq(track, static_cast<std::uint32_t>(m.tick - last_tick));
        track.insert(track.end(), m.bytes.begin(), m.bytes.end());
        last_tick = m.tick;
    }
    // end of track
    detail::put_vlq(track, 0);
    track.insert(track.end(), {0xFF, 0x2F, 0x00});

    std::vector<std::uint8_t> out;
    out.reserve(14 + 8 + track.size());
    auto put_be16 = [&](std::uint16_t v) {
        out.push_back(static_cast<std::uint8_t>(v >> 8));
        out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    };
    auto put_be32 = [&](std::uint32_t v) {
        out.push_back(static_cast<std::uint8_t>(v >> 24));
        out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
        out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
        out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    };
    out.insert(out.end(), {'M', 'T', 'h', 'd'});
    put_be32(6);
    put_be16(0); // format 0
    put_be16(1); // one track
    put_be16(kMidiTicksPerQuarter);
    out.insert(out.end(), {'M', 'T', 'r', 'k'});
    put_be32(static_cast<std::uint32_t>(track.size()));
    out.insert(out.end(), track.begin(), track.end());
    return out;
}

} // namespace bibsonic
