#pragma once

#include <array>
#include <cmath>
#include <string>
#include <string_view>

#include "bibsonic/errors.hpp"

namespace bibsonic {

/// Twelve chromatic pitch classes, C = 0.
enum class PitchClass : int {
    C = 0, Cs, D, Ds, E, F, Fs, G, Gs, A, As, B
};

constexpr int chromatic_index(PitchClass pc) { return static_cast<int>(pc); }

inline std::string to_string(PitchClass pc) {
    static constexpr std::array<const char*, 12> names = {
        "C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B"};
    return names[static_cast<std::size_t>(pc)];
}

/// Accepts sharp names ("G#") and the enharmonic flat spellings ("Ab").
inline PitchClass pitch_class_from_string(std::string_view name) {
    static constexpr std::array<std::pair<std::string_view, PitchClass>, 21> table = {{
        {"C", PitchClass::C},   {"C#", PitchClass::Cs}, {"Db", PitchClass::Cs},
        {"D", PitchClass::D},   {"D#", PitchClass::Ds}, {"Eb", PitchClass::Ds},
        {"E", PitchClass::E},   {"F", PitchClass::F},   {"F#", PitchClass::Fs},
        {"Gb", PitchClass::Fs}, {"G", PitchClass::G},   {"G#", PitchClass::Gs},
        {"Ab", PitchClass::Gs}, {"A", PitchClass::A},   {"A#", PitchClass::As},
        {"Bb", PitchClass::As}, {"B", PitchClass::B},   {"Cb", PitchClass::B},
        {"E#", PitchClass::F},  {"B#", PitchClass::C},  {"Fb", PitchClass::E},
    }};
    for (const auto& [n, pc] : table)
        if (n == name) return pc;
    throw ValidationError("unknown pitch class '" + std::string(name) + "'");
}

/// A pitch class in a specific octave, e.g. G#4.
struct PitchLabel {
    PitchClass pitch_class = PitchClass::C;
    int octave = 4;

    bool operator==(const PitchLabel&) const = default;

    std::string name() const {
        return to_string(pitch_class) + std::to_string(octave);
    }
};

/// MIDI note number: 12 * (octave + 1) + chromatic index, so C4 -> 60.
inline int pitch_to_midi(PitchLabel p) {
    const int note = 12 * (p.octave + 1) + chromatic_index(p.pitch_class);
    if (note < 0 || note > 127)
        throw DomainError("pitch " + p.name() + " maps to MIDI note " + std::to_string(note) +
                          ", outside 0-127");
    return note;
}

/// Equal temperament: reference_pitch * 2^((note - 69) / 12).
inline double midi_to_freq(int note, double reference_pitch = 440.0) {
    return reference_pitch * std::pow(2.0, (note - 69) / 12.0);
}

} // namespace bibsonic
