#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bibsonic/errors.hpp"

namespace bibsonic {

/// Mono sampled audio with every sample in [-1, 1].
struct AudioBuffer {
    double sample_rate = 44100.0;
    std::vector<double> samples;
};

namespace detail {

inline void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xFF));
}

inline void put_tag(std::vector<std::uint8_t>& out, const char (&tag)[5]) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(tag[i]));
}

inline std::uint16_t get_u16(std::span<const std::uint8_t> b, std::size_t at) {
    return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

inline std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
    return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
           (static_cast<std::uint32_t>(b[at + 2]) << 16) |
           (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

/// round-half-away-from-zero of sample * 32767, clamped to the int16 range
inline std::int16_t quantize_sample(double s) {
    const double scaled = std::round(s * 32767.0);
    if (scaled <= -32768.0) return -32768;
    if (scaled >= 32767.0) return 32767;
    return static_cast<std::int16_t>(scaled);
}

} // namespace detail

/// RIFF/WAVE, PCM format 1, 16-bit little-endian signed, mono.
/// File size is 44 + 2N bytes; the RIFF chunk size field is 36 + 2N.
inline std::vector<std::uint8_t> write_wav(const AudioBuffer& buffer) {
    const std::uint32_t n = static_cast<std::uint32_t>(buffer.samples.size());
    const std::uint32_t data_size = 2 * n;
    const std::uint32_t sample_rate = static_cast<std::uint32_t>(buffer.sample_rate);

    std::vector<std::uint8_t> out;
    out.reserve(44 + data_size);
    detail::put_tag(out, "RIFF");
    detail::put_u32(out, 36 + data_size);
    detail::put_tag(out, "WAVE");
    detail::put_tag(out, "fmt ");
    detail::put_u32(out, 16);             // fmt chunk size
    detail::put_u16(out, 1);              // PCM
    detail::put_u16(out, 1);              // mono
    detail::put_u32(out, sample_rate);
    detail::put_u32(out, sample_rate * 2); // byte rate
    detail::put_u16(out, 2);              // block align
    detail::put_u16(out, 16);             // bits per sample
    detail::put_tag(out, "data");
    detail::put_u32(out, data_size);
    for (double s : buffer.samples)
        detail::put_u16(out, static_cast<std::uint16_t>(detail::quantize_sample(s)));
    return out;
}

/// Reads 16-bit PCM mono WAV, the only insert format the renderer accepts.
/// `where` names the source in error messages.
inline AudioBuffer read_wav(std::span<const std::uint8_t> bytes, const std::string& where = "wav") {
    auto fail = [&](const std::string& msg) -> void { throw IoError(where + ": " + msg); };
    if (bytes.size() < 12) fail("too short for a RIFF header");
    if (std::string_view(reinterpret_cast<const char*>(bytes.data()), 4) != "RIFF" ||
        std::string_view(reinterpret_cast<const char*>(bytes.data() + 8), 4) != "WAVE")
        fail("not a RIFF/WAVE file");

    AudioBuffer buffer;
    bool have_fmt = false, have_data = false;
    std::size_t at = 12;
    while (at + 8 <= bytes.size()) {
        const std::string_view tag(reinterpret_cast<const char*>(bytes.data() + at), 4);
        const std::uint32_t size = detail::get_u32(bytes, at + 4);
        at += 8;
        if (at + size > bytes.size()) fail("truncated chunk '" + std::string(tag) + "'");
        if (tag == "fmt ") {
            if (size < 16) fail("fmt chunk too small");
            if (detail::get_u16(bytes, at) != 1) fail("only PCM (format 1) is supported");
            if (detail::get_u16(bytes, at + 2) != 1) fail("only mono is supported");
            buffer.sample_rate = detail::get_u32(bytes, at + 4);
            if (detail::get_u16(bytes, at + 14) != 16) fail("only 16-bit samples are supported");
            have_fmt = true;
        } else if (tag == "data") {
            if (!have_fmt) fail("data chunk precedes fmt chunk");
            buffer.samples.reserve(size / 2);
            for (std::size_t i = 0; i + 1 < size; i += 2) {
                const auto q = static_cast<std::int16_t>(detail::get_u16(bytes, at + i));
                buffer.samples.push_back(std::clamp(q / 32767.0, -1.0, 1.0));
            }
            have_data = true;
        }
        at += size + (size & 1); // chunks are word-aligned
    }
    if (!have_fmt || !have_data) fail("missing fmt or data chunk");
    return buffer;
}

} // namespace bibsonic
