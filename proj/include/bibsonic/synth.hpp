#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <mutex>
#include <numbers>
#include <thread>
#include <vector>

#include "bibsonic/errors.hpp"
#include "bibsonic/mapping.hpp"
#include "bibsonic/timeline.hpp"
#include "bibsonic/wav.hpp"

namespace bibsonic {

/// Linear ADSR amplitude shape. attack + decay + release must fit inside
/// the event duration.
struct Envelope {
    double attack = 0.01;
    double decay = 0.08;
    double sustain = 0.70;
    double release = 0.10;
};

namespace detail {

constexpr std::uint64_t kSeedStride = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += kSeedStride;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Uniform noise in [-1, 1) from a portable 64-bit generator; identical
/// output for identical seeds on every platform.
class NoiseSource {
public:
    explicit NoiseSource(std::uint64_t seed) : state_(seed) {}

    double next() {
        const std::uint64_t z = splitmix64(state_);
        return static_cast<double>(z >> 11) * (1.0 / 9007199254740992.0) * 2.0 - 1.0;
    }

private:
    std::uint64_t state_;
};

/// One bandpass biquad section (constant 0 dB peak gain).
struct BiquadBandpass {
    double x1 = 0, x2 = 0, y1 = 0, y2 = 0;

    double step(double x, double center_hz, double q, double sample_rate) {
        const double w0 = 2.0 * std::numbers::pi * center_hz / sample_rate;
        const double alpha = std::sin(w0) / (2.0 * q);
        const double a0 = 1.0 + alpha;
        const double b0 = alpha / a0;
        const double b2 = -alpha / a0;
        const double a1 = -2.0 * std::cos(w0) / a0;
        const double a2 = (1.0 - alpha) / a0;
        const double y = b0 * x + b2 * x2 - a1 * y1 - a2 * y2;
        x2 = x1;
        x1 = x;
        y2 = y1;
        y1 = y;
        return y;
    }
};

inline std::size_t sample_count(double duration, double sample_rate) {
    return static_cast<std::size_t>(std::ceil(duration * sample_rate));
}

} // namespace detail

/// Seed for one event, a pure function of the master seed and the event's
/// index in its timeline, so rendering order cannot change the output.
inline std::uint64_t per_event_seed(std::uint64_t master_seed, std::size_t event_index) {
    std::uint64_t state = master_seed ^ (detail::kSeedStride * (event_index + 1));
    return detail::splitmix64(state);
}

/// Sine tone shaped by a linear ADSR. The oscillator starts at phase zero
/// and the release ramp reaches zero on the final sample, so both ends sit
/// within 1e-3 of silence.
inline std::vector<double> render_tone(double freq, double duration, const Envelope& env,
                                       double sample_rate) {
    if (freq < 20.0 || freq > 20000.0)
        throw DomainError("tone frequency " + std::to_string(freq) + " Hz is outside 20-20000");
    if (!(duration > 0.0)) throw DomainError("tone duration must be positive");
    if (env.attack + env.decay + env.release > duration)
        throw ConfigError("envelope attack+decay+release exceeds the event duration");
    if (env.sustain < 0.0 || env.sustain > 1.0)
        throw ConfigError("envelope sustain must be in [0, 1]");

    const std::size_t n = detail::sample_count(duration, sample_rate);
    const std::size_t na = static_cast<std::size_t>(std::llround(env.attack * sample_rate));
    const std::size_t nd = static_cast<std::size_t>(std::llround(env.decay * sample_rate));
    const std::size_t nr = static_cast<std::size_t>(std::llround(env.release * sample_rate));
    const double omega = 2.0 * std::numbers::pi * freq / sample_rate;

    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double level;
        if (i < na)
            level = static_cast<double>(i) / static_cast<double>(na);
        else if (i < na + nd)
            level = 1.0 - (1.0 - env.sustain) * (static_cast<double>(i - na) / static_cast<double>(nd));
        else if (nr > 0 && i >= n - nr)
            level = env.sustain * static_cast<double>(n - i) / static_cast<double>(nr);
        else
            level = env.sustain;
        out[i] = std::sin(omega * static_cast<double>(i)) * level;
    }
    return out;
}

/// Publication-event noise burst: seeded white noise through two cascaded
/// bandpass sections whose center sweeps band_lo -> band_hi exponentially,
/// under a raised-cosine fade-in/out.
inline std::vector<double> render_whoosh(double duration, std::uint64_t seed, double sample_rate,
                                         double band_lo = 800.0, double band_hi = 4000.0) {
    if (!(duration > 0.0)) throw DomainError("whoosh duration must be positive");
    const std::size_t n = detail::sample_count(duration, sample_rate);
    const double ratio = band_hi / band_lo;
    constexpr double kQ = 1.2;
    constexpr double kMakeupGain = 1.5;

    detail::NoiseSource noise(seed);
    detail::BiquadBandpass stage1, stage2;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double center = band_lo * std::pow(ratio, static_cast<double>(i) / static_cast<double>(n));
        const double filtered =
            stage2.step(stage1.step(noise.next(), center, kQ, sample_rate), center, kQ, sample_rate);
        out[i] = filtered * kMakeupGain;
    }

    const std::size_t na = std::max<std::size_t>(1, static_cast<std::size_t>(0.15 * n));
    const std::size_t nr = std::max<std::size_t>(1, static_cast<std::size_t>(0.35 * n));
    for (std::size_t i = 0; i < na && i < n; ++i)
        out[i] *= 0.5 - 0.5 * std::cos(std::numbers::pi * static_cast<double>(i) / static_cast<double>(na));
    for (std::size_t i = 0; i < nr && i < n; ++i)
        out[n - nr + i] *=
            0.5 + 0.5 * std::cos(std::numbers::pi * static_cast<double>(i) / static_cast<double>(nr));
    return out;
}

/// Open-access marker: a sine whose instantaneous frequency glides
/// exponentially from freq_start to freq_end, under an exponential decay
/// with a short attack and a final fade to zero.
inline std::vector<double> render_oa_drop(double duration, double sample_rate,
                                          double freq_start = 80.0, double freq_end = 40.0) {
    if (!(duration > 0.0)) throw DomainError("drop duration must be positive");
    if (freq_start <= 0.0 || freq_end <= 0.0 || freq_start == freq_end)
        throw DomainError("drop glide frequencies must be positive and distinct");
    const std::size_t n = detail::sample_count(duration, sample_rate);
    const double k = std::log(freq_end / freq_start);
    const std::size_t na = std::max<std::size_t>(1, static_cast<std::size_t>(0.005 * sample_rate));
    const std::size_t nf = std::max<std::size_t>(1, static_cast<std::size_t>(0.05 * n));

    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / sample_rate;
        // integral of the exponential glide gives the phase in cycles
        const double phase =
            2.0 * std::numbers::pi * freq_start * (duration / k) * (std::exp(k * t / duration) - 1.0);
        double s = std::sin(phase) * std::exp(-3.0 * t / duration);
        if (i < na) s *= static_cast<double>(i) / static_cast<double>(na);
        if (i >= n - nf) s *= 1.0 - static_cast<double>(i - (n - nf)) / static_cast<double>(nf);
        out[i] = s;
    }
    return out;
}

namespace detail {

inline std::vector<double> render_event(const SonicEvent& e, const MappingSchema& schema,
                                        std::uint64_t master_seed, std::size_t index,
                                        double sample_rate) {
    const EventSoundParams& es = schema.event_sounds;
    switch (e.kind) {
    case EventKind::PubWhoosh:
        return render_whoosh(e.duration, per_event_seed(master_seed, index), sample_rate,
                             es.whoosh.band_lo, es.whoosh.band_hi);
    case EventKind::OaDrop:
        return render_oa_drop(e.duration, sample_rate, es.drop.freq_start, es.drop.freq_end);
    case EventKind::ImpactTone:
        return render_tone(e.freq_hz, e.duration,
                           Envelope{es.tone.attack, es.tone.decay, es.tone.sustain, es.tone.release},
                           sample_rate);
    case EventKind::ClassMarker:
        return {}; // symbolic only
    case EventKind::ExternalInsert: {
        std::ifstream in(e.insert_path, std::ios::binary);
        if (!in) throw IoError("external insert '" + e.insert_path + "': cannot open file");
        std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
        AudioBuffer clip = read_wav(bytes, "external insert '" + e.insert_path + "'");
        if (clip.sample_rate != sample_rate)
            throw IoError("external insert '" + e.insert_path + "': sample rate " +
                          std::to_string(clip.sample_rate) + " does not match timeline rate " +
                          std::to_string(sample_rate) + " (no resampling)");
        return std::move(clip.samples);
    }
    }
    throw DomainError("unknown event kind");
}

} // namespace detail

/// Render every audible event and mix at its onset. Each event's samples
/// are a pure function of (event, schema, master_seed, event index), and
/// the mix accumulates in event-index order, so any thread count produces
/// bit-identical buffers. If the raw peak exceeds the ceiling (default
/// 0.9) the whole buffer is scaled down to it.
inline AudioBuffer render(const Timeline& timeline, const MappingSchema& schema,
                          std::uint64_t master_seed, unsigned threads = 0,
                          double peak_ceiling = 0.9) {
    if (!(peak_ceiling > 0.0 && peak_ceiling <= 1.0))
        throw ConfigError("peak ceiling must be in (0, 1]");
    const double rate = timeline.sample_rate;
    AudioBuffer buffer;
    buffer.sample_rate = rate;
    buffer.samples.assign(detail::sample_count(timeline.total_duration, rate), 0.0);

    std::vector<std::vector<double>> rendered(timeline.events.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, std::max<std::size_t>(1, timeline.events.size()));

    if (threads <= 1 || timeline.events.size() < 2) {
        for (std::size_t i = 0; i < timeline.events.size(); ++i)
            rendered[i] = detail::render_event(timeline.events[i], schema, master_seed, i, rate);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto worker = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= timeline.events.size()) return;
                try {
                    rendered[i] =
                        detail::render_event(timeline.events[i], schema, master_seed, i, rate);
                } catch (...) {
                    const std::lock_guard lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    for (std::size_t i = 0; i < timeline.events.size(); ++i) {
        const SonicEvent& e = timeline.events[i];
        const std::size_t start = static_cast<std::size_t>(std::llround(e.onset * rate));
        for (std::size_t j = 0; j < rendered[i].size(); ++j) {
            const std::size_t at = start + j;
            if (at >= buffer.samples.size()) break;
            buffer.samples[at] += e.gain * rendered[i][j];
        }
    }

    double peak = 0.0;
    for (double s : buffer.samples) peak = std::max(peak, std::abs(s));
    if (peak > peak_ceiling) {
        const double scale = peak_ceiling / peak;
        for (double& s : buffer.samples) s *= scale;
    }
    return buffer;
}

} // namespace bibsonic
