#pragma once

#include <charconv>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bibsonic/csv.hpp"
#include "bibsonic/mapping.hpp"

namespace bibsonic {

/// One publication's mapping outcome, mirroring the shape of the input:
/// identifier, score, open-access flag, impact class, and tone label.
struct MappingReportRow {
    std::string id;
    double mncs = 0.0;
    bool oa = false;
    int impact_class = 0;
    std::string pitch; // pitch class only, e.g. "G#"

    bool operator==(const MappingReportRow&) const = default;
};

inline std::vector<MappingReportRow> report_rows(std::span<const MappedPublication> mapped) {
    std::vector<MappingReportRow> rows;
    rows.reserve(mapped.size());
    for (const MappedPublication& m : mapped)
        rows.push_back({m.id, m.mncs, m.oa, m.impact_class, to_string(m.pitch.pitch_class)});
    return rows;
}

namespace detail {

/// shortest round-trip decimal form
inline std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

} // namespace detail

/// CSV with header `id,mncs,oa,class,pitch`, one row per publication in
/// timeline order.
inline std::vector<std::uint8_t> write_mapping_report(std::span<const MappingReportRow> rows) {
    std::string out = "id,mncs,oa,class,pitch\n";
    for (const MappingReportRow& row : rows) {
        out += csv_escape(row.id);
        out += ',';
        out += detail::format_double(row.mncs);
        out += ',';
        out += row.oa ? '1' : '0';
        out += ',';
        out += std::to_string(row.impact_class);
        out += ',';
        out += csv_escape(row.pitch);
        out += '\n';
    }
    return {out.begin(), out.end()};
}

} // namespace bibsonic
