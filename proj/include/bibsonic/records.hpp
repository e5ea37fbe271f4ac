#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "bibsonic/csv.hpp"
#include "bibsonic/errors.hpp"

namespace bibsonic {

/// Records with no explicit month sort after every dated record of the same year.
constexpr int kMonthFallback = 12;

/// One publication's metadata. `mncs` may be precomputed; otherwise
/// `citations` and `categories` must be present so it can be derived.
struct PublicationRecord {
    std::string id;
    int year = 0;
    std::optional<int> month;
    std::optional<double> mncs;
    std::optional<long long> citations;
    std::vector<std::string> categories;
    bool oa = false;
    std::optional<std::string> title;

    bool operator==(const PublicationRecord&) const = default;
};

enum class RecordFormat { Csv, Json };

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

inline long long parse_int_field(std::string_view text, const std::string& where) {
    const std::string_view t = trim(text);
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size())
        throw ValidationError(where + ": expected integer, got '" + std::string(text) + "'");
    return value;
}

inline double parse_double_field(std::string_view text, const std::string& where) {
    const std::string_view t = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size())
        throw ValidationError(where + ": expected number, got '" + std::string(text) + "'");
    return value;
}

/// "1"/"true" -> true, ""/"0"/"false" -> false (blank cell means closed access).
inline bool parse_oa_field(std::string_view text, const std::string& where) {
    std::string t(trim(text));
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
    if (t.empty() || t == "0" || t == "false") return false;
    if (t == "1" || t == "true") return true;
    throw ValidationError(where + ": field 'oa': expected 1/0/true/false or blank, got '" +
                          std::string(text) + "'");
}

inline std::vector<std::string> split_categories(std::string_view cell) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= cell.size()) {
        const std::size_t sep = cell.find(';', start);
        const std::string_view tok =
            trim(cell.substr(start, sep == std::string_view::npos ? sep : sep - start));
        if (!tok.empty()) out.emplace_back(tok);
        if (sep == std::string_view::npos) break;
        start = sep + 1;
    }
    return out;
}

inline void check_record(const PublicationRecord& r, const std::string& where) {
    if (r.id.empty())
        throw ValidationError(where + ": missing required field 'id'");
    if (r.month && (*r.month < 1 || *r.month > 12))
        throw ValidationError(where + ": field 'month': " + std::to_string(*r.month) +
                              " is outside 1-12");
    if (r.mncs && *r.mncs < 0.0)
        throw RangeError(where + ": field 'mncs': negative value");
    if (r.citations && *r.citations < 0)
        throw RangeError(where + ": field 'citations': negative value");
    if (!r.mncs && !(r.citations && !r.categories.empty()))
        throw ValidationError(where + ": record '" + r.id +
                              "' needs 'mncs' or both 'citations' and 'categories'");
}

inline std::vector<PublicationRecord> parse_records_csv(std::string_view raw) {
    const CsvTable table = parse_csv(raw);
    if (table.header.empty())
        throw ParseError("line 1: empty input, expected a header row");

    std::unordered_map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < table.header.size(); ++i)
        col.emplace(std::string(trim(table.header[i])), i);
    for (const char* required : {"id", "year", "oa"})
        if (!col.contains(required))
            throw ValidationError("missing required column '" + std::string(required) + "'");

    auto cell = [&](const std::vector<std::string>& row, const char* name) -> std::string_view {
        const auto it = col.find(name);
        if (it == col.end() || it->second >= row.size()) return {};
        return row[it->second];
    };

    std::vector<PublicationRecord> records;
    records.reserve(table.rows.size());
    std::unordered_set<std::string> seen_ids;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const std::string where = "line " + std::to_string(table.line_of_row[i]);
        if (row.size() > table.header.size())
            throw ParseError(where + ": row has " + std::to_string(row.size()) +
                             " fields, header has " + std::to_string(table.header.size()));

        PublicationRecord r;
        r.id = std::string(trim(cell(row, "id")));
        if (std::string_view y = cell(row, "year"); !trim(y).empty())
            r.year = static_cast<int>(parse_int_field(y, where + ": field 'year'"));
        else
            throw ValidationError(where + ": missing required field 'year'");
        if (std::string_view m = cell(row, "month"); !trim(m).empty())
            r.month = static_cast<int>(parse_int_field(m, where + ": field 'month'"));
        if (std::string_view v = cell(row, "mncs"); !trim(v).empty())
            r.mncs = parse_double_field(v, where + ": field 'mncs'");
        if (std::string_view c = cell(row, "citations"); !trim(c).empty())
            r.citations = parse_int_field(c, where + ": field 'citations'");
        r.categories = split_categories(cell(row, "categories"));
        r.oa = parse_oa_field(cell(row, "oa"), where);
        if (std::string_view t = cell(row, "title"); !t.empty())
            r.title = std::string(t);

        check_record(r, where);
        if (!seen_ids.insert(records.emplace_back(std::move(r)).id).second)
            throw ValidationError(where + ": duplicate record id '" + records.back().id + "'");
    }
    return records;
}

inline std::vector<PublicationRecord> parse_records_json(std::string_view raw) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(raw);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!doc.is_array())
        throw ParseError("top-level JSON value must be an array of record objects");

    std::vector<PublicationRecord> records;
    records.reserve(doc.size());
    std::unordered_set<std::string> seen_ids;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& obj = doc[i];
        const std::string where = "record " + std::to_string(i);
        if (!obj.is_object())
            throw ParseError(where + ": expected an object");
        for (const char* required : {"id", "year", "oa"})
            if (!obj.contains(required))
                throw ValidationError(where + ": missing required field '" +
                                      std::string(required) + "'");

        PublicationRecord r;
        try {
            r.id = obj.at("id").get<std::string>();
            r.year = obj.at("year").get<int>();
            if (obj.contains("month") && !obj.at("month").is_null())
                r.month = obj.at("month").get<int>();
            if (obj.contains("mncs") && !obj.at("mncs").is_null())
                r.mncs = obj.at("mncs").get<double>();
            if (obj.contains("citations") && !obj.at("citations").is_null())
                r.citations = obj.at("citations").get<long long>();
            if (obj.contains("categories") && !obj.at("categories").is_null())
                r.categories = obj.at("categories").get<std::vector<std::string>>();
            const auto& oa = obj.at("oa");
            if (oa.is_null())
                r.oa = false;
            else if (oa.is_boolean())
                r.oa = oa.get<bool>();
            else if (oa.is_number_integer())
                r.oa = parse_oa_field(std::to_string(oa.get<long long>()), where);
            else if (oa.is_string())
                r.oa = parse_oa_field(oa.get<std::string>(), where);
            else
                throw ValidationError(where + ": field 'oa': expected boolean, 0/1, or string");
            if (obj.contains("title") && !obj.at("title").is_null())
                r.title = obj.at("title").get<std::string>();
        } catch (const nlohmann::json::type_error& e) {
            throw ValidationError(where + ": " + e.what());
        }

        check_record(r, where);
        if (!seen_ids.insert(records.emplace_back(std::move(r)).id).second)
            throw ValidationError(where + ": duplicate record id '" + records.back().id + "'");
    }
    return records;
}

} // namespace detail

/// Parse UTF-8 CSV or JSON publication metadata. Column/key names are fixed:
/// id, year, month, mncs, citations, categories, oa, title. Unknown fields
/// are ignored; id, year, and oa are required.
inline std::vector<PublicationRecord> parse_records(std::string_view raw, RecordFormat format) {
    return format == RecordFormat::Csv ? detail::parse_records_csv(raw)
                                       : detail::parse_records_json(raw);
}

/// Stable chronological sort by (year, month); records without a month
/// sort as month 12, after dated records of the same year.
inline std::vector<PublicationRecord> sort_chronological(std::vector<PublicationRecord> records) {
    std::stable_sort(records.begin(), records.end(),
                     [](const PublicationRecord& a, const PublicationRecord& b) {
                         const int ma = a.month.value_or(kMonthFallback);
                         const int mb = b.month.value_or(kMonthFallback);
                         return a.year != b.year ? a.year < b.year : ma < mb;
                     });
    return records;
}

} // namespace bibsonic
