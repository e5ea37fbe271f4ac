#pragma once

#include <algorithm>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bibsonic/csv.hpp"
#include "bibsonic/errors.hpp"
#include "bibsonic/records.hpp"

namespace bibsonic {

/// Expected citations of an average paper in one subject category and year.
struct CitationBaseline {
    std::string category;
    int year = 0;
    double expected = 0.0;

    bool operator==(const CitationBaseline&) const = default;
};

/// Baseline table CSV with header `category,year,expected`.
inline std::vector<CitationBaseline> parse_baselines(std::string_view raw) {
    const CsvTable table = parse_csv(raw);
    for (const char* required : {"category", "year", "expected"})
        if (std::find(table.header.begin(), table.header.end(), required) == table.header.end())
            throw ValidationError("baselines: missing required column '" + std::string(required) + "'");

    std::size_t cat_col = 0, year_col = 0, exp_col = 0;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (table.header[i] == "category") cat_col = i;
        if (table.header[i] == "year") year_col = i;
        if (table.header[i] == "expected") exp_col = i;
    }

    std::vector<CitationBaseline> baselines;
    std::set<std::pair<std::string, int>> seen;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const std::string where = "baselines line " + std::to_string(table.line_of_row[i]);
        if (row.size() < table.header.size())
            throw ParseError(where + ": expected " + std::to_string(table.header.size()) + " fields");
        CitationBaseline b;
        b.category = row[cat_col];
        b.year = static_cast<int>(detail::parse_int_field(row[year_col], where + ": field 'year'"));
        b.expected = detail::parse_double_field(row[exp_col], where + ": field 'expected'");
        if (b.expected <= 0.0)
            throw RangeError(where + ": field 'expected' must be positive");
        if (!seen.emplace(b.category, b.year).second)
            throw ValidationError(where + ": duplicate baseline for (" + b.category + ", " +
                                  std::to_string(b.year) + ")");
        baselines.push_back(std::move(b));
    }
    return baselines;
}

/// Citations divided by the arithmetic mean of the expected scores, so a
/// result of 1.0 sits exactly at the category-year average.
inline double compute_mncs(long long citations, std::span<const double> baselines) {
    if (citations < 0)
        throw RangeError("compute_mncs: negative citation count");
    if (baselines.empty())
        throw MissingBaselineError("compute_mncs: empty baseline list");
    double sum = 0.0;
    for (double b : baselines) {
        if (b <= 0.0)
            throw RangeError("compute_mncs: baseline values must be positive");
        sum += b;
    }
    return static_cast<double>(citations) / (sum / static_cast<double>(baselines.size()));
}

/// A precomputed score passes through untouched; otherwise the record's
/// categories are looked up in the table for its publication year and the
/// score is computed from the matches.
inline double resolve_mncs(const PublicationRecord& record,
                           std::span<const CitationBaseline> table) {
    if (record.mncs) return *record.mncs;
    if (!record.citations)
        throw ValidationError("record '" + record.id + "': no mncs and no citation count");

    std::vector<double> expected;
    for (const std::string& category : record.categories)
        for (const CitationBaseline& b : table)
            if (b.category == category && b.year == record.year)
                expected.push_back(b.expected);
    if (expected.empty())
        throw MissingBaselineError("record '" + record.id + "': no baseline for any of its " +
                                   std::to_string(record.categories.size()) +
                                   " categories in year " + std::to_string(record.year));
    return compute_mncs(*record.citations, expected);
}

} // namespace bibsonic
