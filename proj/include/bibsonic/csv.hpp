#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "bibsonic/errors.hpp"

namespace bibsonic {

/// Parsed CSV: first row is the header, remaining rows are data.
/// `line_of_row[i]` is the 1-based line on which data row i starts.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_of_row;
};

/// Comma-delimited, optional double-quote quoting with "" escapes,
/// LF or CRLF line ends. Quoted fields may span lines.
inline CsvTable parse_csv(std::string_view text) {
    CsvTable table;
    std::vector<std::string> row;
    std::string field;
    std::size_t line = 1;
    std::size_t row_start_line = 1;
    bool in_quotes = false;
    bool row_has_content = false;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
    };
    auto end_row = [&] {
        end_field();
        if (table.header.empty()) {
            table.header = std::move(row);
        } else {
            table.rows.push_back(std::move(row));
            table.line_of_row.push_back(row_start_line);
        }
        row.clear();
        row_has_content = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        switch (c) {
        case '"':
            if (!field.empty())
                throw ParseError("line " + std::to_string(line) + ": unexpected quote inside unquoted field");
            in_quotes = true;
            row_has_content = true;
            break;
        case ',':
            end_field();
            row_has_content = true;
            break;
        case '\r':
            break;
        case '\n':
            if (row_has_content || !field.empty() || !row.empty()) end_row();
            ++line;
            row_start_line = line;
            break;
        default:
            field += c;
            row_has_content = true;
            break;
        }
    }
    if (in_quotes)
        throw ParseError("line " + std::to_string(row_start_line) + ": unterminated quoted field");
    if (row_has_content || !field.empty() || !row.empty()) end_row();
    return table;
}

/// Quote a field iff it contains a delimiter, quote, or newline.
inline std::string csv_escape(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace bibsonic
