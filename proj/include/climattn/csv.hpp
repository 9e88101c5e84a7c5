#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace climattn::csv {

struct Record {
    std::size_t line = 0;  // 1-based line on which the record starts
    std::vector<std::string> fields;
};

/// RFC-4180 reader. Accepts LF or CRLF line ends and quoted fields with
/// embedded separators, quotes ("") and newlines. Lines starting with '#'
/// before the first record are skipped as metadata.
inline std::vector<Record> parse(std::string_view text) {
    std::vector<Record> out;
    std::size_t line = 1;
    std::size_t i = 0;
    const std::size_t n = text.size();

    while (i < n && text[i] == '#' && out.empty()) {
        while (i < n && text[i] != '\n') ++i;
        if (i < n) ++i;
        ++line;
    }

    while (i < n) {
        Record rec{line, {}};
        std::string field;
        bool record_done = false;
        while (!record_done) {
            field.clear();
            if (i < n && text[i] == '"') {
                const std::size_t open_line = line;
                ++i;
                for (;;) {
                    if (i >= n) throw ParseError("unterminated quoted field", open_line);
                    const char c = text[i];
                    if (c == '"') {
                        if (i + 1 < n && text[i + 1] == '"') {
                            field.push_back('"');
                            i += 2;
                            continue;
                        }
                        ++i;
                        break;
                    }
                    if (c == '\n') ++line;
                    field.push_back(c);
                    ++i;
                }
                if (i < n && text[i] != ',' && text[i] != '\n' && !(text[i] == '\r' && i + 1 < n && text[i + 1] == '\n') &&
                    !(text[i] == '\r' && i + 1 == n))
                    throw ParseError("unexpected character after closing quote", line);
            } else {
                while (i < n && text[i] != ',' && text[i] != '\n') {
                    if (text[i] == '"') throw ParseError("quote inside unquoted field", line);
                    if (text[i] == '\r' && (i + 1 == n || text[i + 1] == '\n')) {
                        ++i;
                        continue;
                    }
                    field.push_back(text[i]);
                    ++i;
                }
            }
            if (i < n && text[i] == '\r') ++i;
            rec.fields.push_back(field);
            if (i < n && text[i] == ',') {
                ++i;
            } else {
                if (i < n) ++i;  // '\n'
                ++line;
                record_done = true;
            }
        }
        if (!(rec.fields.size() == 1 && rec.fields[0].empty())) out.push_back(std::move(rec));
    }
    return out;
}

inline std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

inline std::string join(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.push_back(',');
        out += escape(fields[i]);
    }
    out.push_back('\n');
    return out;
}

}  // namespace climattn::csv
