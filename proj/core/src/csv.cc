// Copyright 2026 The sqlcx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sqlcx/csv.h"

#include <stdexcept>

namespace sqlcx {

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) { add_row(header); }

void CsvWriter::add_row(const std::vector<std::string>& row) {
    if (row.size() != width_)
        throw std::invalid_argument("csv row has " + std::to_string(row.size()) + " fields, expected " +
                                    std::to_string(width_));
    for (size_t i = 0; i < row.size(); ++i) {
        if (i) out_ += ',';
        out_ += csv_escape(row[i]);
    }
    out_ += '\n';
}

int CsvTable::column(std::string_view name) const {
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

std::vector<std::map<std::string, std::string>> CsvTable::records() const {
    std::vector<std::map<std::string, std::string>> out;
    for (const auto& row : rows) {
        std::map<std::string, std::string> rec;
        for (size_t i = 0; i < header.size(); ++i) rec[header[i]] = row[i];
        out.push_back(std::move(rec));
    }
    return out;
}

CsvTable parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false, field_started = false;
    size_t line = 1;
    auto end_row = [&] {
        row.push_back(std::move(field));
        field.clear();
        if (!(row.size() == 1 && row[0].empty())) rows.push_back(std::move(row));
        row.clear();
        field_started = false;
    };
    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                if (field_started && !field.empty())
                    throw std::runtime_error("csv line " + std::to_string(line) + ": stray quote");
                quoted = true;
                field_started = true;
                break;
            case ',':
                row.push_back(std::move(field));
                field.clear();
                field_started = true;
                break;
            case '\r':
                break;
            case '\n':
                end_row();
                ++line;
                break;
            default:
                field += c;
                field_started = true;
        }
    }
    if (quoted) throw std::runtime_error("csv: unterminated quoted field");
    if (field_started || !field.empty() || !row.empty()) end_row();
    CsvTable table;
    if (rows.empty()) return table;
    table.header = std::move(rows.front());
    for (size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != table.header.size())
            throw std::runtime_error("csv row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                                     " fields, header has " + std::to_string(table.header.size()));
        table.rows.push_back(std::move(rows[i]));
    }
    return table;
}

}  // namespace sqlcx
