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

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace sqlcx {

/// Comma-separated, LF line endings, header mandatory. Fields with commas,
/// quotes, or line breaks are double-quoted.
class CsvWriter {
   public:
    explicit CsvWriter(std::vector<std::string> header);
    /// Throws std::invalid_argument on a width mismatch.
    void add_row(const std::vector<std::string>& row);
    const std::string& str() const { return out_; }

   private:
    size_t width_;
    std::string out_;
};

std::string csv_escape(std::string_view field);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column index of `name`, or -1.
    int column(std::string_view name) const;
    /// Rows as header-keyed maps.
    std::vector<std::map<std::string, std::string>> records() const;
};

/// Parses CSV text (LF or CRLF). Throws std::runtime_error on unterminated quotes
/// or rows whose width differs from the header.
CsvTable parse_csv(std::string_view text);

}  // namespace sqlcx
