// SPDX-License-Identifier: Apache-2.0
//
// cpsync: cyclic-prefix symbol timing estimation for OFDM
// Copyright (C) 2026 The cpsync Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef CPSYNC_CSV_HPP
#define CPSYNC_CSV_HPP

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cpsync {

/// Shortest decimal that parses back to the same double; "inf", "-inf", "nan"
/// for non-finite values.
std::string format_double(double v);

/// RFC 4180 rows plus '#'-prefixed comment lines. Lines end in "\n".
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void comment(std::string_view text);
    void row(const std::vector<std::string>& fields);
    void row(std::initializer_list<std::string> fields) { row(std::vector<std::string>(fields)); }

private:
    std::ostream& os_;
};

/// Quotes a field if it holds a comma, quote, CR or LF.
std::string csv_escape(std::string_view field);

} // namespace cpsync

#endif
