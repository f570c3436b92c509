/*
Copyright 2026 The irsho Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace irsho {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  bool operator==(const Table& o) const { return header == o.header && rows == o.rows; }
};

// Shortest round-trip decimal form; "nan"/"inf" for non-finite values.
std::string format_double(double v);

void emit_csv(const Table& t, std::ostream& os);
void emit_csv_file(const Table& t, const std::string& path);
Table parse_csv(const std::string& text);

}  // namespace irsho
