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
#include "harness/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "core/error.hpp"

namespace irsho {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {
void put_field(std::ostream& os, const std::string& f) {
  if (f.find_first_of(",\"\n\r") == std::string::npos) {
    os << f;
    return;
  }
  os << '"';
  for (char c : f) {
    if (c == '"') os << '"';
    os << c;
  }
  os << '"';
}

void put_row(std::ostream& os, const std::vector<std::string>& r) {
  for (size_t i = 0; i < r.size(); ++i) {
    if (i) os << ',';
    put_field(os, r[i]);
  }
  os << '\n';
}
}  // namespace

void emit_csv(const Table& t, std::ostream& os) {
  put_row(os, t.header);
  for (const auto& r : t.rows) put_row(os, r);
}

void emit_csv_file(const Table& t, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::Io, "cannot open '" + path + "' for writing");
  emit_csv(t, f);
  if (!f) throw Error(Errc::Io, "write to '" + path + "' failed");
}

Table parse_csv(const std::string& text) {
  Table t;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  auto end_row = [&]() {
    row.push_back(field);
    field.clear();
    if (t.header.empty() && t.rows.empty() && !any) t.header = row;
    else t.rows.push_back(row);
    any = true;
    row.clear();
  };
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(field);
      field.clear();
    } else if (c == '\n') {
      end_row();
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) throw Error(Errc::Io, "csv: unterminated quoted field");
  if (!field.empty() || !row.empty()) end_row();
  return t;
}

}  // namespace irsho
