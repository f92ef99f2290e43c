// Copyright 2026 The hypertail Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/output.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace hypertail::cli {
namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render_json(const OutputRecord& record) {
  nlohmann::ordered_json doc;
  doc["command"] = record.command;
  const auto section = [](const Fields& fields) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (const auto& [key, value] : fields) obj[key] = value;
    return obj;
  };
  doc["inputs"] = section(record.inputs);
  doc["results"] = section(record.results);
  doc["labels"] = section(record.labels);
  doc["warnings"] = record.warnings;
  return doc.dump(2) + "\n";
}

std::string render_csv(const OutputRecord& record) {
  std::vector<std::string> header{"command"};
  std::vector<std::string> row{record.command};
  const auto add = [&](std::string_view prefix, const Fields& fields) {
    for (const auto& [key, value] : fields) {
      header.push_back(std::string(prefix) + key);
      row.push_back(value);
    }
  };
  add("input.", record.inputs);
  add("result.", record.results);
  add("label.", record.labels);
  header.emplace_back("warnings");
  std::string joined;
  for (const auto& w : record.warnings) {
    if (!joined.empty()) joined += "; ";
    joined += w;
  }
  row.push_back(joined);

  std::ostringstream out;
  for (std::size_t j = 0; j < header.size(); ++j) {
    out << (j ? "," : "") << csv_escape(header[j]);
  }
  out << "\n";
  for (std::size_t j = 0; j < row.size(); ++j) {
    out << (j ? "," : "") << csv_escape(row[j]);
  }
  out << "\n";
  return out.str();
}

std::string render_text(const OutputRecord& record) {
  std::ostringstream out;
  out << record.command << "\n";
  std::size_t width = 0;
  for (const Fields* fields : {&record.inputs, &record.results, &record.labels}) {
    for (const auto& field : *fields) width = std::max(width, field.first.size());
  }
  const auto block = [&](std::string_view title, const Fields& fields) {
    if (fields.empty()) return;
    out << "  " << title << ":\n";
    for (const auto& [key, value] : fields) {
      out << "    " << key << std::string(width - key.size(), ' ') << "  "
          << value << "\n";
    }
  };
  block("inputs", record.inputs);
  block("results", record.results);
  block("labels", record.labels);
  for (const auto& w : record.warnings) out << "  warning: " << w << "\n";
  return out.str();
}

}  // namespace

std::optional<Format> parse_format(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "text") return Format::Text;
  if (lower == "json") return Format::Json;
  if (lower == "csv") return Format::Csv;
  return std::nullopt;
}

std::string format_number(double value, int digits) {
  digits = std::clamp(digits, 1, 17);
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[64];
  const double magnitude = std::abs(value);
  if (magnitude < 1e-5 || magnitude >= 1e15) {
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, value);
    return buf;
  }
  // Round to the requested significant digits first; the exponent may move
  // (9.9999995 -> 10.0000).
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, value);
  const double rounded = std::strtod(buf, nullptr);
  const int exponent =
      static_cast<int>(std::floor(std::log10(std::abs(rounded))));
  const int decimals = std::max(0, digits - 1 - exponent);
  std::snprintf(buf, sizeof buf, "%.*f", decimals, rounded);
  return buf;
}

std::string render(const OutputRecord& record, Format format) {
  switch (format) {
    case Format::Json:
      return render_json(record);
    case Format::Csv:
      return render_csv(record);
    case Format::Text:
      break;
  }
  return render_text(record);
}

}  // namespace hypertail::cli
