#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace kit {

using Json = nlohmann::ordered_json;

enum class Format { CSV, JSON };

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<Json> rows;

  void add(Json row) { rows.push_back(std::move(row)); }
};

struct Result {
  std::vector<Table> tables;
  std::string summary;
  int status = 0;
};

/// 17 significant digits; nan and inf spelled out.
std::string format_double(double v);

/// Compact JSON with every float printed by format_double (non-finite as null).
void write_json(std::ostream& os, const Json& j);

void emit(std::ostream& os, Format format, const Json& descriptor, const Result& result);

}  // namespace kit
