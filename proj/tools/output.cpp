#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace kit {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_json(std::ostream& os, const Json& j) {
  switch (j.type()) {
    case Json::value_t::object: {
      os << '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ',';
        first = false;
        os << Json(k).dump() << ':';
        write_json(os, v);
      }
      os << '}';
      break;
    }
    case Json::value_t::array: {
      os << '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ',';
        write_json(os, j[i]);
      }
      os << ']';
      break;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isfinite(v)) os << format_double(v);
      else os << "null";
      break;
    }
    default:
      os << j.dump();
  }
}

namespace {

std::string csv_cell(const Json& v) {
  switch (v.type()) {
    case Json::value_t::null: return "";
    case Json::value_t::number_float: return format_double(v.get<double>());
    case Json::value_t::string: {
      const auto s = v.get<std::string>();
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char c : s) {
        if (c == '"') q += '"';
        q += c;
      }
      return q + '"';
    }
    default: return v.dump();
  }
}

}  // namespace

void emit(std::ostream& os, Format format, const Json& descriptor, const Result& result) {
  if (format == Format::JSON) {
    Json doc = Json::object();
    doc["descriptor"] = descriptor;
    Json tables = Json::object();
    for (const auto& t : result.tables) {
      Json rows = Json::array();
      for (const auto& r : t.rows) rows.push_back(r);
      tables[t.name] = {{"columns", t.columns}, {"rows", rows}};
    }
    doc["tables"] = tables;
    doc["summary"] = result.summary;
    write_json(os, doc);
    os << '\n';
    return;
  }
  os << "# descriptor ";
  write_json(os, descriptor);
  os << '\n';
  for (const auto& t : result.tables) {
    if (result.tables.size() > 1) os << "# table " << t.name << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& r : t.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
      os << '\n';
    }
  }
}

}  // namespace kit
