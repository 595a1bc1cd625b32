#include "report.hpp"

#include <sstream>

#include "sl2lab/errors.hpp"

#ifndef SL2LAB_VERSION
#define SL2LAB_VERSION "0"
#endif

namespace sl2lab::cli {

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  if (s == "text") return Format::text;
  throw InvalidParameter("unknown format '" + s + "' (csv|json|text)");
}

const char* extension(Format f) {
  switch (f) {
    case Format::csv:
      return "csv";
    case Format::json:
      return "json";
    case Format::text:
      break;
  }
  return "txt";
}

std::string cell(const ojson& v) {
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  }
  return v.dump();
}

namespace {

void header(std::ostream& o, const Report& r) {
  o << "# sl2lab " << SL2LAB_VERSION << " " << r.command << "\n";
  for (const auto& [k, v] : r.params) o << "# " << k << "=" << cell(v) << "\n";
}

void footer(std::ostream& o, const Report& r) {
  for (const auto& [k, v] : r.summary) o << "# result " << k << "=" << cell(v) << "\n";
}

}  // namespace

std::string render(const Report& r, Format f) {
  std::ostringstream o;
  if (f == Format::json) {
    ojson j;
    j["tool"] = "sl2lab";
    j["version"] = SL2LAB_VERSION;
    j["command"] = r.command;
    j["params"] = ojson::object();
    for (const auto& [k, v] : r.params) j["params"][k] = v;
    j["columns"] = r.columns;
    j["rows"] = ojson::array();
    for (const auto& row : r.rows) j["rows"].push_back(row);
    if (!r.records.empty()) j["records"] = r.records;
    j["summary"] = ojson::object();
    for (const auto& [k, v] : r.summary) j["summary"][k] = v;
    o << j.dump(1) << "\n";
    return o.str();
  }
  header(o, r);
  if (f == Format::text && !r.records.empty()) {
    for (const auto& line : r.records) o << line << "\n";
  } else {
    for (size_t i = 0; i < r.columns.size(); ++i) o << (i ? "," : "") << r.columns[i];
    o << "\n";
    for (const auto& row : r.rows) {
      for (size_t i = 0; i < row.size(); ++i) o << (i ? "," : "") << cell(row[i]);
      o << "\n";
    }
  }
  footer(o, r);
  return o.str();
}

}  // namespace sl2lab::cli
