#pragma once

// Tabular result with a reproducibility header, rendered as CSV, JSON or line records.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace sl2lab::cli {

using ojson = nlohmann::ordered_json;

struct Report {
  std::string command;
  std::vector<std::pair<std::string, ojson>> params;
  std::vector<std::string> columns;
  std::vector<std::vector<ojson>> rows;
  std::vector<std::pair<std::string, ojson>> summary;
  std::vector<std::string> records;  // free-form line records (play transcripts)

  void param(const std::string& k, ojson v) { params.emplace_back(k, std::move(v)); }
  void result(const std::string& k, ojson v) { summary.emplace_back(k, std::move(v)); }
};

enum class Format { csv, json, text };
Format parse_format(const std::string& s);
const char* extension(Format f);

std::string render(const Report& r, Format f);
std::string cell(const ojson& v);

}  // namespace sl2lab::cli
