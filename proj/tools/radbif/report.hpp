#pragma once

// Tabular documents and their CSV / JSON renderings.
//
// CSV layout:
//   #schema=v1
//   #command=<name>
//   #<key>=<value>            one line per metadata entry
//   #@<table>,<col>,...       header of an auxiliary table
//   #@<table>,<val>,...       its rows
//   <col>,<col>,...           main table header
//   <val>,<val>,...           main table rows
// Reals carry 17 significant digits; missing values are empty cells.

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace radbif::cli {

inline constexpr const char* kSchema = "v1";

enum class Format { Csv, Json };

using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Document {
  std::string command;
  std::vector<std::pair<std::string, Cell>> meta;
  Table main;
  std::vector<Table> tables;

  void set(const std::string& key, Cell value);
};

/// %.17g, with "nan", "inf", "-inf" for non-finite values.
std::string format_real(double v);

std::string to_csv(const Document& doc);
std::string to_json(const Document& doc);
std::string render(const Document& doc, Format format);

/// Write through a temporary file in the same directory and rename it into
/// place, so readers never observe a partial file.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace radbif::cli
