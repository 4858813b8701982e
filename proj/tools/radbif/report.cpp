#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <unistd.h>

#include "json.hpp"

namespace radbif::cli {
namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  struct {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(const std::string& v) const { return csv_escape(v); }
  } visit;
  return std::visit(visit, c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
  struct {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(double v) const {
      if (std::isfinite(v)) return v;
      return format_real(v);  // JSON has no non-finite numbers
    }
    nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
  } visit;
  return std::visit(visit, c);
}

void csv_row(std::string& out, const std::string& prefix, const std::vector<std::string>& cells) {
  out += prefix;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0 || !prefix.empty()) out += ',';
    out += cells[i];
  }
  out += '\n';
}

std::vector<std::string> texts(const std::vector<Cell>& row) {
  std::vector<std::string> out;
  out.reserve(row.size());
  for (const auto& c : row) out.push_back(cell_text(c));
  return out;
}

nlohmann::ordered_json table_json(const Table& t) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json o = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < t.columns.size() && i < r.size(); ++i) o[t.columns[i]] = cell_json(r[i]);
    rows.push_back(std::move(o));
  }
  return {{"columns", t.columns}, {"rows", std::move(rows)}};
}

}  // namespace

void Document::set(const std::string& key, Cell value) {
  for (auto& [k, v] : meta) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  meta.emplace_back(key, std::move(value));
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const Document& doc) {
  std::string out = std::string("#schema=") + kSchema + "\n";
  out += "#command=" + doc.command + "\n";
  for (const auto& [k, v] : doc.meta) out += "#" + k + "=" + cell_text(v) + "\n";
  for (const auto& t : doc.tables) {
    const std::string prefix = "#@" + t.name;
    csv_row(out, prefix, t.columns);
    for (const auto& r : t.rows) csv_row(out, prefix, texts(r));
  }
  csv_row(out, "", doc.main.columns);
  for (const auto& r : doc.main.rows) csv_row(out, "", texts(r));
  return out;
}

std::string to_json(const Document& doc) {
  nlohmann::ordered_json j;
  j["schema"] = kSchema;
  j["command"] = doc.command;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : doc.meta) meta[k] = cell_json(v);
  j["meta"] = std::move(meta);
  const auto main = table_json(doc.main);
  j["columns"] = main["columns"];
  j["rows"] = main["rows"];
  nlohmann::ordered_json tables = nlohmann::ordered_json::object();
  for (const auto& t : doc.tables) tables[t.name] = table_json(t);
  j["tables"] = std::move(tables);
  return j.dump(2) + "\n";
}

std::string render(const Document& doc, Format format) {
  return format == Format::Csv ? to_csv(doc) : to_json(doc);
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  const fs::path tmp = dir / ("." + path.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) {
      f.close();
      fs::remove(tmp);
      throw std::runtime_error("write to " + tmp.string() + " failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot move output into " + path.string() + ": " + ec.message());
  }
}

}  // namespace radbif::cli
