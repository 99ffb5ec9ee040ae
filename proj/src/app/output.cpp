#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "sshlab/app.hpp"
#include "sshlab/parallel.hpp"

namespace sshlab {
namespace {

nlohmann::ordered_json config_json(const RunConfig& cfg) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const auto& [key, value] : config_entries(cfg)) out[key] = value;
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

std::string render(const RunConfig& cfg, const Table& table) {
  if (cfg.output_format == OutputFormat::JSON) {
    nlohmann::ordered_json doc;
    doc["sshlab"] = std::string(kVersion);
    doc["config"] = config_json(cfg);
    doc["columns"] = table.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      auto r = nlohmann::ordered_json::array();
      for (double x : row) {
        if (std::isfinite(x)) r.push_back(x);
        else r.push_back(nullptr);
      }
      rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(1) + "\n";
  }
  std::string out = "# sshlab " + std::string(kVersion) + "\n";
  for (const auto& [key, value] : config_entries(cfg)) out += "# " + key + " = " + value + "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_result(const RunConfig& cfg, const Table& table, double wall_seconds) {
  if (cfg.output_path.empty()) throw std::invalid_argument("no output path");
  const std::filesystem::path path(cfg.output_path);
  write_file(path, render(cfg, table));

  nlohmann::ordered_json meta;
  meta["sshlab"] = std::string(kVersion);
  meta["config"] = config_json(cfg);
  meta["data_file"] = path.filename().string();
  meta["format"] = cfg.output_format == OutputFormat::CSV ? "csv" : "json";
  meta["rows"] = table.rows.size();
  meta["wall_time_seconds"] = wall_seconds;
  meta["threads"] = resolve_threads(cfg.threads);
  write_file(path.string() + ".meta.json", meta.dump(2) + "\n");
}

}  // namespace sshlab
