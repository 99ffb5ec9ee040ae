#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "sshlab/app.hpp"

namespace sshlab {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw std::invalid_argument("invalid value for '" + std::string(key) + "': '" +
                              std::string(value) + "'");
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(x))
    bad_value(key, text);
  return x;
}

template <class Int>
Int parse_integer(std::string_view key, std::string_view text) {
  text = trim(text);
  Int x = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || ptr != text.data() + text.size()) bad_value(key, text);
  return x;
}

std::string join(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += format_number(xs[i]);
  }
  return out;
}

void require_grid(const std::vector<double>& grid, const char* name) {
  if (grid.empty()) throw std::invalid_argument(std::string(name) + " grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument(std::string(name) + " grid must be strictly increasing");
}

std::pair<std::string, std::string> split_setting(std::string_view line) {
  const auto eq = line.find('=');
  if (eq == std::string_view::npos)
    throw std::invalid_argument("expected key = value, got '" + std::string(line) + "'");
  return {std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1)))};
}

void load_json(RunConfig& cfg, const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  if (!doc.contains("config") || !doc["config"].is_object())
    throw std::invalid_argument("JSON file has no \"config\" object");
  for (const auto& [key, value] : doc["config"].items()) {
    if (!value.is_string()) throw std::invalid_argument("config value for '" + key + "' must be a string");
    apply_setting(cfg, key, value.get<std::string>());
  }
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::Invariant: return "invariant";
    case Experiment::MeanNuCurve: return "mean-nu";
    case Experiment::PhaseDiagram: return "phase-diagram";
    case Experiment::EdgeModes: return "edge-modes";
    case Experiment::GapScan: return "gap-scan";
    case Experiment::Born: return "born";
  }
  throw std::invalid_argument("unknown experiment");
}

Experiment experiment_from_string(std::string_view name) {
  for (auto e : {Experiment::Invariant, Experiment::MeanNuCurve, Experiment::PhaseDiagram,
                 Experiment::EdgeModes, Experiment::GapScan, Experiment::Born})
    if (to_string(e) == name) return e;
  throw std::invalid_argument("unknown experiment '" + std::string(name) + "'");
}

std::vector<double> parse_grid(std::string_view text) {
  text = trim(text);
  std::vector<double> out;
  if (text.empty()) throw std::invalid_argument("empty grid");
  if (text.find(':') != std::string_view::npos) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos)
      throw std::invalid_argument("range grid must be start:stop:count");
    const double a = parse_double("grid", text.substr(0, c1));
    const double b = parse_double("grid", text.substr(c1 + 1, c2 - c1 - 1));
    const auto n = parse_integer<std::size_t>("grid", text.substr(c2 + 1));
    if (n == 0) throw std::invalid_argument("range grid needs at least one point");
    if (n == 1) return {a};
    for (std::size_t i = 0; i < n; ++i)
      out.push_back(i + 1 == n ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? text.size() - start : comma - start);
    out.push_back(parse_double("grid", piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void RunConfig::validate() const {
  if (realizations < 1) throw std::invalid_argument("realizations must be >= 1");
  if (experiment == Experiment::Born) {
    require_grid(delta_grid, "delta");
    require_grid(gamma_grid, "gamma");
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    if (params.u == 0.0) throw std::invalid_argument("u must be nonzero");
    return;
  }
  params.validate();
  require_grid(gamma_grid, "gamma");
  for (double g : gamma_grid)
    if (g < 0.0) throw std::invalid_argument("gamma must be >= 0");
  if (experiment == Experiment::PhaseDiagram) require_grid(w_grid, "w_grid");
  if (experiment == Experiment::EdgeModes && params.bc != Boundary::Open)
    throw std::invalid_argument("edge-modes needs open boundaries");
}

RunConfig default_config(Experiment e) {
  RunConfig cfg;
  cfg.experiment = e;
  cfg.output_path = std::string(to_string(e)) + ".csv";
  switch (e) {
    case Experiment::Invariant:
      cfg.params = {100, 1.0, 0.95, Boundary::Periodic};
      cfg.gamma_grid = parse_grid("0:1.5:7");
      cfg.realizations = 20;
      break;
    case Experiment::MeanNuCurve:
      cfg.params = {100, 1.0, 0.95, Boundary::Open};
      cfg.gamma_grid = parse_grid("0:1.5:30");
      cfg.realizations = 15000;
      break;
    case Experiment::PhaseDiagram:
      cfg.params = {300, 1.0, 1.0, Boundary::Periodic};
      cfg.gamma_grid = parse_grid("0:1.5:31");
      cfg.w_grid = parse_grid("0.5:1.1:25");
      cfg.realizations = 1;
      break;
    case Experiment::EdgeModes:
      cfg.params = {100, 1.0, 0.95, Boundary::Open};
      cfg.gamma_grid = parse_grid("0:2:21");
      cfg.realizations = 100;
      break;
    case Experiment::GapScan:
      cfg.params = {300, 1.0, 0.8, Boundary::Periodic};
      cfg.gamma_grid = parse_grid("0:1.2:25");
      cfg.realizations = 100;
      break;
    case Experiment::Born:
      cfg.params = {2, 1.0, 1.0, Boundary::Periodic};
      cfg.delta_grid = parse_grid("0.001,0.01,0.1");
      cfg.gamma_grid = parse_grid("0:0.5:11");
      cfg.alpha = 1e-6;
      break;
  }
  return cfg;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "experiment") {
    if (experiment_from_string(value) != cfg.experiment)
      throw std::invalid_argument("settings are for experiment '" + std::string(value) +
                                  "', not '" + std::string(to_string(cfg.experiment)) + "'");
  } else if (key == "N") {
    cfg.params.N = parse_integer<std::size_t>(key, value);
  } else if (key == "u") {
    cfg.params.u = parse_double(key, value);
  } else if (key == "w") {
    cfg.params.w = parse_double(key, value);
  } else if (key == "bc") {
    if (value == "open") cfg.params.bc = Boundary::Open;
    else if (value == "periodic") cfg.params.bc = Boundary::Periodic;
    else bad_value(key, value);
  } else if (key == "gamma") {
    cfg.gamma_grid = parse_grid(value);
  } else if (key == "w_grid") {
    cfg.w_grid = parse_grid(value);
  } else if (key == "delta") {
    cfg.delta_grid = parse_grid(value);
  } else if (key == "alpha") {
    cfg.alpha = parse_double(key, value);
  } else if (key == "realizations") {
    cfg.realizations = parse_integer<std::size_t>(key, value);
  } else if (key == "seed") {
    cfg.master_seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "format") {
    if (value == "csv") cfg.output_format = OutputFormat::CSV;
    else if (value == "json") cfg.output_format = OutputFormat::JSON;
    else bad_value(key, value);
  } else if (key == "out") {
    cfg.output_path = std::string(value);
  } else if (key == "threads") {
    cfg.threads = parse_integer<unsigned>(key, value);
  } else {
    throw std::invalid_argument("unknown setting '" + std::string(key) + "'");
  }
}

void load_config_file(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    load_json(cfg, text);
    return;
  }

  std::istringstream lines(text);
  std::string line;
  // A CSV result carries its settings as "# key = value" header lines.
  const bool result_file = text.rfind("# sshlab", 0) == 0;
  while (std::getline(lines, line)) {
    std::string_view view = trim(line);
    if (result_file) {
      if (view.empty() || view.front() != '#') break;
      view = trim(view.substr(1));
      if (view.find('=') == std::string_view::npos) continue;
    } else {
      if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
      view = trim(view);
      if (view.empty()) continue;
    }
    const auto [key, value] = split_setting(view);
    apply_setting(cfg, key, value);
  }
}

std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("experiment", std::string(to_string(cfg.experiment)));
  if (cfg.experiment == Experiment::Born) {
    out.emplace_back("u", format_number(cfg.params.u));
    out.emplace_back("delta", join(cfg.delta_grid));
    out.emplace_back("gamma", join(cfg.gamma_grid));
    out.emplace_back("alpha", format_number(cfg.alpha));
    return out;
  }
  out.emplace_back("N", std::to_string(cfg.params.N));
  out.emplace_back("u", format_number(cfg.params.u));
  if (cfg.experiment != Experiment::PhaseDiagram) out.emplace_back("w", format_number(cfg.params.w));
  out.emplace_back("bc", cfg.params.bc == Boundary::Open ? "open" : "periodic");
  out.emplace_back("gamma", join(cfg.gamma_grid));
  if (cfg.experiment == Experiment::PhaseDiagram)
    out.emplace_back("w_grid", join(cfg.w_grid));
  else
    out.emplace_back("realizations", std::to_string(cfg.realizations));
  out.emplace_back("seed", std::to_string(cfg.master_seed));
  return out;
}

}  // namespace sshlab
