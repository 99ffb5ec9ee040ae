#pragma once

// Experiment orchestration shared by the command-line tool, the acceptance
// suite and the Python module.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sshlab/model.hpp"

namespace sshlab {

inline constexpr std::string_view kVersion = "0.1.0";

enum class Experiment { Invariant, MeanNuCurve, PhaseDiagram, EdgeModes, GapScan, Born };
enum class OutputFormat { CSV, JSON };

std::string_view to_string(Experiment e);
Experiment experiment_from_string(std::string_view name);

struct RunConfig {
  Experiment experiment = Experiment::MeanNuCurve;
  ChainParams params;
  std::vector<double> gamma_grid;
  std::vector<double> w_grid;      // phase-diagram only
  std::vector<double> delta_grid;  // born only
  double alpha = 1e-6;             // born regulator
  std::size_t realizations = 1;
  std::uint64_t master_seed = 1;
  std::string output_path;
  OutputFormat output_format = OutputFormat::CSV;
  unsigned threads = 0;  // never affects the numbers

  /// Throws std::invalid_argument on empty or non-increasing grids, R < 1,
  /// alpha <= 0 or an invalid chain.
  void validate() const;
};

RunConfig default_config(Experiment e);

/// "a:b:n" (n evenly spaced points, both ends included), a comma list, or a
/// single number.
std::vector<double> parse_grid(std::string_view text);

/// Sets one typed key; throws std::invalid_argument on unknown keys or
/// malformed values. Keys: experiment N u w bc gamma w_grid delta alpha
/// realizations seed format out threads.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// Reads settings from a flat "key = value" file (# starts a comment), or
/// from the header of a CSV/JSON result or its .meta.json sidecar.
void load_config_file(RunConfig& cfg, const std::filesystem::path& path);

/// Canonical settings that determine the data, in a fixed order; grids are
/// written as explicit lists with 17 significant digits so they parse back
/// to the same doubles.
std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& cfg);

std::string format_number(double x);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

Table run_invariant(const RunConfig& cfg);
Table run_mean_nu_curve(const RunConfig& cfg);
Table run_phase_diagram(const RunConfig& cfg);
Table run_edge_modes(const RunConfig& cfg);
Table run_gap_scan(const RunConfig& cfg);
Table run_born(const RunConfig& cfg);
Table run_experiment(const RunConfig& cfg);

/// The result file exactly as written (config header plus data).
std::string render(const RunConfig& cfg, const Table& table);

/// Writes cfg.output_path and "<output_path>.meta.json" (config, version,
/// wall time, threads). Throws std::runtime_error on I/O failure.
void write_result(const RunConfig& cfg, const Table& table, double wall_seconds);

}  // namespace sshlab
