#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sshlab/analytic.hpp"
#include "sshlab/app.hpp"
#include "sshlab/born.hpp"
#include "sshlab/ensemble.hpp"
#include "sshlab/invariant.hpp"
#include "sshlab/special.hpp"
#include "sshlab/spectrum.hpp"

namespace {

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> realizations;
  std::string out;
  std::string format;
  std::optional<unsigned> threads;
  std::vector<std::string> settings;
};

void add_run_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "settings file, or a previous result to rerun");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--realizations", o.realizations, "disorder realizations per grid point");
  cmd->add_option("--out", o.out, "output file");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", o.threads, "worker threads, 0 = one per core");
  cmd->add_option("--set", o.settings, "key=value setting, repeatable");
}

sshlab::RunConfig resolve(sshlab::Experiment e, const Overrides& o) {
  auto cfg = sshlab::default_config(e);
  if (!o.config.empty()) sshlab::load_config_file(cfg, o.config);
  for (const auto& s : o.settings) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + s + "'");
    sshlab::apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
  }
  if (o.seed) cfg.master_seed = *o.seed;
  if (o.realizations) cfg.realizations = *o.realizations;
  if (!o.format.empty()) sshlab::apply_setting(cfg, "format", o.format);
  if (!o.out.empty()) cfg.output_path = o.out;
  else if (cfg.output_format == sshlab::OutputFormat::JSON)
    cfg.output_path = std::string(sshlab::to_string(e)) + ".json";
  if (o.threads) cfg.threads = *o.threads;
  cfg.validate();
  return cfg;
}

int run(sshlab::Experiment e, const Overrides& o) {
  sshlab::RunConfig cfg;
  try {
    cfg = resolve(e, o);
  } catch (const std::exception& ex) {
    std::cerr << "sshlab: invalid configuration: " << ex.what() << '\n';
    return 2;
  }
  try {
    const auto start = std::chrono::steady_clock::now();
    const auto table = sshlab::run_experiment(cfg);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    sshlab::write_result(cfg, table, wall);
    std::cout << "wrote " << table.rows.size() << " rows to " << cfg.output_path << " (" << wall << " s)\n";
    return 0;
  } catch (const std::exception& ex) {
    std::cerr << "sshlab: " << ex.what() << '\n';
    return 1;
  }
}

// Fast end-to-end checks of the numerical kernels.
int selftest() {
  using namespace sshlab;
  int failures = 0;
  auto report = [&](const char* name, const std::function<bool()>& check) {
    bool ok = false;
    try {
      ok = check();
    } catch (const std::exception& ex) {
      std::cout << "  (" << ex.what() << ")\n";
    }
    std::cout << (ok ? "PASS " : "FAIL ") << name << '\n';
    if (!ok) ++failures;
  };

  report("clean invariant, three methods", [] {
    for (double w : {0.5, 0.9, 1.1, 1.5}) {
      const ChainParams p{20, 1.0, w, Boundary::Periodic};
      const auto r = clean_realization(p);
      const int expected = w > 1.0 ? 1 : 0;
      if (winding_integral(r, w).nu != expected || winding_closed_form(r, p).nu != expected ||
          zak_phase_clean(1.0, w) != expected)
        return false;
    }
    return true;
  });
  report("erf(1)", [] { return std::abs(sshlab::erf(1.0) - 0.84270079294971487) < 1e-15; });
  report("flat z1 closed form vs quadrature", [] {
    const FlatDistribution d{0.3, 1.0};
    return std::abs(z1_flat_closed_form(0.3, 1.0).value - z1_quadrature(d)) < 1e-8;
  });
  report("eigensolver backends agree", [] {
    const ChainParams p{40, 1.0, 0.9, Boundary::Open};
    const auto m = build_chain(p, sample_realization(FlatDistribution{0.4, 1.0}, 40, 7, 0));
    const auto a = eigenvalues_tridiagonal(m);
    const auto b = eigenvalues_dense(m);
    for (std::size_t i = 0; i < a.eigenvalues.size(); ++i)
      if (std::abs(a.eigenvalues[i] - b.eigenvalues[i]) > 1e-10) return false;
    return true;
  });
  report("clean periodic gap", [] {
    const ChainParams p{30, 1.0, 0.8, Boundary::Periodic};
    return std::abs(eigenvalues(build_chain(p, clean_realization(p))).gap - 0.4) < 1e-12;
  });
  report("midgap DOS at band touching", [] {
    const double delta = 0.01;
    const double g = std::sqrt(2.0 * delta);
    return std::abs(midgap_dos(delta, 1.0, g, 1e-6) - 0.5 / std::numbers::pi) < 1e-10;
  });
  std::cout << (failures == 0 ? "selftest passed\n" : "selftest failed\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Disordered dimer-chain topology toolkit"};
  app.set_version_flag("--version", std::string(sshlab::kVersion));
  app.require_subcommand(1);

  Overrides overrides;
  std::vector<std::pair<CLI::App*, sshlab::Experiment>> commands;
  for (auto [name, e, help] : {
           std::tuple{"invariant", sshlab::Experiment::Invariant, "invariant of sampled chains by two routes"},
           std::tuple{"mean-nu", sshlab::Experiment::MeanNuCurve, "disorder-averaged invariant vs gamma"},
           std::tuple{"phase-diagram", sshlab::Experiment::PhaseDiagram, "gap and invariant over (gamma, w)"},
           std::tuple{"edge-modes", sshlab::Experiment::EdgeModes, "averaged midgap wavefunction profile"},
           std::tuple{"gap-scan", sshlab::Experiment::GapScan, "mean spectral gap vs gamma"},
           std::tuple{"born", sshlab::Experiment::Born, "Born self-energy and midgap density of states"}}) {
    auto* cmd = app.add_subcommand(name, help);
    add_run_options(cmd, overrides);
    commands.emplace_back(cmd, e);
  }
  auto* self = app.add_subcommand("selftest", "quick checks of the numerical kernels");

  CLI11_PARSE(app, argc, argv);

  if (self->parsed()) return selftest();
  for (const auto& [cmd, e] : commands)
    if (cmd->parsed()) return run(e, overrides);
  return 2;
}
