#include <cmath>
#include <limits>
#include <stdexcept>

#include "sshlab/analytic.hpp"
#include "sshlab/app.hpp"
#include "sshlab/born.hpp"
#include "sshlab/ensemble.hpp"
#include "sshlab/errors.hpp"
#include "sshlab/invariant.hpp"
#include "sshlab/parallel.hpp"
#include "sshlab/rng.hpp"
#include "sshlab/spectrum.hpp"

namespace sshlab {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

EnsembleOptions options(const RunConfig& cfg) {
  return EnsembleOptions{cfg.realizations, cfg.master_seed, cfg.threads};
}

FlatDistribution flat(const RunConfig& cfg, double gamma) { return FlatDistribution{gamma, cfg.params.u}; }

double nu_or_nan(const Realization& r, const ChainParams& params) {
  try {
    return winding_closed_form(r, params).nu;
  } catch (const CriticalRealization&) {
    return kNaN;
  }
}

// Monte Carlo <nu> on the same streams as the other estimators of a row;
// R == 1 falls back to the single realization.
double mc_mean_nu(const RunConfig& cfg, double gamma) {
  if (cfg.realizations >= 2) return estimate_mean_nu(cfg.params, flat(cfg, gamma), options(cfg)).scalar();
  return nu_or_nan(sample_realization(flat(cfg, gamma), cfg.params.N, cfg.master_seed, 0), cfg.params);
}

double analytic_or_nan(const RunConfig& cfg, double gamma) {
  try {
    return mean_nu_analytic(cfg.params.N, cfg.params.u, cfg.params.w, gamma);
  } catch (const DomainError&) {
    return kNaN;
  }
}

void expect(const RunConfig& cfg, Experiment e) {
  if (cfg.experiment != e)
    throw std::invalid_argument("config is for '" + std::string(to_string(cfg.experiment)) +
                                "', not '" + std::string(to_string(e)) + "'");
  cfg.validate();
}

}  // namespace

Table run_invariant(const RunConfig& cfg) {
  expect(cfg, Experiment::Invariant);
  Table t{{"gamma", "index", "log_xi", "nu_closed_form", "nu_winding", "phase_samples", "nu_zak"}, {}};
  const std::size_t R = cfg.realizations;
  t.rows.resize(cfg.gamma_grid.size() * R);
  parallel_for(t.rows.size(), cfg.threads, [&](std::size_t row) {
    const double gamma = cfg.gamma_grid[row / R];
    const std::size_t index = row % R;
    const auto r = sample_realization(flat(cfg, gamma), cfg.params.N, cfg.master_seed, index);
    const double lx = log_xi(r, cfg.params).log_xi;
    double winding = kNaN;
    double samples = kNaN;
    try {
      const auto res = winding_integral(r, cfg.params.w);
      winding = res.nu;
      samples = static_cast<double>(res.phase_samples);
    } catch (const CriticalRealization&) {
    } catch (const UnresolvedWinding&) {
    }
    double zak = kNaN;
    if (gamma == 0.0 && std::abs(cfg.params.u) != std::abs(cfg.params.w))
      zak = zak_phase_clean(cfg.params.u, cfg.params.w);
    t.rows[row] = {gamma, static_cast<double>(index), lx, nu_or_nan(r, cfg.params), winding, samples, zak};
  });
  return t;
}

Table run_mean_nu_curve(const RunConfig& cfg) {
  expect(cfg, Experiment::MeanNuCurve);
  if (cfg.realizations < 2) throw std::invalid_argument("mean-nu needs at least 2 realizations");
  Table t{{"gamma", "mc_mean_nu", "mc_stderr", "analytic_mean_nu", "n_excluded"}, {}};
  for (double gamma : cfg.gamma_grid) {
    const auto est = estimate_mean_nu(cfg.params, flat(cfg, gamma), options(cfg));
    t.rows.push_back({gamma, est.scalar(), est.scalar_error(), analytic_or_nan(cfg, gamma),
                      static_cast<double>(est.n_excluded)});
  }
  return t;
}

Table run_phase_diagram(const RunConfig& cfg) {
  expect(cfg, Experiment::PhaseDiagram);
  Table t{{"gamma", "w", "log_gap", "nu", "w0_analytic", "w_weak"}, {}};
  const double u = cfg.params.u;
  const std::size_t nw = cfg.w_grid.size();
  t.rows.resize(cfg.gamma_grid.size() * nw);
  parallel_for(t.rows.size(), cfg.threads, [&](std::size_t row) {
    const std::size_t gi = row / nw;
    const double gamma = cfg.gamma_grid[gi];
    ChainParams params = cfg.params;
    params.w = cfg.w_grid[row % nw];
    // One realization per gamma row, shared by every w in the row.
    const auto r = sample_realization(flat(cfg, gamma), params.N, stream_seed(cfg.master_seed, gi), 0);
    const double gap = eigenvalues(build_chain(params, r)).gap;
    const double weak = 1.0 - gamma * gamma / (2.0 * u * u);
    t.rows[row] = {gamma,
                   params.w,
                   std::log(gap / (2.0 * std::abs(u))),
                   nu_or_nan(r, params),
                   critical_w(u, gamma),
                   weak >= 0.0 ? u * std::sqrt(weak) : kNaN};
  });
  return t;
}

Table run_edge_modes(const RunConfig& cfg) {
  expect(cfg, Experiment::EdgeModes);
  Table t{{"gamma", "n", "psi2", "psi2_stderr", "mean_nu", "edge_weight"}, {}};
  for (double gamma : cfg.gamma_grid) {
    const auto est = estimate_wavefunction_profile(cfg.params, flat(cfg, gamma), options(cfg));
    const double nu = mc_mean_nu(cfg, gamma);
    const double edge = edge_weight_fraction(est.value, 5);
    for (std::size_t n = 0; n < est.value.size(); ++n)
      t.rows.push_back({gamma, static_cast<double>(n + 1), est.value[n], est.standard_error[n], nu, edge});
  }
  return t;
}

Table run_gap_scan(const RunConfig& cfg) {
  expect(cfg, Experiment::GapScan);
  Table t{{"gamma", "mean_gap", "gap_stderr", "mc_mean_nu"}, {}};
  for (double gamma : cfg.gamma_grid) {
    const auto est = estimate_mean_gap(cfg.params, flat(cfg, gamma), options(cfg));
    t.rows.push_back({gamma, est.scalar(), est.scalar_error(), mc_mean_nu(cfg, gamma)});
  }
  return t;
}

Table run_born(const RunConfig& cfg) {
  expect(cfg, Experiment::Born);
  Table t{{"delta", "gamma", "alpha", "f_re", "f_im", "g_re", "g_im", "f_np_re", "f_np_im", "g_np_re",
           "g_np_im", "rho0"},
          {}};
  const double u = cfg.params.u;
  std::vector<BornFunctions> quad(cfg.delta_grid.size());
  parallel_for(quad.size(), cfg.threads, [&](std::size_t i) {
    quad[i] = born_functions(BornParams{u, u - cfg.delta_grid[i], 0.0, cfg.alpha, 0.0}, BornMethod::Quadrature);
  });
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const double delta = cfg.delta_grid[i];
    const Complex fn = f_narrow_peak(delta, u, cfg.alpha);
    const Complex gn = g_narrow_peak(delta, u, cfg.alpha);
    for (double gamma : cfg.gamma_grid) {
      const double rho = delta > 0.0 ? midgap_dos(delta, u, gamma, cfg.alpha) : kNaN;
      t.rows.push_back({delta, gamma, cfg.alpha, quad[i].f.real(), quad[i].f.imag(), quad[i].g.real(),
                        quad[i].g.imag(), fn.real(), fn.imag(), gn.real(), gn.imag(), rho});
    }
  }
  return t;
}

Table run_experiment(const RunConfig& cfg) {
  switch (cfg.experiment) {
    case Experiment::Invariant: return run_invariant(cfg);
    case Experiment::MeanNuCurve: return run_mean_nu_curve(cfg);
    case Experiment::PhaseDiagram: return run_phase_diagram(cfg);
    case Experiment::EdgeModes: return run_edge_modes(cfg);
    case Experiment::GapScan: return run_gap_scan(cfg);
    case Experiment::Born: return run_born(cfg);
  }
  throw std::invalid_argument("unknown experiment");
}

}  // namespace sshlab
