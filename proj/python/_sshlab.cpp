#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>

#include "sshlab/analytic.hpp"
#include "sshlab/app.hpp"
#include "sshlab/born.hpp"
#include "sshlab/ensemble.hpp"
#include "sshlab/errors.hpp"
#include "sshlab/invariant.hpp"
#include "sshlab/model.hpp"
#include "sshlab/spectrum.hpp"

namespace py = pybind11;
using namespace sshlab;

namespace {

Boundary boundary_from(const std::string& bc) {
  if (bc == "open") return Boundary::Open;
  if (bc == "periodic") return Boundary::Periodic;
  throw std::invalid_argument("bc must be 'open' or 'periodic', got '" + bc + "'");
}

Realization realization_from(std::vector<double> couplings) {
  Realization r;
  r.couplings = std::move(couplings);
  return r;
}

ChainParams chain_for(const std::vector<double>& couplings, double u, double w, const std::string& bc) {
  ChainParams p{couplings.size(), u, w, boundary_from(bc)};
  p.validate();
  return p;
}

py::dict estimate_dict(const EnsembleEstimate& e) {
  py::dict d;
  d["value"] = e.value;
  d["standard_error"] = e.standard_error;
  d["n_realizations"] = e.n_realizations;
  d["n_excluded"] = e.n_excluded;
  d["n_resampled"] = e.n_resampled;
  d["master_seed"] = e.master_seed;
  return d;
}

}  // namespace

PYBIND11_MODULE(_sshlab, m) {
  m.doc() = "Disordered SSH chain: invariants, ensembles, spectra and Born approximation";
  m.attr("__version__") = std::string(kVersion);

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<CriticalRealization>(m, "CriticalRealization", error.ptr());
  py::register_exception<UnresolvedWinding>(m, "UnresolvedWinding", error.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", error.ptr());
  py::register_exception<DomainError>(m, "DomainError", error.ptr());

  m.def("sample_couplings",
        [](std::size_t N, double u, double gamma, std::uint64_t seed, std::uint64_t index) {
          return sample_realization(FlatDistribution{gamma, u}, N, seed, index).couplings;
        },
        py::arg("N"), py::arg("u"), py::arg("gamma"), py::arg("seed"), py::arg("index") = 0);

  m.def("chain_matrix",
        [](const std::vector<double>& couplings, double w, const std::string& bc) {
          const auto p = chain_for(couplings, 1.0, w, bc);
          const auto dense = build_chain(p, realization_from(couplings)).to_dense();
          const std::size_t n = dense.dimension();
          std::vector<std::vector<double>> rows(n, std::vector<double>(n));
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) rows[i][j] = dense(i, j);
          return rows;
        },
        py::arg("couplings"), py::arg("w"), py::arg("bc") = "open");

  m.def("winding_integral",
        [](std::vector<double> couplings, double w, const std::string& route) {
          if (route != "closed_form" && route != "lu") throw std::invalid_argument("route must be 'closed_form' or 'lu'");
          const auto res = winding_integral(realization_from(std::move(couplings)), w, kMinPhaseSamples,
                                            route == "lu" ? DeterminantRoute::LU : DeterminantRoute::ClosedForm);
          return py::make_tuple(res.nu, res.phase_samples);
        },
        py::arg("couplings"), py::arg("w"), py::arg("route") = "closed_form",
        "Returns (nu, phase_samples).");

  m.def("winding_closed_form",
        [](const std::vector<double>& couplings, double u, double w) {
          return winding_closed_form(realization_from(couplings), chain_for(couplings, u, w, "periodic")).nu;
        },
        py::arg("couplings"), py::arg("u"), py::arg("w"));

  m.def("log_xi",
        [](const std::vector<double>& couplings, double u, double w) {
          return log_xi(realization_from(couplings), chain_for(couplings, u, w, "periodic")).log_xi;
        },
        py::arg("couplings"), py::arg("u"), py::arg("w"));

  m.def("zak_phase_clean", [](double u, double w) { return zak_phase_clean(u, w); }, py::arg("u"), py::arg("w"));

  m.def("eigenvalues",
        [](const std::vector<double>& couplings, double w, const std::string& bc) {
          const auto s = eigenvalues(build_chain(chain_for(couplings, 1.0, w, bc), realization_from(couplings)));
          return py::make_tuple(s.eigenvalues, s.gap);
        },
        py::arg("couplings"), py::arg("w"), py::arg("bc") = "open", "Returns (ascending eigenvalues, gap).");

  m.def("z1", [](double gamma, double u) { return cumulants(FlatDistribution{gamma, u}).z1; }, py::arg("gamma"),
        py::arg("u") = 1.0);
  m.def("z2", [](double gamma, double u) { return cumulants(FlatDistribution{gamma, u}).z2; }, py::arg("gamma"),
        py::arg("u") = 1.0);
  m.def("mean_nu_analytic", &mean_nu_analytic, py::arg("N"), py::arg("u"), py::arg("w"), py::arg("gamma"));
  m.def("critical_w", &critical_w, py::arg("u"), py::arg("gamma"));
  m.def("critical_gamma_weak", &critical_gamma_weak, py::arg("u"), py::arg("w"));
  m.def("critical_gamma", &critical_gamma, py::arg("u"), py::arg("w"), py::arg("lo"), py::arg("hi"),
        py::arg("tol") = 1e-12);

  auto ensemble = [&m](const char* name, auto estimator) {
    m.def(name,
          [estimator](std::size_t N, double u, double w, double gamma, const std::string& bc, std::size_t realizations,
                      std::uint64_t seed, unsigned threads) {
            const ChainParams p{N, u, w, boundary_from(bc)};
            EnsembleEstimate e;
            {
              py::gil_scoped_release release;
              e = estimator(p, FlatDistribution{gamma, u}, EnsembleOptions{realizations, seed, threads});
            }
            return estimate_dict(e);
          },
          py::arg("N"), py::arg("u"), py::arg("w"), py::arg("gamma"), py::arg("bc") = "periodic",
          py::arg("realizations") = 100, py::arg("seed") = 0, py::arg("threads") = 0);
  };
  ensemble("estimate_mean_nu", &estimate_mean_nu);
  ensemble("estimate_mean_gap", &estimate_mean_gap);
  ensemble("estimate_wavefunction_profile", &estimate_wavefunction_profile);

  m.def("born_functions",
        [](double u, double w, double gamma, double alpha, double omega, const std::string& method) {
          if (method != "quadrature" && method != "narrow_peak")
            throw std::invalid_argument("method must be 'quadrature' or 'narrow_peak'");
          const BornParams p{u, w, gamma, alpha, omega};
          const auto fg = born_functions(p, method == "quadrature" ? BornMethod::Quadrature : BornMethod::NarrowPeak);
          return py::make_tuple(fg.f, fg.g);
        },
        py::arg("u"), py::arg("w"), py::arg("gamma") = 0.0, py::arg("alpha") = kDefaultAlphaOverU,
        py::arg("omega") = 0.0, py::arg("method") = "quadrature", "Returns (f, g).");
  m.def("midgap_dos", &midgap_dos, py::arg("delta"), py::arg("u"), py::arg("gamma"), py::arg("alpha"));
  m.def("band_touch_gamma", &band_touch_gamma, py::arg("u"), py::arg("w"));

  m.def("run_experiment",
        [](const std::string& name, const std::map<std::string, std::string>& settings) {
          auto cfg = default_config(experiment_from_string(name));
          for (const auto& [k, v] : settings) apply_setting(cfg, k, v);
          cfg.validate();
          Table t;
          {
            py::gil_scoped_release release;
            t = run_experiment(cfg);
          }
          return py::make_tuple(t.columns, t.rows);
        },
        py::arg("experiment"), py::arg("settings") = std::map<std::string, std::string>{},
        "Run a named experiment with key=value overrides; returns (columns, rows).");
}
