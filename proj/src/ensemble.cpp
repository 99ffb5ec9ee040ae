#include "sshlab/ensemble.hpp"

#include <cmath>
#include <string>
#include <stdexcept>

#include "sshlab/errors.hpp"
#include "sshlab/invariant.hpp"
#include "sshlab/parallel.hpp"
#include "sshlab/rng.hpp"
#include "sshlab/spectrum.hpp"

namespace sshlab {
namespace {

std::vector<double> draw(const FlatDistribution& dist, std::size_t N, std::mt19937_64& gen) {
  std::vector<double> out(N);
  if (dist.gamma == 0.0) {
    out.assign(N, dist.u);
    return out;
  }
  const double lo = dist.lower();
  const double span = dist.upper() - lo;
  for (double& x : out) x = lo + span * uniform01(gen);
  return out;
}

void check(const ChainParams& params, const FlatDistribution& dist, const EnsembleOptions& opt,
           std::size_t min_realizations) {
  params.validate();
  dist.validate();
  if (opt.realizations < min_realizations)
    throw std::invalid_argument("ensemble: need at least " + std::to_string(min_realizations) +
                                " realizations");
}

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double m3 = 0.0;        // central, biased
  double m4 = 0.0;
};

// Two passes in index order.
Moments moments(std::span<const double> x) {
  Moments m;
  const double n = static_cast<double>(x.size());
  if (x.empty()) return m;
  double sum = 0.0;
  for (double v : x) sum += v;
  m.mean = sum / n;
  double s2 = 0.0, s3 = 0.0, s4 = 0.0;
  for (double v : x) {
    const double d = v - m.mean;
    const double d2 = d * d;
    s2 += d2;
    s3 += d2 * d;
    s4 += d2 * d2;
  }
  m.variance = x.size() > 1 ? s2 / (n - 1.0) : 0.0;
  m.m3 = s3 / n;
  m.m4 = s4 / n;
  return m;
}

double standard_error(const Moments& m, std::size_t n) {
  return std::sqrt(m.variance / static_cast<double>(n));
}

}  // namespace

Realization sample_realization(const FlatDistribution& dist, std::size_t N,
                               std::uint64_t master_seed, std::uint64_t index) {
  dist.validate();
  auto gen = make_stream(master_seed, index);
  return Realization{draw(dist, N, gen), master_seed, index};
}

EnsembleEstimate estimate_mean_nu(const ChainParams& params, const FlatDistribution& dist,
                                  const EnsembleOptions& opt) {
  check(params, dist, opt, 2);
  std::vector<int> nu(opt.realizations, -1);
  parallel_for(opt.realizations, opt.threads, [&](std::size_t i) {
    const auto r = sample_realization(dist, params.N, opt.seed, i);
    try {
      nu[i] = winding_closed_form(r, params).nu;
    } catch (const CriticalRealization&) {
      nu[i] = -1;
    }
  });
  std::vector<double> kept;
  kept.reserve(nu.size());
  for (int v : nu)
    if (v >= 0) kept.push_back(v);
  EnsembleEstimate est;
  est.quantity = Quantity::MeanNu;
  est.master_seed = opt.seed;
  est.n_realizations = kept.size();
  est.n_excluded = nu.size() - kept.size();
  if (kept.size() < 2) throw Error("estimate_mean_nu: fewer than 2 non-critical realizations");
  const auto m = moments(kept);
  est.value = {m.mean};
  est.standard_error = {standard_error(m, kept.size())};
  return est;
}

EnsembleEstimate estimate_eta_moments(const ChainParams& params, const FlatDistribution& dist,
                                      const EnsembleOptions& opt) {
  check(params, dist, opt, 100);
  if (dist.u == 0.0) throw DomainError("estimate_eta_moments: u must be nonzero");
  std::vector<double> eta(opt.realizations, 0.0);
  std::vector<std::size_t> redrawn(opt.realizations, 0);
  parallel_for(opt.realizations, opt.threads, [&](std::size_t i) {
    auto gen = make_stream(opt.seed, i);
    auto u = draw(dist, params.N, gen);
    const double lo = dist.lower();
    const double span = dist.upper() - lo;
    double sum = 0.0;
    for (double& x : u) {
      while (x == 0.0) {
        x = lo + span * uniform01(gen);
        ++redrawn[i];
      }
      sum += std::log(std::abs(x / dist.u));
    }
    eta[i] = sum;
  });
  EnsembleEstimate est;
  est.quantity = Quantity::EtaMoments;
  est.master_seed = opt.seed;
  est.n_realizations = eta.size();
  for (auto c : redrawn) est.n_resampled += c;
  const auto m = moments(eta);
  const double n = static_cast<double>(eta.size());
  const double biased_var = m.variance * (n - 1.0) / n;
  const double skew = biased_var > 0.0 ? m.m3 / std::pow(biased_var, 1.5) : 0.0;
  const double var_se = std::sqrt(std::max(0.0, m.m4 - biased_var * biased_var) / n);
  est.value = {m.mean, m.variance, skew};
  est.standard_error = {standard_error(m, eta.size()), var_se, std::sqrt(6.0 / n)};
  return est;
}

std::vector<double> wavefunction_profile(const ChainParams& params, const Realization& r) {
  if (params.bc != Boundary::Open)
    throw std::invalid_argument("wavefunction profile needs open boundaries");
  const auto m = build_chain(params, r);
  const auto spectrum = eigenvalues(m);
  const auto pair = eigenpair_near_zero(m, spectrum);
  std::vector<double> profile(params.N, 0.0);
  for (const auto* v : {&pair.plus, &pair.minus})
    for (std::size_t n = 0; n < params.N; ++n) {
      const double a = (*v)[2 * n];
      const double b = (*v)[2 * n + 1];
      profile[n] += a * a + b * b;
    }
  return profile;
}

EnsembleEstimate estimate_wavefunction_profile(const ChainParams& params,
                                               const FlatDistribution& dist,
                                               const EnsembleOptions& opt) {
  check(params, dist, opt, 1);
  if (params.bc != Boundary::Open)
    throw std::invalid_argument("wavefunction profile needs open boundaries");
  std::vector<std::vector<double>> profiles(opt.realizations);
  parallel_for(opt.realizations, opt.threads, [&](std::size_t i) {
    profiles[i] = wavefunction_profile(params, sample_realization(dist, params.N, opt.seed, i));
  });
  EnsembleEstimate est;
  est.quantity = Quantity::WavefunctionProfile;
  est.master_seed = opt.seed;
  est.n_realizations = profiles.size();
  est.value.resize(params.N);
  est.standard_error.resize(params.N);
  std::vector<double> column(profiles.size());
  for (std::size_t n = 0; n < params.N; ++n) {
    for (std::size_t i = 0; i < profiles.size(); ++i) column[i] = profiles[i][n];
    const auto m = moments(column);
    est.value[n] = m.mean;
    est.standard_error[n] = standard_error(m, column.size());
  }
  return est;
}

EnsembleEstimate estimate_mean_gap(const ChainParams& params, const FlatDistribution& dist,
                                   const EnsembleOptions& opt) {
  check(params, dist, opt, 1);
  std::vector<double> gaps(opt.realizations);
  parallel_for(opt.realizations, opt.threads, [&](std::size_t i) {
    const auto r = sample_realization(dist, params.N, opt.seed, i);
    gaps[i] = eigenvalues(build_chain(params, r)).gap;
  });
  EnsembleEstimate est;
  est.quantity = Quantity::MeanGap;
  est.master_seed = opt.seed;
  est.n_realizations = gaps.size();
  const auto m = moments(gaps);
  est.value = {m.mean};
  est.standard_error = {standard_error(m, gaps.size())};
  return est;
}

double edge_weight_fraction(std::span<const double> profile, std::size_t edge) {
  double total = 0.0;
  double at_edges = 0.0;
  for (std::size_t n = 0; n < profile.size(); ++n) {
    total += profile[n];
    if (n < edge || n + edge >= profile.size()) at_edges += profile[n];
  }
  if (total == 0.0) throw DomainError("edge_weight_fraction: empty profile");
  return at_edges / total;
}

}  // namespace sshlab
