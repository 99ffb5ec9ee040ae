#pragma once

// Disorder ensembles. Realization k of a run is drawn from the stream
// (master_seed, k), evaluated on any worker, and reduced in index order, so
// every estimate is bit-identical for any thread count.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sshlab/distribution.hpp"
#include "sshlab/model.hpp"

namespace sshlab {

struct EnsembleOptions {
  std::size_t realizations = 100;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0: one per hardware thread
};

enum class Quantity { MeanNu, MeanGap, WavefunctionProfile, EtaMoments };

struct EnsembleEstimate {
  Quantity quantity = Quantity::MeanNu;
  std::vector<double> value;
  std::vector<double> standard_error;  // sample sd / sqrt(R) per component
  std::size_t n_realizations = 0;      // realizations entering the average
  std::size_t n_excluded = 0;          // critical realizations left out
  std::size_t n_resampled = 0;         // zero couplings redrawn
  std::uint64_t master_seed = 0;

  double scalar() const { return value.at(0); }
  double scalar_error() const { return standard_error.at(0); }
};

/// N couplings uniform on [u - sqrt(3) gamma, u + sqrt(3) gamma] from the
/// stream (master_seed, index); gamma == 0 gives u exactly.
Realization sample_realization(const FlatDistribution& dist, std::size_t N,
                               std::uint64_t master_seed, std::uint64_t index);

/// Mean of the closed-form invariant. Critical realizations are excluded and
/// counted. Requires R >= 2.
EnsembleEstimate estimate_mean_nu(const ChainParams& params, const FlatDistribution& dist,
                                  const EnsembleOptions& opt);

/// eta = sum ln|1 + du_i/u|. value = {mean, variance, skewness}, errors =
/// {sd/sqrt(R), se of the variance, sqrt(6/R)}. Exactly-zero draws are
/// redrawn from the same stream and counted. Requires R >= 100.
EnsembleEstimate estimate_eta_moments(const ChainParams& params, const FlatDistribution& dist,
                                      const EnsembleOptions& opt);

/// Per-dimer |psi_n|^2 = sum over the +-E_min pair of |a_n|^2 + |b_n|^2,
/// so each realization sums to 2; averaged over R. Requires Open bc.
EnsembleEstimate estimate_wavefunction_profile(const ChainParams& params,
                                               const FlatDistribution& dist,
                                               const EnsembleOptions& opt);

/// Mean of E_G = 2 min|E_j|.
EnsembleEstimate estimate_mean_gap(const ChainParams& params, const FlatDistribution& dist,
                                   const EnsembleOptions& opt);

/// Profile of a single chain, same convention as the ensemble average.
std::vector<double> wavefunction_profile(const ChainParams& params, const Realization& r);

/// Share of the profile within `edge` dimers of either end.
double edge_weight_fraction(std::span<const double> profile, std::size_t edge = 5);

}  // namespace sshlab
