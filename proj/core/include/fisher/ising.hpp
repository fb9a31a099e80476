#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "fisher/grid.hpp"

namespace fisher {

// Units: J = k_B = 1 throughout.

struct IsingConfig {
  std::size_t L = 16;
  double T = 2.269;
  double h_ext = 0.0;
  std::size_t warmup_sweeps = 2000;
  std::size_t thin_sweeps = 5;
  std::size_t samples = 5000;
  std::uint64_t seed = 1;

  void validate() const;
};

/// L x L periodic spin lattice with a cached total energy
/// H = -sum_<ij> s_i s_j - h sum_i s_i, each site bonded to its right and down neighbor.
/// On L = 2 the wrap-around makes those bonds coincide, and they are counted twice.
class IsingState {
 public:
  /// Cold start: every spin +1.
  IsingState(std::size_t L, std::uint64_t seed, double h_ext = 0.0);

  std::size_t side() const { return l_; }
  std::size_t sites() const { return spins_.size(); }
  double field() const { return h_; }
  double energy() const { return energy_; }
  int spin(std::size_t site) const { return spins_[site]; }

  void set_spin(std::size_t site, int value);
  /// Sum of the four periodic neighbors of a site.
  int neighbor_sum(std::size_t site) const;
  /// Energy change if `site` were flipped.
  double flip_delta(std::size_t site) const;
  void flip(std::size_t site);
  /// Negates every spin; at zero field the energy is unchanged.
  void flip_all();

  /// Full O(L^2) evaluation of the Hamiltonian.
  double recompute_energy() const;

  std::mt19937_64& rng() { return rng_; }

 private:
  std::size_t l_;
  double h_;
  std::vector<int> spins_;
  double energy_ = 0.0;
  std::mt19937_64 rng_;
};

/// min(1, exp(-dE / T)).
double acceptance_probability(double delta_energy, double T);

/// One proposal at a uniformly random site, accepted by the Metropolis rule. Returns true if flipped.
bool metropolis_step(IsingState& state, double T);

/// L^2 proposals.
void metropolis_sweep(IsingState& state, double T);

/// Per-spin energies E / L^2: warmup_sweeps sweeps, then one record every thin_sweeps sweeps.
SampleSet ising_sample_energies(const IsingConfig& config);

struct ExactIsingAverages {
  double mean_energy = 0.0;
  double mean_energy_sq = 0.0;
  double heat_capacity = 0.0;
};

/// Boltzmann averages by enumerating all 2^(L^2) configurations (L <= 4).
ExactIsingAverages ising_exact_small(std::size_t L, double T);

/// C_h = (<E^2> - <E>^2) / (L^2 T^2) from total energies.
double heat_capacity(std::span<const double> total_energies, double T, std::size_t L);

/// Same, from per-spin energies e = E / L^2.
double heat_capacity_per_spin(const SampleSet& per_spin_energies, double T, std::size_t L);

/// Onsager: 2 / ln(1 + sqrt 2).
double critical_temperature();

}  // namespace fisher
