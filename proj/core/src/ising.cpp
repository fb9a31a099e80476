#include "fisher/ising.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fisher {

void IsingConfig::validate() const {
  if (L < 2) throw std::invalid_argument("Ising lattice side must be >= 2");
  if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("Ising temperature must be > 0");
  if (!std::isfinite(h_ext)) throw std::invalid_argument("Ising field must be finite");
  if (samples == 0) throw std::invalid_argument("Ising run needs N >= 1 samples");
  if (thin_sweeps == 0) throw std::invalid_argument("Ising thinning must be >= 1 sweep");
}

IsingState::IsingState(std::size_t L, std::uint64_t seed, double h_ext)
    : l_(L), h_(h_ext), spins_(L * L, 1), rng_(seed) {
  if (L < 2) throw std::invalid_argument("Ising lattice side must be >= 2");
  energy_ = recompute_energy();
}

void IsingState::set_spin(std::size_t site, int value) {
  if (value != 1 && value != -1) throw std::invalid_argument("spins take values +1 or -1");
  if (spins_[site] != value) flip(site);
}

int IsingState::neighbor_sum(std::size_t site) const {
  const std::size_t r = site / l_;
  const std::size_t c = site % l_;
  const std::size_t up = ((r + l_ - 1) % l_) * l_ + c;
  const std::size_t down = ((r + 1) % l_) * l_ + c;
  const std::size_t left = r * l_ + (c + l_ - 1) % l_;
  const std::size_t right = r * l_ + (c + 1) % l_;
  return spins_[up] + spins_[down] + spins_[left] + spins_[right];
}

double IsingState::flip_delta(std::size_t site) const {
  return 2.0 * spins_[site] * (neighbor_sum(site) + h_);
}

void IsingState::flip(std::size_t site) {
  energy_ += flip_delta(site);
  spins_[site] = -spins_[site];
}

void IsingState::flip_all() {
  for (int& s : spins_) s = -s;
  energy_ = recompute_energy();
}

double IsingState::recompute_energy() const {
  double bonds = 0.0;
  double magnet = 0.0;
  for (std::size_t r = 0; r < l_; ++r) {
    for (std::size_t c = 0; c < l_; ++c) {
      const int s = spins_[r * l_ + c];
      bonds += s * spins_[r * l_ + (c + 1) % l_];
      bonds += s * spins_[((r + 1) % l_) * l_ + c];
      magnet += s;
    }
  }
  return -bonds - h_ * magnet;
}

double acceptance_probability(double delta_energy, double T) {
  if (delta_energy <= 0.0) return 1.0;
  return std::exp(-delta_energy / T);
}

bool metropolis_step(IsingState& state, double T) {
  std::uniform_int_distribution<std::size_t> pick(0, state.sites() - 1);
  const std::size_t site = pick(state.rng());
  const double de = state.flip_delta(site);
  if (de <= 0.0 || std::generate_canonical<double, 53>(state.rng()) < acceptance_probability(de, T)) {
    state.flip(site);
    return true;
  }
  return false;
}

void metropolis_sweep(IsingState& state, double T) {
  // Acceptance depends only on the spin and its neighbor sum; tabulate per sweep.
  std::array<double, 10> accept{};
  for (int s : {-1, 1}) {
    for (int nb = -4; nb <= 4; nb += 2) {
      accept[static_cast<std::size_t>((s + 1) / 2 * 5 + (nb + 4) / 2)] =
          acceptance_probability(2.0 * s * (nb + state.field()), T);
    }
  }
  std::uniform_int_distribution<std::size_t> pick(0, state.sites() - 1);
  auto& rng = state.rng();
  for (std::size_t i = 0; i < state.sites(); ++i) {
    const std::size_t site = pick(rng);
    const int s = state.spin(site);
    const double p = accept[static_cast<std::size_t>((s + 1) / 2 * 5 + (state.neighbor_sum(site) + 4) / 2)];
    if (p >= 1.0 || std::generate_canonical<double, 53>(rng) < p) state.flip(site);
  }
}

SampleSet ising_sample_energies(const IsingConfig& config) {
  config.validate();
  IsingState state(config.L, config.seed, config.h_ext);
  for (std::size_t s = 0; s < config.warmup_sweeps; ++s) metropolis_sweep(state, config.T);
  const double per_site = 1.0 / static_cast<double>(state.sites());
  std::vector<double> values(config.samples);
  for (double& v : values) {
    for (std::size_t s = 0; s < config.thin_sweeps; ++s) metropolis_sweep(state, config.T);
    v = state.energy() * per_site;
  }
  return SampleSet(std::move(values),
                   Provenance{{{"T", config.T}, {"L", static_cast<double>(config.L)}}, config.seed});
}

ExactIsingAverages ising_exact_small(std::size_t L, double T) {
  if (L < 2 || L > 4) throw std::invalid_argument("exact enumeration supports 2 <= L <= 4 (got " + std::to_string(L) + ")");
  if (!(T > 0.0)) throw std::invalid_argument("temperature must be > 0");
  const std::size_t n = L * L;
  const std::size_t configs = std::size_t{1} << n;

  std::vector<double> energies(configs);
  IsingState state(L, 0);
  for (std::size_t mask = 0; mask < configs; ++mask) {
    for (std::size_t i = 0; i < n; ++i) state.set_spin(i, (mask >> i) & 1U ? -1 : 1);
    energies[mask] = state.recompute_energy();
  }
  const double e_min = *std::min_element(energies.begin(), energies.end());
  double z = 0.0, e1 = 0.0, e2 = 0.0;
  for (double e : energies) {
    const double w = std::exp(-(e - e_min) / T);
    z += w;
    e1 += w * e;
    e2 += w * e * e;
  }
  ExactIsingAverages out;
  out.mean_energy = e1 / z;
  out.mean_energy_sq = e2 / z;
  out.heat_capacity = (out.mean_energy_sq - out.mean_energy * out.mean_energy) / (static_cast<double>(n) * T * T);
  return out;
}

double heat_capacity(std::span<const double> total_energies, double T, std::size_t L) {
  if (total_energies.size() < 2) throw std::invalid_argument("heat_capacity needs at least 2 energies");
  if (!(T > 0.0)) throw std::invalid_argument("heat_capacity: temperature must be > 0");
  double mean = 0.0;
  for (double e : total_energies) mean += e;
  mean /= static_cast<double>(total_energies.size());
  double var = 0.0;
  for (double e : total_energies) var += (e - mean) * (e - mean);
  var /= static_cast<double>(total_energies.size());
  return var / (static_cast<double>(L * L) * T * T);
}

double heat_capacity_per_spin(const SampleSet& per_spin_energies, double T, std::size_t L) {
  const double sites = static_cast<double>(L * L);
  std::vector<double> totals(per_spin_energies.values().begin(), per_spin_energies.values().end());
  for (double& e : totals) e *= sites;
  return heat_capacity(totals, T, L);
}

double critical_temperature() { return 2.0 / std::log(1.0 + std::sqrt(2.0)); }

}  // namespace fisher
