#include "corrtherm/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "corrtherm/error.hpp"

namespace corrtherm {

namespace {

// Thermal quantities measured from the ground level: excitation = E - E0,
// log_z = ln(Z exp(beta E0)).
struct Shifted {
  double excitation = 0.0;
  double entropy = 0.0;
  double log_z = 0.0;
};

Shifted shifted_levels(std::span<const Level> levels, double beta) {
  const double e0 = levels.front().energy;
  if (beta == kInf) {
    int g0 = 0;
    for (const auto& l : levels) {
      if (l.energy == e0) g0 += l.degeneracy;
    }
    return {0.0, std::log(double(g0)), std::log(double(g0))};
  }
  double z = 0.0;
  double ez = 0.0;
  for (const auto& l : levels) {
    const double de = l.energy - e0;
    const double w = l.degeneracy * std::exp(-beta * de);
    z += w;
    ez += w * de;
  }
  const double excitation = ez / z;
  const double log_z = std::log(z);
  return {excitation, beta * excitation + log_z, log_z};
}

// Two independent oscillators: n = 1/(e^beta - 1) per mode.
Shifted shifted_boson_pair(double beta) {
  if (beta == kInf) return {};
  const double occupation = 1.0 / std::expm1(beta);
  const double log_z_mode = -std::log1p(-std::exp(-beta));
  const double excitation = 2.0 * occupation;
  return {excitation, beta * excitation + 2.0 * log_z_mode, 2.0 * log_z_mode};
}

Shifted shifted(const SpectrumSystem& sys, double beta) {
  if (sys.family() == SystemFamily::two_boson_modes_exact) return shifted_boson_pair(beta);
  return shifted_levels(sys.levels(), beta);
}

void check_beta(double beta) {
  if (std::isnan(beta) || beta <= 0.0 || (std::isinf(beta) && beta < 0)) {
    throw InvalidArgument("beta must be > 0 or +inf, got " + std::to_string(beta));
  }
}

}  // namespace

SpectrumSystem SpectrumSystem::from_levels(std::vector<Level> levels) {
  if (levels.size() < 2) throw InvalidArgument("spectrum needs at least 2 levels");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!std::isfinite(levels[i].energy)) throw InvalidArgument("non-finite level energy");
    if (levels[i].degeneracy < 1) throw InvalidArgument("degeneracy must be >= 1");
    if (i > 0 && levels[i].energy < levels[i - 1].energy) {
      throw InvalidArgument("level energies must be sorted non-decreasing");
    }
  }
  SpectrumSystem sys;
  sys.levels_ = std::move(levels);
  return sys;
}

SpectrumSystem SpectrumSystem::two_fermion_modes() {
  auto sys = from_levels({{0.0, 1}, {1.0, 2}, {2.0, 1}});
  sys.family_ = SystemFamily::two_fermion_modes;
  return sys;
}

SpectrumSystem SpectrumSystem::two_boson_modes(int n_max) {
  if (n_max < 1) throw InvalidArgument("n_max must be >= 1");
  std::vector<Level> levels;
  levels.reserve(2 * n_max + 1);
  for (int k = 0; k <= 2 * n_max; ++k) {
    levels.push_back({double(k), std::min(k, 2 * n_max - k) + 1});
  }
  auto sys = from_levels(std::move(levels));
  sys.family_ = SystemFamily::two_boson_modes;
  sys.n_max_ = n_max;
  return sys;
}

SpectrumSystem SpectrumSystem::two_boson_modes_exact() {
  SpectrumSystem sys;
  sys.family_ = SystemFamily::two_boson_modes_exact;
  return sys;
}

double SpectrumSystem::ground_energy() const {
  return levels_.empty() ? 0.0 : levels_.front().energy;
}

int SpectrumSystem::ground_degeneracy() const {
  if (levels_.empty()) return 1;
  int g = 0;
  for (const auto& l : levels_) {
    if (l.energy == levels_.front().energy) g += l.degeneracy;
  }
  return g;
}

double SpectrumSystem::max_energy() const {
  return levels_.empty() ? kInf : levels_.back().energy;
}

ThermalSpec::ThermalSpec(double beta) : beta_(beta) { check_beta(beta); }

ThermalSpec ThermalSpec::from_temperature(double T) {
  if (std::isnan(T) || T < 0.0 || std::isinf(T)) {
    throw InvalidArgument("temperature must be finite and >= 0");
  }
  return ThermalSpec(T == 0.0 ? kInf : 1.0 / T);
}

ThermalProps thermal_props(const SpectrumSystem& sys, const ThermalSpec& spec) {
  const double beta = spec.beta();
  const double e0 = sys.ground_energy();
  const Shifted s = shifted(sys, beta);
  ThermalProps p;
  p.energy = e0 + s.excitation;
  p.entropy = s.entropy;
  if (spec.is_ground()) {
    p.free_energy = e0;
    p.partition_function = e0 == 0.0 ? std::exp(s.log_z) : (e0 > 0.0 ? 0.0 : kInf);
  } else {
    p.free_energy = e0 - s.log_z / beta;
    p.partition_function = std::exp(s.log_z - beta * e0);
  }
  return p;
}

double relative_entropy_thermal(const SpectrumSystem& sys, double beta_a, double beta_b) {
  check_beta(beta_a);
  check_beta(beta_b);
  if (beta_a == beta_b) return 0.0;
  if (beta_b == kInf) {
    throw InvalidArgument("relative entropy to the ground state is infinite for beta_a < inf");
  }
  const Shifted a = shifted(sys, beta_a);
  const Shifted b = shifted(sys, beta_b);
  const double value = beta_b * a.excitation - a.entropy + b.log_z;
  return std::max(0.0, value);
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

double entropic_f(double x) {
  if (std::isnan(x) || x < 1.0) throw InvalidArgument("entropic_f requires x >= 1");
  if (x == 1.0) return 0.0;
  if (std::isinf(x)) return kInf;
  // With n = (x-1)/2: (n+1) ln(n+1) - n ln n, rearranged to avoid cancellation.
  const double n = 0.5 * (x - 1.0);
  return std::log1p(n) + n * std::log1p(1.0 / n);
}

}  // namespace corrtherm
