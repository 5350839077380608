#pragma once

#include <limits>
#include <span>
#include <vector>

namespace corrtherm {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// One energy level of a diagonal Hamiltonian, energies in units of omega.
struct Level {
  double energy = 0.0;
  int degeneracy = 1;
};

/// Which evaluation path a spectrum uses. Only the exact boson pair has no
/// explicit level list; it is evaluated from Bose-Einstein closed forms.
enum class SystemFamily { generic, two_fermion_modes, two_boson_modes, two_boson_modes_exact };

/// Diagonal Hamiltonian given as sorted levels with degeneracies.
///
/// Levels of equal energy are kept as listed; evaluation is O(#levels). All
/// thermodynamic quantities are computed relative to the ground energy, so
/// shifting every level by a constant shifts E and F by that constant and
/// leaves S, Z-ratios and every work cost unchanged.
class SpectrumSystem {
 public:
  static SpectrumSystem from_levels(std::vector<Level> levels);

  /// Two fermionic modes of frequency omega: levels 0, 1 (x2), 2.
  static SpectrumSystem two_fermion_modes();

  /// Two bosonic modes, each truncated to occupations 0..n_max. Total
  /// energy k has degeneracy min(k, 2 n_max - k) + 1. The truncation error
  /// in populations is bounded by the single-mode tail exp(-beta (n_max+1)).
  static SpectrumSystem two_boson_modes(int n_max = 64);

  /// Two untruncated bosonic modes, evaluated in closed form.
  static SpectrumSystem two_boson_modes_exact();

  SystemFamily family() const { return family_; }
  std::span<const Level> levels() const { return levels_; }
  int n_max() const { return n_max_; }

  double ground_energy() const;
  int ground_degeneracy() const;
  /// Largest level energy; +inf for the untruncated boson pair.
  double max_energy() const;
  /// Whether the energy is bounded above (finite spectrum).
  bool bounded() const { return family_ != SystemFamily::two_boson_modes_exact; }

 private:
  SpectrumSystem() = default;

  SystemFamily family_ = SystemFamily::generic;
  std::vector<Level> levels_;
  int n_max_ = 0;
};

/// Inverse temperature in units of 1/omega. beta = +inf is the exact ground state.
class ThermalSpec {
 public:
  explicit ThermalSpec(double beta);
  static ThermalSpec from_temperature(double T);
  static ThermalSpec ground() { return ThermalSpec(kInf); }

  double beta() const { return beta_; }
  double temperature() const { return is_ground() ? 0.0 : 1.0 / beta_; }
  bool is_ground() const { return beta_ == kInf; }

 private:
  double beta_;
};

struct ThermalProps {
  double energy = 0.0;              // omega
  double entropy = 0.0;             // nats
  double free_energy = 0.0;         // omega, F = E - T S
  double partition_function = 1.0;  // includes exp(-beta E_ground)
};

ThermalProps thermal_props(const SpectrumSystem& sys, const ThermalSpec& spec);

/// S(tau(beta_a) || tau(beta_b)) in nats. Throws InvalidArgument when
/// beta_b = inf and beta_a is finite (the relative entropy is infinite).
double relative_entropy_thermal(const SpectrumSystem& sys, double beta_a, double beta_b);

/// f(x) = ((x+1)/2) ln((x+1)/2) - ((x-1)/2) ln((x-1)/2), x >= 1.
/// Entropy of one bosonic mode with symplectic eigenvalue x.
double entropic_f(double x);

/// x ln x with 0 ln 0 = 0.
double xlogx(double x);

}  // namespace corrtherm
