#pragma once

#include <array>

namespace corrtherm {

/// Two-mode fermionic thermal state, populations ordered (00, 10, 01, 11)
/// by occupation of (mode 1, mode 2).
struct FermionThermal {
  double beta = 0.0;
  std::array<double, 4> populations{};
};

FermionThermal fermion_thermal(double beta);

/// Mean occupation 1 / (e^beta + 1) of one mode; 0 at beta = inf.
double fermi_occupation(double beta);

/// State of the two-step fermionic protocol. Occupations are those after
/// step I, ordered N1 <= N2. theta_odd is 0 for the even-only protocol.
struct FermionProtocolPoint {
  double N1 = 0.0;
  double N2 = 0.0;
  double theta_even = 0.0;
  double theta_odd = 0.0;
  double W_I = 0.0;
  double W_II = 0.0;
  double eof = 0.0;  // nats
  double T_II = 0.0;  // marginal temperature after step II (even protocol only)
};

/// Superselected EoF of the symmetric even-subspace protocol:
/// ln2 sqrt(W_II) sqrt(2 tanh(beta_I/2) - W_II).
double fermion_eof_symmetric(double W_II, double beta_I);

/// ln2 [|1-N1-N2| sin(2 theta_even) + |N1-N2| sin(2 theta_odd)].
double fermion_eof_asymmetric(const FermionProtocolPoint& p);

/// 2 (1 - N1 - N2) sin^2(theta_even). The odd rotation costs nothing.
double fermion_w2_asymmetric(double N1, double N2, double theta_even);

/// Free-energy cost of moving both modes from thermal occupation at beta to
/// uncorrelated occupations N1, N2.
double fermion_w1(double N1, double N2, double beta);

/// 2T ln(e^beta + 1) - 1: cost of a pure maximally entangled even state.
double fermion_w_max(double beta);

/// Symmetric cooling then an even-subspace rotation, split optimized.
FermionProtocolPoint fermion_optimize_even(double W, double beta);

/// Independent cooling/heating of the modes, both parity rotations,
/// theta_odd = pi/4. Optimizes over (N1, N2) with theta_even fixed by the budget.
FermionProtocolPoint fermion_optimize(double W, double beta);

}  // namespace corrtherm
