#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corrtherm/density.hpp"
#include "corrtherm/fermion.hpp"

namespace corrtherm {

/// Noninteracting Hamiltonian: one list of diagonal energies per factor,
/// summed over factors.
class DiagonalHamiltonian {
 public:
  explicit DiagonalHamiltonian(std::vector<std::vector<double>> factors);

  /// Qubits S1, S2 with energies {0, 1} and the four-level bath {0, 0.7, 1.3, 2.1}.
  static DiagonalHamiltonian two_qubits_and_bath();

  /// Qubits S1, S2 with energies {0, 1} and a trivial one-level bath.
  static DiagonalHamiltonian two_qubits();

  const std::vector<std::vector<double>>& factors() const { return factors_; }
  std::vector<int> dims() const;
  int dim() const;

  /// Diagonal of the full Hamiltonian in the product basis.
  Eigen::VectorXd total() const;

 private:
  std::vector<std::vector<double>> factors_;
};

/// Gibbs state of the full Hamiltonian at finite beta > 0.
DensityMatrix thermal_product_state(const DiagonalHamiltonian& h, double beta);

/// Terms of the work decomposition for rho = U tau U^dagger with factors
/// ordered (S1, S2, B).
struct DecompositionReport {
  double W = 0.0;
  double dF_S = 0.0;
  double dF_B = 0.0;
  double dF_S1 = 0.0;
  double dF_S2 = 0.0;
  double I_SB = 0.0;
  double I_S1S2 = 0.0;
  double D_S1 = 0.0;  // relative entropies to the thermal marginals
  double D_S2 = 0.0;
  double D_S = 0.0;
  double D_B = 0.0;
  double residual_system_bath = 0.0;   // W - dF_S - dF_B - T I_SB
  double residual_system_split = 0.0;  // dF_S - dF_S1 - dF_S2 - T I_S1S2
  double residual_entropic = 0.0;      // beta W - D_S1 - D_S2 - D_B - I_S1S2 - I_SB
  double residual_relative = 0.0;      // dF_S - T D_S
  double residual_spectrum = 0.0;      // max eigenvalue change of the global state

  double max_residual() const;
};

DecompositionReport verify_free_energy_decomposition(const DiagonalHamiltonian& h, double beta,
                                                     const CMatrix& unitary);

/// Ultimate-bound statistics over a set of unitaries.
struct BoundReport {
  int samples = 0;
  int violations = 0;
  double min_slack = 0.0;       // min over samples of beta W - I_S1S2
  double max_excess = 0.0;      // max(0, I_S1S2 - beta W)
  double tightest_ratio = 0.0;  // max I_S1S2 / (beta W) over samples with W > 0
  long worst_index = -1;        // sample with the smallest slack
};

/// Checks I_S1S2 <= beta W + 1e-9 for each unitary.
BoundReport verify_ultimate_bound(const DiagonalHamiltonian& h, double beta,
                                  const std::vector<CMatrix>& unitaries);

/// Same, with Haar unitaries haar_unitary(dim, seed, i) for i < samples.
BoundReport verify_ultimate_bound(const DiagonalHamiltonian& h, double beta, std::uint64_t seed,
                                  int samples);

/// Rotation by theta in span{|00>, |11>} of two qubits (identity on the bath).
CMatrix parity_rotation(const DiagonalHamiltonian& h, double theta);

/// Rotated two-mode thermal state projected on span{|00>, |0n>, |n0>, |nn>}.
struct NGEmbeddedState {
  Eigen::Matrix4cd projected;  // not renormalized
  double W_II = 0.0;           // measured Tr(H (rho' - rho))
  int n_max = 0;
};

/// Truncated Fock construction. n_max = 0 picks the smallest cutoff >= 2n
/// whose dropped single-mode tail is below 1e-16; the truncated state is
/// renormalized.
NGEmbeddedState ng_embedded_state(double alpha, int n, double beta_I, int n_max = 0);

/// Two-mode fermionic state after step II, basis (00, 01, 10, 11).
DensityMatrix fermion_protocol_state(const FermionProtocolPoint& p);

struct FermionStateCheck {
  double energy_change = 0.0;
  double energy_formula = 0.0;
  double parity_leak = 0.0;       // largest coupling between parity blocks
  double even_coherence = 0.0;    // 2 |rho(00, 11)|
  double odd_coherence = 0.0;     // 2 |rho(01, 10)|
  double eof_from_blocks = 0.0;   // ln2 (even + odd coherence)
};

FermionStateCheck check_fermion_protocol_state(const FermionProtocolPoint& p);

/// One row of a verification report. `where` names the worst instance.
struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  std::vector<std::pair<std::string, double>> where;
  std::vector<std::pair<std::string, double>> extra;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  int samples = 0;
  std::vector<CheckResult> checks;

  bool pass() const;
};

/// Suites: identities, bound, fermion, nongauss, all.
SuiteReport run_verify_suite(std::string_view suite, std::uint64_t seed, int samples);

}  // namespace corrtherm
