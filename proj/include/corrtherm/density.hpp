#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

namespace corrtherm {

using CMatrix = Eigen::MatrixXcd;

/// Hermitian, unit-trace matrix on a tensor product of factors with the
/// given dimensions (first factor most significant in the index).
class DensityMatrix {
 public:
  /// Validates Hermiticity (1e-12) and trace (1e-12), then symmetrizes.
  DensityMatrix(CMatrix rho, std::vector<int> dims);

  /// Diagonal state with the given populations.
  static DensityMatrix diagonal(const Eigen::VectorXd& populations, std::vector<int> dims);

  const CMatrix& matrix() const { return rho_; }
  const std::vector<int>& dims() const { return dims_; }
  int dim() const { return int(rho_.rows()); }
  bool is_diagonal() const;

  /// Ascending eigenvalues; throws InvalidArgument below -1e-10.
  Eigen::VectorXd eigenvalues() const;

 private:
  CMatrix rho_;
  std::vector<int> dims_;
};

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Reduced state on the kept factors (in their original order).
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

/// -sum lambda ln lambda, 0 ln 0 = 0.
double von_neumann_entropy(const DensityMatrix& rho);

/// S(A) + S(B) - S(AB) for disjoint factor sets A and B.
double mutual_information(const DensityMatrix& rho, std::span<const int> part_a,
                          std::span<const int> part_b);

/// Wootters concurrence max(0, l1 - l2 - l3 - l4) of a positive 4x4 matrix.
/// The matrix is not renormalized, so the result scales with its trace.
double wootters_concurrence(const Eigen::Matrix4cd& rho);

/// Concurrence of rho / Tr(rho).
double wootters_concurrence_normalized(const Eigen::Matrix4cd& rho);

/// Haar-random unitary via QR of a complex Gaussian matrix with the phases
/// of diag(R) divided out. Deterministic in (seed, index).
CMatrix haar_unitary(int dim, std::uint64_t seed, std::uint64_t index = 0);

}  // namespace corrtherm
