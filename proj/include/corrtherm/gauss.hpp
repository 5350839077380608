#pragma once

#include <Eigen/Dense>

namespace corrtherm {

/// Two-mode covariance matrix in quadrature order (x1, p1, x2, p2), with
/// sigma_mn = <{X_m, X_n}> so the vacuum is the identity. First moments are zero.
class CovarianceMatrix {
 public:
  /// Throws InvalidArgument if sigma is not symmetric or not a bona fide state.
  explicit CovarianceMatrix(const Eigen::Matrix4d& sigma);

  /// nu (cosh 2r, sinh 2r Z) two-mode squeezed thermal state.
  static CovarianceMatrix thermal_squeezed(double nu, double r);

  const Eigen::Matrix4d& matrix() const { return sigma_; }

 private:
  Eigen::Matrix4d sigma_;
};

struct SymplecticPair {
  double nu_minus = 0.0;
  double nu_plus = 0.0;
};

/// Symplectic eigenvalues of a symmetric 4x4 matrix: moduli of the
/// eigenvalues of i Omega sigma, each appearing twice. No bona fide check.
SymplecticPair symplectic_eigenvalues(const Eigen::Matrix4d& sigma);
SymplecticPair symplectic_eigenvalues(const CovarianceMatrix& sigma);

/// Same for the partial transpose (p2 -> -p2).
SymplecticPair partial_transpose_eigenvalues(const CovarianceMatrix& sigma);

/// coth(1/(2T)); 1 at T = 0.
double nu_of_T(double T);

/// Temperature whose thermal symplectic eigenvalue is nu (inverse of nu_of_T).
double T_of_nu(double nu);

/// Cost of cooling both modes from nu(T) to nu_I with a bath at T.
double gauss_w1(double nu_I, double T);

/// Cost of two-mode squeezing nu_I * 1 until the partial transpose has nu_tilde.
double gauss_w2(double nu_I, double nu_tilde);

/// Inverse of gauss_w2 in nu_tilde, the root in (0, nu_I].
double nu_tilde_from_w2(double nu_I, double W_II);

/// h+ ln h+ - h- ln h- with h(x) = (x +- 1)^2 / (4x) below 1, else 0.
double eof_gaussian(double nu_tilde);

enum class GaussStatus { entangled, no_entanglement };

struct GaussProtocolPoint {
  double nu_I = 1.0;
  double nu_tilde = 1.0;
  double r = 0.0;
  double W_I = 0.0;
  double W_II = 0.0;
  double eof = 0.0;
  double T_II = 0.0;
  GaussStatus status = GaussStatus::no_entanglement;
};

/// Best cooling depth nu_I in [1, nu(T)] for budget W; the remainder is
/// spent on two-mode squeezing.
GaussProtocolPoint gauss_optimize(double W, double T);

}  // namespace corrtherm
