#include "corrtherm/gauss.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "corrtherm/error.hpp"
#include "corrtherm/numerics.hpp"
#include "corrtherm/thermo.hpp"

namespace corrtherm {

namespace {

constexpr int kGridNu = 65;

Eigen::Matrix4d symplectic_form() {
  Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
  omega(0, 1) = 1.0;
  omega(1, 0) = -1.0;
  omega(2, 3) = 1.0;
  omega(3, 2) = -1.0;
  return omega;
}

void check_symmetric(const Eigen::Matrix4d& sigma) {
  const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
  if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InvalidArgument("covariance matrix must be symmetric");
  }
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(const Eigen::Matrix4d& sigma) : sigma_(sigma) {
  check_symmetric(sigma);
  if (Eigen::LLT<Eigen::Matrix4d>(sigma).info() != Eigen::Success) {
    throw InvalidArgument("covariance matrix must be positive definite");
  }
  if (symplectic_eigenvalues(sigma).nu_minus < 1.0 - 1e-10) {
    throw InvalidArgument("covariance matrix violates the uncertainty principle");
  }
}

CovarianceMatrix CovarianceMatrix::thermal_squeezed(double nu, double r) {
  const double c = std::cosh(2.0 * r);
  const double s = std::sinh(2.0 * r);
  Eigen::Matrix4d sigma;
  sigma << c, 0, s, 0,
           0, c, 0, -s,
           s, 0, c, 0,
           0, -s, 0, c;
  return CovarianceMatrix(nu * sigma);
}

SymplecticPair symplectic_eigenvalues(const Eigen::Matrix4d& sigma) {
  check_symmetric(sigma);
  const Eigen::Matrix4d m = symplectic_form() * sigma;
  Eigen::EigenSolver<Eigen::Matrix4d> solver(m, false);
  if (solver.info() != Eigen::Success) throw NumericalError("symplectic eigenvalues: eigensolver failed");
  std::array<double, 4> moduli;
  for (int i = 0; i < 4; ++i) moduli[i] = std::abs(solver.eigenvalues()[i]);
  std::sort(moduli.begin(), moduli.end());
  return {0.5 * (moduli[0] + moduli[1]), 0.5 * (moduli[2] + moduli[3])};
}

SymplecticPair symplectic_eigenvalues(const CovarianceMatrix& sigma) {
  return symplectic_eigenvalues(sigma.matrix());
}

SymplecticPair partial_transpose_eigenvalues(const CovarianceMatrix& sigma) {
  const Eigen::Vector4d flip(1.0, 1.0, 1.0, -1.0);
  const Eigen::Matrix4d pt = flip.asDiagonal() * sigma.matrix() * flip.asDiagonal();
  return symplectic_eigenvalues(pt);
}

double nu_of_T(double T) {
  if (std::isnan(T) || T < 0.0) throw InvalidArgument("nu_of_T: T must be >= 0");
  if (T == 0.0) return 1.0;
  return 1.0 / std::tanh(0.5 / T);
}

double T_of_nu(double nu) {
  if (std::isnan(nu) || nu < 1.0) throw InvalidArgument("T_of_nu: nu must be >= 1");
  if (nu == 1.0) return 0.0;
  if (std::isinf(nu)) return kInf;
  return 1.0 / std::log1p(2.0 / (nu - 1.0));
}

double gauss_w1(double nu_I, double T) {
  const double nu_T = nu_of_T(T);
  if (std::isnan(nu_I) || nu_I < 1.0 || nu_I > nu_T * (1.0 + 1e-12)) {
    throw InvalidArgument("gauss_w1: nu_I must lie in [1, nu(T)]");
  }
  if (T == 0.0) return 0.0;
  const double cost = nu_I - nu_T - 2.0 * T * (entropic_f(nu_I) - entropic_f(nu_T));
  return std::max(0.0, cost);
}

double gauss_w2(double nu_I, double nu_tilde) {
  if (std::isnan(nu_tilde) || nu_tilde <= 0.0) throw InvalidArgument("gauss_w2: nu_tilde must be > 0");
  if (nu_tilde > nu_I * (1.0 + 1e-12)) throw InvalidArgument("gauss_w2: nu_tilde must be <= nu_I");
  const double d = nu_I - nu_tilde;
  return d * d / (2.0 * nu_tilde);
}

double nu_tilde_from_w2(double nu_I, double W_II) {
  if (std::isnan(W_II) || W_II < 0.0) throw InvalidArgument("nu_tilde_from_w2: W_II must be >= 0");
  if (std::isnan(nu_I) || nu_I <= 0.0) throw InvalidArgument("nu_tilde_from_w2: nu_I must be > 0");
  // Smaller root of x^2 - 2 (nu_I + W) x + nu_I^2, written without cancellation.
  return nu_I * nu_I / (nu_I + W_II + std::sqrt(W_II * (2.0 * nu_I + W_II)));
}

double eof_gaussian(double nu_tilde) {
  if (std::isnan(nu_tilde) || nu_tilde <= 0.0) throw InvalidArgument("eof_gaussian: nu_tilde must be > 0");
  if (nu_tilde >= 1.0) return 0.0;
  // h+ = h- + 1, so h+ ln h+ - h- ln h- = ln(1 + h-) + h- ln(1 + 1/h-).
  const double d = 1.0 - nu_tilde;
  const double h_minus = d * d / (4.0 * nu_tilde);
  if (h_minus == 0.0) return 0.0;
  return std::log1p(h_minus) + h_minus * std::log1p(1.0 / h_minus);
}

GaussProtocolPoint gauss_optimize(double W, double T) {
  if (std::isnan(W) || W < 0.0) throw InvalidArgument("gauss_optimize: W must be >= 0");
  const double nu_T = nu_of_T(T);
  const double full_cooling = gauss_w1(1.0, T);

  double nu_lo = 1.0;
  if (W < full_cooling) {
    nu_lo = numerics::bisect_root([&](double nu) { return gauss_w1(nu, T) - W; },
                                  {1.0, nu_T, 1e-15 * nu_T, 400});
  }
  auto nu_tilde_at = [&](double nu_I) {
    return nu_tilde_from_w2(nu_I, std::max(0.0, W - gauss_w1(nu_I, T)));
  };

  // eof is a decreasing function of nu_tilde alone, so minimizing nu_tilde
  // maximizes eof and stays informative where eof is zero.
  double nu_I = nu_T;
  if (nu_lo < nu_T) {
    const numerics::Bracket box{nu_lo, nu_T};
    const auto m = numerics::maximize_grid_refine(
        [&](std::span<const double> x) { return -nu_tilde_at(x[0]); }, std::span(&box, 1), kGridNu);
    nu_I = m.argmax[0];
  }

  GaussProtocolPoint p;
  p.nu_I = nu_I;
  p.W_I = gauss_w1(nu_I, T);
  p.W_II = std::max(0.0, W - p.W_I);
  p.nu_tilde = nu_tilde_from_w2(nu_I, p.W_II);
  p.r = -0.5 * std::log(p.nu_tilde / nu_I);
  p.eof = eof_gaussian(p.nu_tilde);
  p.status = p.nu_tilde < 1.0 ? GaussStatus::entangled : GaussStatus::no_entanglement;
  p.T_II = T_of_nu(std::max(1.0, nu_I * std::cosh(2.0 * p.r)));
  return p;
}

}  // namespace corrtherm
