#include "corrtherm/density.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "corrtherm/error.hpp"
#include "corrtherm/thermo.hpp"

namespace corrtherm {

namespace {

int product(std::span<const int> dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

}  // namespace

DensityMatrix::DensityMatrix(CMatrix rho, std::vector<int> dims)
    : rho_(std::move(rho)), dims_(std::move(dims)) {
  if (rho_.rows() != rho_.cols()) throw InvalidArgument("density matrix must be square");
  for (int d : dims_) {
    if (d < 1) throw InvalidArgument("factor dimensions must be >= 1");
  }
  if (product(dims_) != rho_.rows()) throw InvalidArgument("factor dimensions do not match matrix size");
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InvalidArgument("density matrix must be Hermitian");
  }
  if (std::abs(rho_.trace() - std::complex<double>(1.0)) > 1e-12) {
    throw InvalidArgument("density matrix must have unit trace");
  }
  rho_ = 0.5 * (rho_ + rho_.adjoint()).eval();
}

DensityMatrix DensityMatrix::diagonal(const Eigen::VectorXd& populations, std::vector<int> dims) {
  CMatrix rho = CMatrix::Zero(populations.size(), populations.size());
  rho.diagonal() = populations.cast<std::complex<double>>();
  return DensityMatrix(std::move(rho), std::move(dims));
}

bool DensityMatrix::is_diagonal() const {
  for (Eigen::Index j = 0; j < rho_.cols(); ++j) {
    for (Eigen::Index i = 0; i < rho_.rows(); ++i) {
      if (i != j && rho_(i, j) != std::complex<double>(0.0)) return false;
    }
  }
  return true;
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::VectorXd values;
  if (is_diagonal()) {
    values = rho_.diagonal().real();
    std::sort(values.begin(), values.end());
  } else {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho_, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("eigensolver failed");
    values = solver.eigenvalues();
  }
  if (values.size() > 0 && values.minCoeff() < -1e-10) {
    throw InvalidArgument("density matrix has a negative eigenvalue");
  }
  return values;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const auto& dims = rho.dims();
  const int nf = int(dims.size());
  std::vector<bool> kept(nf, false);
  for (int k : keep) {
    if (k < 0 || k >= nf) throw InvalidArgument("partial_trace: factor index out of range");
    if (kept[k]) throw InvalidArgument("partial_trace: duplicate factor index");
    kept[k] = true;
  }
  std::vector<int> kept_dims;
  std::vector<int> traced_dims;
  for (int f = 0; f < nf; ++f) (kept[f] ? kept_dims : traced_dims).push_back(dims[f]);
  const int dk = product(kept_dims);
  const int dt = product(traced_dims);

  // Full index from (kept multi-index, traced multi-index).
  auto compose = [&](int ik, int it) {
    int full = 0;
    int stride_k = dk;
    int stride_t = dt;
    for (int f = 0; f < nf; ++f) {
      int digit;
      if (kept[f]) {
        stride_k /= dims[f];
        digit = (ik / stride_k) % dims[f];
      } else {
        stride_t /= dims[f];
        digit = (it / stride_t) % dims[f];
      }
      full = full * dims[f] + digit;
    }
    return full;
  };
  std::vector<int> index(std::size_t(dk) * dt);
  for (int ik = 0; ik < dk; ++ik) {
    for (int it = 0; it < dt; ++it) index[std::size_t(ik) * dt + it] = compose(ik, it);
  }

  const CMatrix& m = rho.matrix();
  CMatrix out = CMatrix::Zero(dk, dk);
  const bool diag = rho.is_diagonal();
  for (int a = 0; a < dk; ++a) {
    for (int b = 0; b < dk; ++b) {
      if (diag && a != b) continue;
      std::complex<double> acc = 0.0;
      for (int t = 0; t < dt; ++t) {
        acc += m(index[std::size_t(a) * dt + t], index[std::size_t(b) * dt + t]);
      }
      out(a, b) = acc;
    }
  }
  if (kept_dims.empty()) kept_dims.push_back(1);
  return DensityMatrix(std::move(out), std::move(kept_dims));
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const Eigen::VectorXd values = rho.eigenvalues();
  double s = 0.0;
  for (double v : values) s -= xlogx(std::max(0.0, v));
  return s;
}

double mutual_information(const DensityMatrix& rho, std::span<const int> part_a,
                          std::span<const int> part_b) {
  std::vector<int> both(part_a.begin(), part_a.end());
  both.insert(both.end(), part_b.begin(), part_b.end());
  std::sort(both.begin(), both.end());
  if (std::adjacent_find(both.begin(), both.end()) != both.end()) {
    throw InvalidArgument("mutual_information: parts must be disjoint");
  }
  const DensityMatrix ab = partial_trace(rho, both);
  return von_neumann_entropy(partial_trace(rho, part_a)) +
         von_neumann_entropy(partial_trace(rho, part_b)) - von_neumann_entropy(ab);
}

double wootters_concurrence(const Eigen::Matrix4cd& rho) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, rho.cwiseAbs().maxCoeff())) {
    throw InvalidArgument("wootters_concurrence: matrix must be Hermitian");
  }
  const Eigen::Matrix4cd herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(herm);
  if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
  // rho = A A^dagger; the lambdas are the singular values of A^T (sigma_y x sigma_y) A.
  const Eigen::Matrix4cd a = es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Eigen::Matrix4cd tau = a.transpose() * yy * a;
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(tau);
  const Eigen::Vector4d l = svd.singularValues();  // descending
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double wootters_concurrence_normalized(const Eigen::Matrix4cd& rho) {
  const double tr = rho.trace().real();
  if (!(tr > 0.0)) throw InvalidArgument("wootters_concurrence_normalized: trace must be > 0");
  return wootters_concurrence(rho / tr);
}

CMatrix haar_unitary(int dim, std::uint64_t seed, std::uint64_t index) {
  if (dim < 1) throw InvalidArgument("haar_unitary: dim must be >= 1");
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(index),
                    std::uint32_t(index >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix z(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) z(i, j) = {normal(rng), normal(rng)};
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const std::complex<double> d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

}  // namespace corrtherm
