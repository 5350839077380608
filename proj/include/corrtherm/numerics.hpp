#pragma once

#include <functional>
#include <span>
#include <vector>

namespace corrtherm::numerics {

inline constexpr double kRootTol = 1e-12;
inline constexpr double kArgTol = 1e-10;
inline constexpr int kMaxIter = 200;

struct Bracket {
  double lo = 0.0;
  double hi = 1.0;
  double tol = kRootTol;  // absolute, on the argument
  int max_iter = kMaxIter;

  void validate() const;
};

using ScalarFn = std::function<double(double)>;
using VectorFn = std::function<double(std::span<const double>)>;

/// Bisection. Requires f(lo) and f(hi) of opposite sign (or one of them zero).
/// Stops once the bracket is narrower than tol or cannot shrink any further
/// in floating point. Throws NumericalError on no sign change or iteration cap.
double bisect_root(const ScalarFn& f, const Bracket& b);

struct Max1d {
  double argmax = 0.0;
  double value = 0.0;
  bool flat = false;  // every probe returned the same value
};

/// Golden-section maximization, assuming f unimodal on [lo, hi]. The result
/// is never worse than the best of f(lo), f(mid), f(hi). Values of -inf mark
/// infeasible points and are allowed.
Max1d maximize_1d(const ScalarFn& f, const Bracket& b);

struct MaxNd {
  std::vector<double> argmax;
  double value = 0.0;
};

/// Coarse grid scan with grid_n points per axis (endpoints included),
/// followed by coordinate-wise golden-section passes in a shrinking window
/// around the incumbent. At most 3 dimensions. Grid ties go to the
/// lexicographically smallest point. Deterministic for a fixed grid_n.
MaxNd maximize_grid_refine(const VectorFn& f, std::span<const Bracket> box, int grid_n);

}  // namespace corrtherm::numerics
