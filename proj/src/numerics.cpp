#include "corrtherm/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "corrtherm/error.hpp"

namespace corrtherm::numerics {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5) - 1) / 2
}  // namespace

void Bracket::validate() const {
  if (!(lo < hi)) throw InvalidArgument("bracket requires lo < hi");
  if (!(tol > 0.0)) throw InvalidArgument("bracket tolerance must be > 0");
  if (max_iter < 1) throw InvalidArgument("bracket max_iter must be >= 1");
}

double bisect_root(const ScalarFn& f, const Bracket& b) {
  b.validate();
  double lo = b.lo;
  double hi = b.hi;
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::isnan(flo) || std::isnan(fhi) || (flo > 0.0) == (fhi > 0.0)) {
    throw NumericalError("bisect_root: no sign change on [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "]");
  }
  for (int it = 0; it < b.max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= b.tol || mid <= lo || mid >= hi) return mid;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  if (hi - lo <= b.tol) return 0.5 * (lo + hi);
  throw NumericalError("bisect_root: max_iter exceeded");
}

Max1d maximize_1d(const ScalarFn& f, const Bracket& b) {
  b.validate();
  double a = b.lo;
  double d = b.hi;
  double x1 = d - kInvPhi * (d - a);
  double x2 = a + kInvPhi * (d - a);
  double f1 = f(x1);
  double f2 = f(x2);
  double lo_probe = f1;
  double hi_probe = f1;
  auto track = [&](double v) {
    lo_probe = std::min(lo_probe, v);
    hi_probe = std::max(hi_probe, v);
  };
  track(f2);
  int it = 0;
  while (d - a > b.tol) {
    if (++it > b.max_iter) throw NumericalError("maximize_1d: max_iter exceeded");
    if (f1 >= f2) {
      d = x2;
      x2 = x1;
      f2 = f1;
      x1 = d - kInvPhi * (d - a);
      f1 = f(x1);
      track(f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (d - a);
      f2 = f(x2);
      track(f2);
    }
  }
  Max1d best{0.5 * (a + d), f(0.5 * (a + d)), false};
  track(best.value);
  const std::array<double, 3> anchors{b.lo, 0.5 * (b.lo + b.hi), b.hi};
  for (double x : anchors) {
    const double v = f(x);
    track(v);
    if (v > best.value) best = {x, v, false};
  }
  best.flat = lo_probe == hi_probe;
  return best;
}

MaxNd maximize_grid_refine(const VectorFn& f, std::span<const Bracket> box, int grid_n) {
  const std::size_t k = box.size();
  if (k == 0) throw InvalidArgument("maximize_grid_refine: empty box");
  if (k > 3) throw InvalidArgument("maximize_grid_refine: at most 3 dimensions");
  if (grid_n < 2) throw InvalidArgument("maximize_grid_refine: grid_n must be >= 2");
  for (const auto& b : box) b.validate();

  std::vector<double> step(k);
  for (std::size_t i = 0; i < k; ++i) step[i] = (box[i].hi - box[i].lo) / (grid_n - 1);

  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= std::size_t(grid_n);

  std::vector<double> x(k);
  MaxNd best{std::vector<double>(k), kNegInf};
  bool seeded = false;
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (std::size_t i = k; i-- > 0;) {
      const int j = int(rest % std::size_t(grid_n));
      rest /= std::size_t(grid_n);
      x[i] = j == grid_n - 1 ? box[i].hi : box[i].lo + j * step[i];
    }
    const double v = f(x);
    if (!seeded || v > best.value) {
      best = {x, v};
      seeded = true;
    }
  }
  if (best.value == kNegInf) return best;

  std::vector<double> window = step;
  const double tol = kArgTol;
  int max_passes = 0;
  for (const auto& b : box) max_passes = std::max(max_passes, b.max_iter);

  for (int pass = 0; pass < max_passes; ++pass) {
    const double before = best.value;
    for (std::size_t i = 0; i < k; ++i) {
      const double lo = std::max(box[i].lo, best.argmax[i] - window[i]);
      const double hi = std::min(box[i].hi, best.argmax[i] + window[i]);
      if (!(lo < hi)) continue;
      std::vector<double> probe = best.argmax;
      auto line = [&](double t) {
        probe[i] = t;
        return f(probe);
      };
      const Max1d m = maximize_1d(line, {lo, hi, tol, kMaxIter});
      if (m.value > best.value) {
        best.argmax[i] = m.argmax;
        best.value = m.value;
      }
    }
    const double gain = best.value - before;
    if (!(gain > 1e-14 * std::max(1.0, std::abs(best.value)))) {
      bool done = true;
      for (std::size_t i = 0; i < k; ++i) {
        window[i] *= 0.5;
        if (window[i] > tol) done = false;
      }
      if (done) break;
    }
  }
  return best;
}

}  // namespace corrtherm::numerics
