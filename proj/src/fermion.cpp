#include "corrtherm/fermion.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "corrtherm/error.hpp"
#include "corrtherm/numerics.hpp"
#include "corrtherm/thermo.hpp"

namespace corrtherm {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kGridEven = 65;
constexpr int kGridAsym = 41;

double temperature_of(double beta) { return beta == kInf ? 0.0 : 1.0 / beta; }

void check_budget(double W, double beta) {
  if (std::isnan(W) || W < 0.0) throw InvalidArgument("fermion protocol: W must be >= 0");
  const double w_max = fermion_w_max(beta);
  if (W > w_max * (1.0 + 1e-12)) {
    throw InvalidArgument("fermion protocol: W exceeds W_max(beta) = " + std::to_string(w_max));
  }
}

// Single-mode free energy at bath temperature T for occupation N.
double mode_free_energy(double N, double T) {
  return N + T * (xlogx(N) + xlogx(1.0 - N));
}

double temperature_from_occupation(double N) {
  if (N <= 0.0) return 0.0;
  if (N >= 0.5 - 1e-12) return kInf;
  return 1.0 / std::log((1.0 - N) / N);
}

}  // namespace

double fermi_occupation(double beta) {
  ThermalSpec spec(beta);
  if (spec.is_ground()) return 0.0;
  return 1.0 / (std::exp(beta) + 1.0);
}

FermionThermal fermion_thermal(double beta) {
  const double n = fermi_occupation(beta);
  return {beta, {(1 - n) * (1 - n), n * (1 - n), (1 - n) * n, n * n}};
}

double fermion_eof_symmetric(double W_II, double beta_I) {
  ThermalSpec spec(beta_I);
  const double span = spec.is_ground() ? 2.0 : 2.0 * std::tanh(0.5 * beta_I);
  if (std::isnan(W_II) || W_II < 0.0 || W_II > span * (1.0 + 1e-12)) {
    throw InvalidArgument("fermion_eof_symmetric: W_II outside [0, 2 tanh(beta_I/2)]");
  }
  return kLn2 * std::sqrt(W_II) * std::sqrt(std::max(0.0, span - W_II));
}

double fermion_eof_asymmetric(const FermionProtocolPoint& p) {
  return kLn2 * (std::abs(1.0 - p.N1 - p.N2) * std::sin(2.0 * p.theta_even) +
                 std::abs(p.N1 - p.N2) * std::sin(2.0 * p.theta_odd));
}

double fermion_w2_asymmetric(double N1, double N2, double theta_even) {
  const double s = std::sin(theta_even);
  return 2.0 * (1.0 - N1 - N2) * s * s;
}

double fermion_w1(double N1, double N2, double beta) {
  const double T = temperature_of(ThermalSpec(beta).beta());
  const double thermal = beta == kInf ? 0.0 : -T * std::log1p(std::exp(-beta));
  const double cost = mode_free_energy(N1, T) + mode_free_energy(N2, T) - 2.0 * thermal;
  return std::max(0.0, cost);
}

double fermion_w_max(double beta) {
  ThermalSpec spec(beta);
  if (spec.is_ground()) return 1.0;
  return 1.0 + 2.0 * spec.temperature() * std::log1p(std::exp(-beta));
}

FermionProtocolPoint fermion_optimize_even(double W, double beta) {
  check_budget(W, beta);
  const double n_thermal = fermi_occupation(beta);
  auto cooling_cost = [&](double N) { return fermion_w1(N, N, beta); };

  // Occupations reachable with the budget: cooling_cost decreases on [0, n_thermal].
  double n_lo = 0.0;
  if (W < cooling_cost(0.0)) {
    if (n_thermal > 0.0 && cooling_cost(n_thermal) < W) {
      n_lo = numerics::bisect_root([&](double N) { return cooling_cost(N) - W; }, {0.0, n_thermal, 1e-15, 200});
    } else {
      n_lo = n_thermal;
    }
  }

  struct Eval {
    double w1, w2, eof;
  };
  auto evaluate = [&](double N) -> Eval {
    const double w1 = std::min(W, cooling_cost(N));
    const double peak = 1.0 - 2.0 * N;  // W_II at sin^2(theta) = 1/2
    const double w2 = std::clamp(W - w1, 0.0, std::max(0.0, peak));
    const double eof = kLn2 * std::sqrt(w2) * std::sqrt(std::max(0.0, 2.0 * peak - w2));
    return {w1, w2, eof};
  };

  double best_n = n_thermal;
  if (n_lo < n_thermal) {
    const numerics::Bracket box{n_lo, n_thermal};
    const auto m = numerics::maximize_grid_refine(
        [&](std::span<const double> x) { return evaluate(x[0]).eof; }, std::span(&box, 1),
        kGridEven);
    best_n = m.argmax[0];
  }

  const Eval e = evaluate(best_n);
  FermionProtocolPoint p;
  p.N1 = p.N2 = best_n;
  p.W_I = e.w1;
  p.W_II = e.w2;
  const double peak = 1.0 - 2.0 * best_n;
  p.theta_even = peak > 0.0 ? std::asin(std::sqrt(std::min(1.0, e.w2 / (2.0 * peak)))) : 0.0;
  p.theta_odd = 0.0;
  p.eof = e.eof;
  p.T_II = temperature_from_occupation(best_n + 0.5 * e.w2);
  return p;
}

FermionProtocolPoint fermion_optimize(double W, double beta) {
  check_budget(W, beta);
  const double n_thermal = fermi_occupation(beta);

  // theta_even eliminated: spend what is left after step I, capped at pi/4.
  auto build = [&](double a, double b) {
    FermionProtocolPoint p;
    p.N1 = std::min(a, b);
    p.N2 = std::max(a, b);
    p.theta_odd = kQuarterPi;
    p.W_I = fermion_w1(p.N1, p.N2, beta);
    const double even_weight = 1.0 - p.N1 - p.N2;
    const double rest = std::max(0.0, W - p.W_I);
    if (even_weight > 0.0) {
      const double s2 = std::min(0.5, rest / (2.0 * even_weight));
      p.theta_even = std::asin(std::sqrt(s2));
    }
    p.W_II = fermion_w2_asymmetric(p.N1, p.N2, p.theta_even);
    p.eof = fermion_eof_asymmetric(p);
    return p;
  };
  auto objective = [&](std::span<const double> x) {
    if (x[0] + x[1] > 1.0) return kNegInf;
    if (fermion_w1(x[0], x[1], beta) > W) return kNegInf;
    return build(x[0], x[1]).eof;
  };

  if (W == 0.0) return build(n_thermal, n_thermal);

  const std::array<numerics::Bracket, 2> box{numerics::Bracket{0.0, 1.0},
                                             numerics::Bracket{0.0, 1.0}};
  const auto m = numerics::maximize_grid_refine(objective, box, kGridAsym);
  FermionProtocolPoint best = build(m.argmax[0], m.argmax[1]);

  // Among (near-)optimal points prefer the smallest N2: excess energy goes
  // into the even subspace and the final state is as pure as possible.
  const double target = best.eof - 1e-13;
  auto good = [&](double n2) {
    const double n1 = std::min(best.N1, n2);
    return objective(std::array{n1, n2}) >= target;
  };
  double lo = best.N1;
  double hi = best.N2;
  if (hi > lo && good(lo)) {
    hi = lo;
  } else {
    for (int it = 0; it < 100 && hi - lo > 1e-14; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (good(mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
  }
  if (hi < best.N2) {
    const auto moved = build(best.N1, hi);
    if (moved.eof >= target) best = moved;
  }
  return best;
}

}  // namespace corrtherm
