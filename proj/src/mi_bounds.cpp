#include "corrtherm/mi_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "corrtherm/error.hpp"
#include "corrtherm/numerics.hpp"

namespace corrtherm {

namespace {

constexpr double kBetaLo = 1e-6;
constexpr double kBetaHi = 1e6;

// Solves q(beta) = target for q decreasing in beta, bisecting in ln(beta) over
// [max(kBetaLo, beta_floor), kBetaHi]. A target at or below q(kBetaHi) is the
// ground-state endpoint and returns +inf.
double solve_decreasing(const auto& q, double target, double beta_floor) {
  const double u_lo = std::log(std::max(kBetaLo, beta_floor));
  const double u_hi = std::log(kBetaHi);
  if (target <= q(std::exp(u_hi))) return kInf;
  auto g = [&](double u) { return q(std::exp(u)) - target; };
  const double u = numerics::bisect_root(g, {u_lo, u_hi, 1e-15, 400});
  return std::exp(u);
}

}  // namespace

std::string_view to_string(Regime r) {
  return r == Regime::linear ? "linear" : "entropy_saturated";
}

double mi_ultimate_bound(double W, double beta) {
  if (std::isnan(W) || W < 0.0) throw InvalidArgument("mi_ultimate_bound: W must be >= 0");
  ThermalSpec spec(beta);
  if (W == 0.0) return 0.0;
  return spec.beta() * W;
}

double solve_beta_II(const SpectrumSystem& sys, double W, double beta) {
  const ThermalSpec spec(beta);
  const ThermalProps initial = thermal_props(sys, spec);
  const double target = W + initial.free_energy;
  const double e0 = sys.ground_energy();
  const double scale = std::max(1.0, std::abs(W));
  if (target < e0 - 1e-12 * scale) {
    throw InvalidArgument("solve_beta_II: W + F(tau(beta)) lies below the ground energy");
  }
  if (target <= e0 + 1e-14 * scale) return kInf;

  auto energy = [&](double b) { return thermal_props(sys, ThermalSpec(b)).energy; };
  const double e_hot = energy(kBetaLo);
  if (target > e_hot) {
    if (sys.bounded()) {
      throw SaturationError("target energy " + std::to_string(target) +
                            " exceeds what the bounded spectrum holds at positive temperature (" +
                            std::to_string(e_hot) + ")");
    }
    throw NumericalError("solve_beta_II: target energy beyond the beta >= 1e-6 bracket");
  }
  const double beta_II = solve_decreasing(energy, target, kBetaLo);
  if (beta_II != kInf) {
    const double residual = std::abs(energy(beta_II) - target);
    if (residual > 1e-10 * scale) {
      throw NumericalError("solve_beta_II: residual " + std::to_string(residual) + " too large");
    }
  }
  return beta_II;
}

ProtocolSplit mi_optimal(const SpectrumSystem& sys, double W, double beta) {
  if (std::isnan(W) || W < 0.0) throw InvalidArgument("mi_optimal: W must be >= 0");
  const ThermalSpec spec(beta);
  const ThermalProps initial = thermal_props(sys, spec);
  ProtocolSplit split;
  split.W_total = W;

  if (W == 0.0) {
    split.beta_I = beta;
    split.beta_II = beta;
    return split;
  }

  const bool linear = !spec.is_ground() && beta * W <= initial.entropy;
  if (linear) {
    // beta_II = beta: cool until S(tau(beta_I)) = S(tau(beta)) - beta W.
    const double target = initial.entropy - beta * W;
    auto entropy = [&](double b) { return thermal_props(sys, ThermalSpec(b)).entropy; };
    const double beta_I = target <= std::log(double(sys.ground_degeneracy())) + 1e-15
                              ? kInf
                              : solve_decreasing(entropy, target, beta);
    const ThermalProps cooled = thermal_props(sys, ThermalSpec(beta_I));
    // Free energy of the cooled state measured against the bath temperature.
    const double f_cooled = cooled.energy - spec.temperature() * cooled.entropy;
    split.regime = Regime::linear;
    split.beta_I = beta_I;
    split.beta_II = beta;
    split.W_I = f_cooled - initial.free_energy;
    split.W_II = initial.energy - cooled.energy;
    split.mutual_info = beta * W;
    return split;
  }

  split.regime = Regime::entropy_saturated;
  split.beta_I = kInf;
  split.W_I = sys.ground_energy() - initial.free_energy;
  split.W_II = W - split.W_I;
  split.beta_II = solve_beta_II(sys, W, beta);
  split.mutual_info =
      split.beta_II == kInf
          ? 0.0
          : thermal_props(sys, ThermalSpec(split.beta_II)).entropy -
                std::log(double(sys.ground_degeneracy()));
  return split;
}

double boson_mi_asymptotic(double W_II) {
  if (std::isnan(W_II) || W_II <= 0.0) throw InvalidArgument("boson_mi_asymptotic: W_II must be > 0");
  return 2.0 + 2.0 * std::log(0.5 * W_II);
}

}  // namespace corrtherm
