#pragma once

#include <string_view>

#include "corrtherm/thermo.hpp"

namespace corrtherm {

enum class Regime { linear, entropy_saturated };

std::string_view to_string(Regime r);

/// Two-step protocol: cool to beta_I with a bath (cost W_I), then correlate
/// unitarily so both marginals are thermal at beta_II (cost W_II).
struct ProtocolSplit {
  double W_total = 0.0;
  double W_I = 0.0;
  double W_II = 0.0;
  double beta_I = 0.0;
  double beta_II = 0.0;
  double mutual_info = 0.0;  // nats
  Regime regime = Regime::linear;
};

/// I <= beta W. Returns +inf for beta = inf and W > 0.
double mi_ultimate_bound(double W, double beta);

/// Solves E(tau(beta_II)) = W + F(tau(beta)) for beta_II. Returns +inf when
/// the target is the ground energy. Throws SaturationError when a bounded
/// spectrum cannot hold the target energy at positive temperature.
double solve_beta_II(const SpectrumSystem& sys, double W, double beta);

/// Optimal mutual information for budget W and the work split realizing it.
ProtocolSplit mi_optimal(const SpectrumSystem& sys, double W, double beta);

/// 2 + 2 ln(W_II / 2), the large-W_II behaviour of two bosonic modes.
double boson_mi_asymptotic(double W_II);

}  // namespace corrtherm
