#pragma once

#include <span>
#include <vector>

namespace corrtherm {

/// Single-mode thermal Fock probabilities p_k = (1 - e^-beta) e^(-k beta).
struct FockPair {
  double p0 = 1.0;
  double pn = 0.0;
};

FockPair thermal_fock_pair(int n, double beta_I);

/// Rotation by alpha in span{|00>, |nn>} of a two-mode thermal state at beta_I.
struct NGProtocolPoint {
  int n = 1;
  double alpha = 0.0;
  double beta_I = 0.0;
  double p0 = 1.0;
  double pn = 0.0;
  double W_II = 0.0;
  double concurrence = 0.0;  // clamped at 0
  double eof = 0.0;          // nats
};

/// 2 n (p0^2 - pn^2) sin^2(alpha).
double ng_w2(double alpha, int n, double beta_I);

/// (p0^2 - pn^2) sin(2 alpha) - 2 p0 pn, may be negative.
double ng_concurrence_raw(double alpha, int n, double beta_I);

/// max(0, ng_concurrence_raw).
double ng_concurrence(double alpha, int n, double beta_I);

/// W_II (p0^2 - pn^2 - W_II / 2n) > 2 n p0^2 pn^2.
bool ng_entanglement_condition(double W_II, int n, double beta_I);

/// (p0 - pn)^2. Upper bound on the concurrence of the protocol; attained
/// only when pn = 0 (see ng_concurrence_at_full_rotation).
double ng_cmax(int n, double beta_I);

/// Concurrence at alpha = pi/4, i.e. at W_II = n (p0^2 - pn^2):
/// p0^2 - pn^2 - 2 p0 pn.
double ng_concurrence_at_full_rotation(int n, double beta_I);

/// Wootters: binary entropy (nats) of (1 + sqrt(1 - C^2)) / 2.
double concurrence_to_eof(double C);

/// Largest concurrence reachable with budget W_II for fixed n. alpha follows
/// from the budget, capped at pi/4 where extra energy stops helping.
NGProtocolPoint ng_best_at_budget(double W_II, int n, double beta_I);

/// As above, also maximizing over n in [1, n_limit].
NGProtocolPoint ng_best_over_n(double W_II, double beta_I, int n_limit);

struct ComparisonRow {
  double W_II = 0.0;
  double eof_nongauss = 0.0;
  double eof_gauss = 0.0;
  int n = 1;
};

/// Non-Gaussian vs Gaussian step-II entanglement at fixed cooled temperature.
/// n > 0 fixes the Fock level; n <= 0 optimizes it over [1, n_limit].
std::vector<ComparisonRow> ng_vs_gauss_curve(double beta_I, int n, std::span<const double> W_grid,
                                             int n_limit = 64);

}  // namespace corrtherm
