#include "corrtherm/nongauss.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "corrtherm/error.hpp"
#include "corrtherm/gauss.hpp"
#include "corrtherm/thermo.hpp"

namespace corrtherm {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

void check_alpha(double alpha) {
  if (std::isnan(alpha) || alpha < 0.0 || alpha > kQuarterPi * (1.0 + 1e-15)) {
    throw InvalidArgument("alpha must lie in [0, pi/4]");
  }
}

void check_n(int n) {
  if (n < 1) throw InvalidArgument("Fock level n must be >= 1");
}

double population_gap(const FockPair& p) { return (p.p0 - p.pn) * (p.p0 + p.pn); }

}  // namespace

FockPair thermal_fock_pair(int n, double beta_I) {
  check_n(n);
  ThermalSpec spec(beta_I);
  if (spec.is_ground()) return {1.0, 0.0};
  const double p0 = -std::expm1(-beta_I);
  return {p0, p0 * std::exp(-n * beta_I)};
}

double ng_w2(double alpha, int n, double beta_I) {
  check_alpha(alpha);
  const FockPair p = thermal_fock_pair(n, beta_I);
  const double s = std::sin(alpha);
  return 2.0 * n * population_gap(p) * s * s;
}

double ng_concurrence_raw(double alpha, int n, double beta_I) {
  check_alpha(alpha);
  const FockPair p = thermal_fock_pair(n, beta_I);
  return population_gap(p) * std::sin(2.0 * alpha) - 2.0 * p.p0 * p.pn;
}

double ng_concurrence(double alpha, int n, double beta_I) {
  return std::max(0.0, ng_concurrence_raw(alpha, n, beta_I));
}

bool ng_entanglement_condition(double W_II, int n, double beta_I) {
  if (std::isnan(W_II) || W_II < 0.0) throw InvalidArgument("W_II must be >= 0");
  const FockPair p = thermal_fock_pair(n, beta_I);
  const double lhs = W_II * (population_gap(p) - W_II / (2.0 * n));
  const double rhs = 2.0 * n * p.p0 * p.p0 * p.pn * p.pn;
  return lhs > rhs;
}

double ng_cmax(int n, double beta_I) {
  const FockPair p = thermal_fock_pair(n, beta_I);
  return (p.p0 - p.pn) * (p.p0 - p.pn);
}

double ng_concurrence_at_full_rotation(int n, double beta_I) {
  return ng_concurrence_raw(kQuarterPi, n, beta_I);
}

double concurrence_to_eof(double C) {
  if (std::isnan(C) || C < 0.0 || C > 1.0 + 1e-12) throw InvalidArgument("concurrence must lie in [0, 1]");
  C = std::min(C, 1.0);
  // 1 - x = (1 - sqrt(1 - C^2)) / 2 = C^2 / (2 (1 + sqrt(1 - C^2))).
  const double root = std::sqrt((1.0 - C) * (1.0 + C));
  const double small = C * C / (2.0 * (1.0 + root));
  const double large = 1.0 - small;
  return -xlogx(large) - xlogx(small);
}

NGProtocolPoint ng_best_at_budget(double W_II, int n, double beta_I) {
  if (std::isnan(W_II) || W_II < 0.0) throw InvalidArgument("W_II must be >= 0");
  const FockPair p = thermal_fock_pair(n, beta_I);
  NGProtocolPoint pt;
  pt.n = n;
  pt.beta_I = beta_I;
  pt.p0 = p.p0;
  pt.pn = p.pn;
  const double gap = population_gap(p);
  if (gap > 0.0 && W_II > 0.0) {
    const double s2 = std::min(0.5, W_II / (2.0 * n * gap));
    pt.alpha = std::asin(std::sqrt(s2));
  }
  pt.W_II = ng_w2(std::min(pt.alpha, kQuarterPi), n, beta_I);
  pt.concurrence = ng_concurrence(std::min(pt.alpha, kQuarterPi), n, beta_I);
  pt.eof = concurrence_to_eof(pt.concurrence);
  return pt;
}

NGProtocolPoint ng_best_over_n(double W_II, double beta_I, int n_limit) {
  check_n(n_limit);
  NGProtocolPoint best = ng_best_at_budget(W_II, 1, beta_I);
  for (int n = 2; n <= n_limit; ++n) {
    const NGProtocolPoint candidate = ng_best_at_budget(W_II, n, beta_I);
    if (candidate.concurrence > best.concurrence) best = candidate;
  }
  return best;
}

std::vector<ComparisonRow> ng_vs_gauss_curve(double beta_I, int n, std::span<const double> W_grid,
                                             int n_limit) {
  const double T_I = ThermalSpec(beta_I).temperature();
  const double nu_I = nu_of_T(T_I);
  std::vector<ComparisonRow> rows;
  rows.reserve(W_grid.size());
  for (double w : W_grid) {
    const NGProtocolPoint ng = n > 0 ? ng_best_at_budget(w, n, beta_I) : ng_best_over_n(w, beta_I, n_limit);
    rows.push_back({w, ng.eof, eof_gaussian(nu_tilde_from_w2(nu_I, w)), ng.n});
  }
  return rows;
}

}  // namespace corrtherm
