#include "corrtherm/oracle.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "corrtherm/error.hpp"
#include "corrtherm/nongauss.hpp"
#include "corrtherm/thermo.hpp"

namespace corrtherm {

namespace {

using std::numbers::pi;

constexpr std::array<int, 1> kS1{0};
constexpr std::array<int, 1> kS2{1};
constexpr std::array<int, 2> kS{0, 1};
constexpr std::array<int, 1> kB{2};

double energy(const DensityMatrix& rho, const std::vector<double>& diag) {
  double e = 0.0;
  for (int i = 0; i < rho.dim(); ++i) e += diag[i] * rho.matrix()(i, i).real();
  return e;
}

double energy(const DensityMatrix& rho, const Eigen::VectorXd& diag) {
  return (rho.matrix().diagonal().real().array() * diag.array()).sum();
}

// Hamiltonian of a group of factors, as a diagonal in their product basis.
Eigen::VectorXd group_diagonal(const DiagonalHamiltonian& h, std::span<const int> group) {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(1);
  for (int f : group) {
    const auto& e = h.factors()[f];
    Eigen::VectorXd next(d.size() * Eigen::Index(e.size()));
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      for (std::size_t j = 0; j < e.size(); ++j) next(i * Eigen::Index(e.size()) + Eigen::Index(j)) = d(i) + e[j];
    }
    d = std::move(next);
  }
  return d;
}

// -S(rho) - Tr(rho ln tau) for diagonal tau.
double relative_entropy_to_diagonal(const DensityMatrix& rho, const DensityMatrix& tau) {
  double cross = 0.0;
  for (int i = 0; i < rho.dim(); ++i) {
    const double p = rho.matrix()(i, i).real();
    const double q = tau.matrix()(i, i).real();
    if (p != 0.0) cross += p * std::log(q);
  }
  return -von_neumann_entropy(rho) - cross;
}


}  // namespace

DiagonalHamiltonian::DiagonalHamiltonian(std::vector<std::vector<double>> factors)
    : factors_(std::move(factors)) {
  if (factors_.empty()) throw InvalidArgument("hamiltonian needs at least one factor");
  for (const auto& f : factors_) {
    if (f.empty()) throw InvalidArgument("hamiltonian factor must have at least one level");
    for (double e : f) {
      if (!std::isfinite(e)) throw InvalidArgument("hamiltonian entries must be finite");
    }
  }
}

DiagonalHamiltonian DiagonalHamiltonian::two_qubits_and_bath() {
  return DiagonalHamiltonian({{0.0, 1.0}, {0.0, 1.0}, {0.0, 0.7, 1.3, 2.1}});
}

DiagonalHamiltonian DiagonalHamiltonian::two_qubits() {
  return DiagonalHamiltonian({{0.0, 1.0}, {0.0, 1.0}, {0.0}});
}

std::vector<int> DiagonalHamiltonian::dims() const {
  std::vector<int> d;
  for (const auto& f : factors_) d.push_back(int(f.size()));
  return d;
}

int DiagonalHamiltonian::dim() const {
  int d = 1;
  for (const auto& f : factors_) d *= int(f.size());
  return d;
}

Eigen::VectorXd DiagonalHamiltonian::total() const {
  std::vector<int> all(factors_.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = int(i);
  return group_diagonal(*this, all);
}

DensityMatrix thermal_product_state(const DiagonalHamiltonian& h, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidArgument("thermal state needs finite beta > 0");
  const Eigen::VectorXd e = h.total();
  const double e0 = e.minCoeff();
  Eigen::VectorXd w = (-beta * (e.array() - e0)).exp();
  w /= w.sum();
  return DensityMatrix::diagonal(w, h.dims());
}

double DecompositionReport::max_residual() const {
  return std::max({std::abs(residual_system_bath), std::abs(residual_system_split),
                   std::abs(residual_entropic), std::abs(residual_relative), std::abs(residual_spectrum)});
}

DecompositionReport verify_free_energy_decomposition(const DiagonalHamiltonian& h, double beta,
                                                     const CMatrix& unitary) {
  if (h.factors().size() != 3) throw InvalidArgument("decomposition needs factors (S1, S2, B)");
  if (unitary.rows() != h.dim() || unitary.cols() != h.dim()) {
    throw InvalidArgument("unitary dimension does not match hamiltonian");
  }
  const double T = 1.0 / beta;
  const DensityMatrix tau = thermal_product_state(h, beta);
  const CMatrix evolved = unitary * tau.matrix() * unitary.adjoint();
  const DensityMatrix rho(evolved, h.dims());

  DecompositionReport r;
  r.W = energy(rho, h.total()) - energy(tau, h.total());

  const DensityMatrix rho_s1 = partial_trace(rho, kS1);
  const DensityMatrix rho_s2 = partial_trace(rho, kS2);
  const DensityMatrix rho_s = partial_trace(rho, kS);
  const DensityMatrix rho_b = partial_trace(rho, kB);
  const DensityMatrix tau_s1 = partial_trace(tau, kS1);
  const DensityMatrix tau_s2 = partial_trace(tau, kS2);
  const DensityMatrix tau_s = partial_trace(tau, kS);
  const DensityMatrix tau_b = partial_trace(tau, kB);

  auto delta_f = [&](const DensityMatrix& after, const DensityMatrix& before, const Eigen::VectorXd& diag) {
    return energy(after, diag) - energy(before, diag) -
           T * (von_neumann_entropy(after) - von_neumann_entropy(before));
  };
  const Eigen::VectorXd h_s1 = group_diagonal(h, kS1);
  const Eigen::VectorXd h_s2 = group_diagonal(h, kS2);
  const Eigen::VectorXd h_s = group_diagonal(h, kS);
  const Eigen::VectorXd h_b = group_diagonal(h, kB);
  r.dF_S1 = delta_f(rho_s1, tau_s1, h_s1);
  r.dF_S2 = delta_f(rho_s2, tau_s2, h_s2);
  r.dF_S = delta_f(rho_s, tau_s, h_s);
  r.dF_B = delta_f(rho_b, tau_b, h_b);

  const double s_total = von_neumann_entropy(rho);
  r.I_SB = von_neumann_entropy(rho_s) + von_neumann_entropy(rho_b) - s_total;
  r.I_S1S2 = von_neumann_entropy(rho_s1) + von_neumann_entropy(rho_s2) - von_neumann_entropy(rho_s);

  r.D_S1 = relative_entropy_to_diagonal(rho_s1, tau_s1);
  r.D_S2 = relative_entropy_to_diagonal(rho_s2, tau_s2);
  r.D_S = relative_entropy_to_diagonal(rho_s, tau_s);
  r.D_B = relative_entropy_to_diagonal(rho_b, tau_b);

  r.residual_system_bath = r.W - (r.dF_S + r.dF_B + T * r.I_SB);
  r.residual_system_split = r.dF_S - (r.dF_S1 + r.dF_S2 + T * r.I_S1S2);
  r.residual_entropic = beta * r.W - (r.D_S1 + r.D_S2 + r.D_B + r.I_S1S2 + r.I_SB);
  r.residual_relative = r.dF_S - T * r.D_S;
  r.residual_spectrum = (rho.eigenvalues() - tau.eigenvalues()).cwiseAbs().maxCoeff();
  return r;
}

namespace {

void accumulate_bound(BoundReport& rep, const DiagonalHamiltonian& h, double beta, const DensityMatrix& tau,
                      const CMatrix& u, long index) {
  const DensityMatrix rho(u * tau.matrix() * u.adjoint(), h.dims());
  const double W = energy(rho, h.total()) - energy(tau, h.total());
  const DensityMatrix rho_s = partial_trace(rho, kS);
  const double I = mutual_information(rho_s, kS1, kS2);
  const double slack = beta * W - I;
  if (rep.samples == 0 || slack < rep.min_slack) {
    rep.min_slack = slack;
    rep.worst_index = index;
  }
  rep.max_excess = std::max(rep.max_excess, -slack);
  if (I > beta * W + 1e-9) ++rep.violations;
  if (W > 0.0) rep.tightest_ratio = std::max(rep.tightest_ratio, I / (beta * W));
  ++rep.samples;
}

}  // namespace

BoundReport verify_ultimate_bound(const DiagonalHamiltonian& h, double beta,
                                  const std::vector<CMatrix>& unitaries) {
  if (h.factors().size() != 3) throw InvalidArgument("bound check needs factors (S1, S2, B)");
  const DensityMatrix tau = thermal_product_state(h, beta);
  BoundReport rep;
  for (std::size_t i = 0; i < unitaries.size(); ++i) accumulate_bound(rep, h, beta, tau, unitaries[i], long(i));
  return rep;
}

BoundReport verify_ultimate_bound(const DiagonalHamiltonian& h, double beta, std::uint64_t seed,
                                  int samples) {
  if (h.factors().size() != 3) throw InvalidArgument("bound check needs factors (S1, S2, B)");
  const DensityMatrix tau = thermal_product_state(h, beta);
  BoundReport rep;
  for (int i = 0; i < samples; ++i) {
    accumulate_bound(rep, h, beta, tau, haar_unitary(h.dim(), seed, std::uint64_t(i)), i);
  }
  return rep;
}

CMatrix parity_rotation(const DiagonalHamiltonian& h, double theta) {
  const auto dims = h.dims();
  if (dims.size() != 3 || dims[0] != 2 || dims[1] != 2) {
    throw InvalidArgument("parity_rotation needs two qubits and a bath");
  }
  CMatrix r = CMatrix::Identity(4, 4);
  r(0, 0) = std::cos(theta);
  r(3, 0) = std::sin(theta);
  r(0, 3) = -std::sin(theta);
  r(3, 3) = std::cos(theta);
  return kron(r, CMatrix::Identity(dims[2], dims[2]));
}

NGEmbeddedState ng_embedded_state(double alpha, int n, double beta_I, int n_max) {
  if (n < 1) throw InvalidArgument("ng_embedded_state: n must be >= 1");
  if (!(beta_I > 0.0)) throw InvalidArgument("ng_embedded_state: beta_I must be > 0");
  if (!std::isfinite(alpha)) throw InvalidArgument("ng_embedded_state: alpha must be finite");
  const double q = std::isinf(beta_I) ? 0.0 : std::exp(-beta_I);
  if (n_max == 0) {
    n_max = 2 * n;
    if (q > 0.0) n_max = std::max(n_max, int(std::ceil(16.0 * std::log(10.0) / beta_I)));
    if (n_max > 1000) throw InvalidArgument("ng_embedded_state: beta_I too small for a Fock cutoff");
  }
  if (n_max < n) throw InvalidArgument("ng_embedded_state: n_max must be >= n");

  const int levels = n_max + 1;
  const int dim = levels * levels;
  std::vector<double> p(levels);
  double norm = 0.0;
  for (int k = 0; k < levels; ++k) {
    p[k] = k == 0 ? 1.0 : p[k - 1] * q;
    norm += p[k];
  }
  for (double& v : p) v /= norm;

  using SpC = Eigen::SparseMatrix<std::complex<double>>;
  auto index = [levels](int i, int j) { return i * levels + j; };

  std::vector<Eigen::Triplet<std::complex<double>>> rho_t;
  std::vector<Eigen::Triplet<std::complex<double>>> u_t;
  rho_t.reserve(dim);
  u_t.reserve(dim + 2);
  const int a = index(0, 0);
  const int b = index(n, n);
  for (int i = 0; i < levels; ++i) {
    for (int j = 0; j < levels; ++j) {
      const int k = index(i, j);
      const double w = p[i] * p[j];
      if (w != 0.0) rho_t.emplace_back(k, k, w);
      if (k != a && k != b) u_t.emplace_back(k, k, 1.0);
    }
  }
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  u_t.emplace_back(a, a, c);
  u_t.emplace_back(b, a, s);
  u_t.emplace_back(a, b, -s);
  u_t.emplace_back(b, b, c);

  SpC rho(dim, dim);
  rho.setFromTriplets(rho_t.begin(), rho_t.end());
  SpC u(dim, dim);
  u.setFromTriplets(u_t.begin(), u_t.end());
  const SpC u_adj = SpC(u.adjoint());
  const SpC rotated = SpC(u * rho) * u_adj;

  NGEmbeddedState out;
  out.n_max = n_max;
  double e_before = 0.0;
  double e_after = 0.0;
  for (int i = 0; i < levels; ++i) {
    for (int j = 0; j < levels; ++j) {
      const int k = index(i, j);
      e_before += (i + j) * rho.coeff(k, k).real();
      e_after += (i + j) * rotated.coeff(k, k).real();
    }
  }
  out.W_II = e_after - e_before;

  const std::array<int, 4> sub{index(0, 0), index(0, n), index(n, 0), index(n, n)};
  for (int r = 0; r < 4; ++r) {
    for (int col = 0; col < 4; ++col) out.projected(r, col) = rotated.coeff(sub[r], sub[col]);
  }
  return out;
}

DensityMatrix fermion_protocol_state(const FermionProtocolPoint& p) {
  const double n1 = p.N1;
  const double n2 = p.N2;
  if (!(n1 >= 0.0 && n1 <= 1.0 && n2 >= 0.0 && n2 <= 1.0)) {
    throw InvalidArgument("fermion_protocol_state: occupations must lie in [0, 1]");
  }
  Eigen::Vector4d pops((1 - n1) * (1 - n2), (1 - n1) * n2, n1 * (1 - n2), n1 * n2);
  CMatrix rho = CMatrix::Zero(4, 4);
  rho.diagonal() = pops.cast<std::complex<double>>();
  CMatrix u = CMatrix::Zero(4, 4);
  const double ce = std::cos(p.theta_even);
  const double se = std::sin(p.theta_even);
  const double co = std::cos(p.theta_odd);
  const double so = std::sin(p.theta_odd);
  u(0, 0) = ce;
  u(3, 0) = se;
  u(0, 3) = -se;
  u(3, 3) = ce;
  u(1, 1) = co;
  u(2, 1) = so;
  u(1, 2) = -so;
  u(2, 2) = co;
  return DensityMatrix(u * rho * u.adjoint(), {2, 2});
}

FermionStateCheck check_fermion_protocol_state(const FermionProtocolPoint& p) {
  const DensityMatrix before = fermion_protocol_state({p.N1, p.N2, 0.0, 0.0});
  const DensityMatrix after = fermion_protocol_state(p);
  const std::vector<double> h{0.0, 1.0, 1.0, 2.0};
  FermionStateCheck c;
  c.energy_change = energy(after, h) - energy(before, h);
  c.energy_formula = fermion_w2_asymmetric(p.N1, p.N2, p.theta_even);
  const auto& m = after.matrix();
  for (int i : {0, 3}) {
    for (int j : {1, 2}) c.parity_leak = std::max({c.parity_leak, std::abs(m(i, j)), std::abs(m(j, i))});
  }
  c.even_coherence = 2.0 * std::abs(m(0, 3));
  c.odd_coherence = 2.0 * std::abs(m(1, 2));
  c.eof_from_blocks = std::log(2.0) * (c.even_coherence + c.odd_coherence);
  return c;
}

bool SuiteReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

namespace {

// Tracks the worst residual of a named check.
struct Tracker {
  CheckResult result;

  Tracker(std::string name, double tol) {
    result.name = std::move(name);
    result.tolerance = tol;
  }

  void add(double residual, std::vector<std::pair<std::string, double>> where) {
    const double r = std::isnan(residual) ? kInf : std::abs(residual);
    if (result.where.empty() || r > result.max_residual) {
      result.max_residual = r;
      result.where = std::move(where);
    }
  }

  CheckResult finish() {
    result.pass = result.max_residual <= result.tolerance;
    return result;
  }
};

void identities_suite(SuiteReport& rep, std::uint64_t seed, int samples) {
  const auto h = DiagonalHamiltonian::two_qubits_and_bath();
  Tracker sb("system_bath_split", 1e-10);
  Tracker split("system_split", 1e-10);
  Tracker entropic("entropic_five_term", 1e-10);
  Tracker relative("free_energy_relative_entropy", 1e-10);
  Tracker spectrum("entropy_invariance", 1e-10);
  for (double beta : {0.3, 1.0, 3.0}) {
    for (int i = 0; i < samples; ++i) {
      const auto r = verify_free_energy_decomposition(h, beta, haar_unitary(h.dim(), seed, std::uint64_t(i)));
      const std::vector<std::pair<std::string, double>> where{{"beta", beta}, {"sample", double(i)}};
      sb.add(r.residual_system_bath, where);
      split.add(r.residual_system_split, where);
      entropic.add(r.residual_entropic, where);
      relative.add(r.residual_relative, where);
      spectrum.add(r.residual_spectrum, where);
    }
  }
  for (Tracker* t : {&sb, &split, &entropic, &relative, &spectrum}) rep.checks.push_back(t->finish());
}

void bound_suite(SuiteReport& rep, std::uint64_t seed, int samples) {
  const double beta = 1.0;
  const auto rep_haar = verify_ultimate_bound(DiagonalHamiltonian::two_qubits_and_bath(), beta, seed, samples);
  CheckResult haar;
  haar.name = "ultimate_bound";
  haar.tolerance = 1e-9;
  haar.max_residual = rep_haar.max_excess;
  haar.pass = rep_haar.violations == 0;
  haar.where = {{"beta", beta}, {"sample", double(rep_haar.worst_index)}};
  haar.extra = {{"violations", double(rep_haar.violations)},
                {"min_slack", rep_haar.min_slack},
                {"tightest_ratio", rep_haar.tightest_ratio}};
  rep.checks.push_back(haar);

  const auto h2 = DiagonalHamiltonian::two_qubits();
  std::vector<CMatrix> rotations;
  constexpr int kSteps = 180;
  for (int k = 0; k <= kSteps; ++k) rotations.push_back(parity_rotation(h2, 0.5 * pi * k / kSteps));
  const auto rep_rot = verify_ultimate_bound(h2, beta, rotations);
  CheckResult rot;
  rot.name = "ultimate_bound_parity_rotation";
  rot.tolerance = 1e-9;
  rot.max_residual = rep_rot.max_excess;
  rot.pass = rep_rot.violations == 0;
  rot.where = {{"beta", beta}, {"theta", 0.5 * pi * double(rep_rot.worst_index) / kSteps}};
  rot.extra = {{"violations", double(rep_rot.violations)},
               {"min_slack", rep_rot.min_slack},
               {"tightest_ratio", rep_rot.tightest_ratio}};
  rep.checks.push_back(rot);
}

void fermion_suite(SuiteReport& rep, std::uint64_t seed, int samples) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), 0x6665726du};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Tracker energy_check("fermion_energy_change", 1e-12);
  Tracker leak("fermion_parity_blocks", 1e-15);
  Tracker blocks("fermion_block_eof", 1e-12);
  Tracker symmetric("fermion_symmetric_closed_form", 1e-12);
  for (int i = 0; i < samples; ++i) {
    FermionProtocolPoint p;
    p.N1 = unit(rng);
    p.N2 = unit(rng);
    p.theta_even = 0.5 * pi * unit(rng);
    p.theta_odd = 0.5 * pi * unit(rng);
    const std::vector<std::pair<std::string, double>> where{
        {"sample", double(i)}, {"N1", p.N1}, {"N2", p.N2}, {"theta_even", p.theta_even}, {"theta_odd", p.theta_odd}};
    const auto c = check_fermion_protocol_state(p);
    energy_check.add(c.energy_change - c.energy_formula, where);
    leak.add(c.parity_leak, where);
    blocks.add(c.eof_from_blocks - fermion_eof_asymmetric(p), where);

    // Equal occupations N < 1/2 correspond to a cooled thermal state.
    FermionProtocolPoint s;
    s.N1 = s.N2 = 0.5 * unit(rng);
    s.theta_even = 0.5 * pi * unit(rng);
    const double beta_I = s.N1 == 0.0 ? kInf : std::log((1.0 - s.N1) / s.N1);
    const double w2 = fermion_w2_asymmetric(s.N1, s.N2, s.theta_even);
    symmetric.add(fermion_eof_symmetric(w2, beta_I) - fermion_eof_asymmetric(s),
                  {{"sample", double(i)}, {"N", s.N1}, {"theta_even", s.theta_even}});
  }
  rep.checks.push_back(energy_check.finish());
  rep.checks.push_back(leak.finish());
  rep.checks.push_back(blocks.finish());
  rep.checks.push_back(symmetric.finish());

  // Cost of the pure Bell state |00> + |11> from the thermal state, by matrices.
  Tracker wmax("fermion_w_max", 1e-12);
  const std::vector<double> h{0.0, 1.0, 1.0, 2.0};
  for (double beta : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const double z = 1.0 + std::exp(-beta);
    Eigen::VectorXd pops(4);
    for (int k = 0; k < 4; ++k) pops(k) = std::exp(-beta * h[k]) / (z * z);
    const DensityMatrix tau = DensityMatrix::diagonal(pops, {2, 2});
    const DensityMatrix bell = fermion_protocol_state({0.0, 0.0, 0.25 * pi, 0.0});
    const double f_tau = energy(tau, h) - von_neumann_entropy(tau) / beta;
    const double f_bell = energy(bell, h) - von_neumann_entropy(bell) / beta;
    wmax.add((f_bell - f_tau) - fermion_w_max(beta), {{"beta", beta}});
  }
  rep.checks.push_back(wmax.finish());
}

void nongauss_suite(SuiteReport& rep, std::uint64_t seed, int samples) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), 0x6e67u};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> angle(0.0, 0.25 * pi);
  Tracker conc("nongauss_concurrence", 1e-10);
  Tracker work("nongauss_energy", 1e-10);
  Tracker cond("nongauss_condition_equivalence", 0.0);
  for (int n : {1, 2, 5}) {
    for (double beta : {0.5, 1.0, kInf}) {
      for (int i = 0; i < samples; ++i) {
        const double alpha = angle(rng);
        const auto st = ng_embedded_state(alpha, n, beta, 0);
        const std::vector<std::pair<std::string, double>> where{
            {"n", double(n)}, {"beta_I", beta}, {"alpha", alpha}, {"sample", double(i)}};
        conc.add(wootters_concurrence(st.projected) - ng_concurrence(alpha, n, beta), where);
        work.add(st.W_II - ng_w2(alpha, n, beta), where);
        const double raw = ng_concurrence_raw(alpha, n, beta);
        if (std::abs(raw) > 1e-12) {
          const bool flagged = ng_entanglement_condition(ng_w2(alpha, n, beta), n, beta);
          cond.add(flagged == (raw > 0.0) ? 0.0 : 1.0, where);
        }
      }
    }
  }
  rep.checks.push_back(conc.finish());
  rep.checks.push_back(work.finish());
  rep.checks.push_back(cond.finish());
}

}  // namespace

SuiteReport run_verify_suite(std::string_view suite, std::uint64_t seed, int samples) {
  if (samples < 1) throw InvalidArgument("samples must be >= 1");
  SuiteReport rep;
  rep.suite = std::string(suite);
  rep.seed = seed;
  rep.samples = samples;
  const bool all = suite == "all";
  if (!all && suite != "identities" && suite != "bound" && suite != "fermion" && suite != "nongauss") {
    throw InvalidArgument("unknown suite: " + std::string(suite));
  }
  if (all || suite == "identities") identities_suite(rep, seed, samples);
  if (all || suite == "bound") bound_suite(rep, seed, samples);
  if (all || suite == "fermion") fermion_suite(rep, seed, samples);
  if (all || suite == "nongauss") nongauss_suite(rep, seed, samples);
  return rep;
}

}  // namespace corrtherm
