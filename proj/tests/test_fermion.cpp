#include <cmath>
#include <numbers>

#include "corrtherm/error.hpp"
#include "corrtherm/fermion.hpp"
#include "corrtherm/thermo.hpp"
#include "doctest.h"

using namespace corrtherm;
using std::numbers::pi;

namespace {

const double kLn2 = std::log(2.0);

// Free energy of one mode with occupation N at inverse temperature beta.
double mode_free_energy(double N, double beta) {
  if (std::isinf(beta)) return N;
  auto xl = [](double x) { return x > 0 ? x * std::log(x) : 0.0; };
  return N + (xl(N) + xl(1 - N)) / beta;
}

double w1_oracle(double N1, double N2, double beta) {
  const double thermal = std::isinf(beta) ? 0.0 : -std::log1p(std::exp(-beta)) / beta;
  return mode_free_energy(N1, beta) + mode_free_energy(N2, beta) - 2.0 * thermal;
}

struct GridBest {
  double eof = 0.0;
  double N1 = 0.0;
  double N2 = 0.0;
  double theta = 0.0;
};

// Exhaustive search over (N1, N2, theta_even) with theta_odd = pi/4 and
// total cost at most W, followed by two zoomed searches around the best.
GridBest grid_oracle(double W, double beta, int n) {
  GridBest best;
  double lo[3] = {0.0, 0.0, 0.0};
  double hi[3] = {1.0, 1.0, pi / 4};
  for (int pass = 0; pass < 3; ++pass) {
    double step[3];
    for (int a = 0; a < 3; ++a) step[a] = (hi[a] - lo[a]) / (n - 1);
    for (int i = 0; i < n; ++i) {
      const double n1 = lo[0] + i * step[0];
      for (int j = 0; j < n; ++j) {
        const double n2 = lo[1] + j * step[1];
        if (n1 > n2 || n1 + n2 > 1.0) continue;
        const double w1 = w1_oracle(n1, n2, beta);
        if (w1 > W) continue;
        for (int k = 0; k < n; ++k) {
          const double th = lo[2] + k * step[2];
          const double w2 = 2.0 * (1.0 - n1 - n2) * std::sin(th) * std::sin(th);
          if (w1 + w2 > W) break;
          const double e = kLn2 * ((1.0 - n1 - n2) * std::sin(2 * th) + (n2 - n1));
          if (e > best.eof) best = {e, n1, n2, th};
        }
      }
    }
    const double c[3] = {best.N1, best.N2, best.theta};
    const double full_hi[3] = {1.0, 1.0, pi / 4};
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::max(0.0, c[a] - 3 * step[a]);
      hi[a] = std::min(full_hi[a], c[a] + 3 * step[a]);
    }
  }
  return best;
}

double even_oracle(double W, double beta, int n) {
  // Grid over the common occupation N; theta spends the rest of the budget.
  const double nt = std::isinf(beta) ? 0.0 : 1.0 / (std::exp(beta) + 1.0);
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double N = nt * i / (n - 1);
    const double w1 = w1_oracle(N, N, beta);
    if (w1 > W || N >= 0.5) continue;
    const double s2 = std::min(0.5, (W - w1) / (2.0 * (1.0 - 2 * N)));
    const double th = std::asin(std::sqrt(s2));
    best = std::max(best, kLn2 * (1.0 - 2 * N) * std::sin(2 * th));
  }
  return best;
}

}  // namespace

TEST_SUITE("fermion") {
  TEST_CASE("thermal populations") {
    for (double beta : {0.3, 1.0, 4.0, kInf}) {
      const auto t = fermion_thermal(beta);
      const auto& p = t.populations;
      CHECK(p[0] + p[1] + p[2] + p[3] == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(p[1] == p[2]);
      CHECK(std::abs(p[0] * p[3] - p[1] * p[2]) < 1e-15);
    }
    CHECK(fermi_occupation(kInf) == 0.0);
    CHECK(fermi_occupation(1.0) == doctest::Approx(1.0 / (std::exp(1.0) + 1.0)).epsilon(1e-15));
  }

  TEST_CASE("symmetric eof") {
    CHECK(fermion_eof_symmetric(0.0, 1.0) == 0.0);
    CHECK(fermion_eof_symmetric(1.0, kInf) == doctest::Approx(kLn2).epsilon(1e-15));
    const double t = std::tanh(0.5);
    CHECK(fermion_eof_symmetric(t, 1.0) == doctest::Approx(kLn2 * t).epsilon(1e-14));
    CHECK(fermion_eof_symmetric(t, 1.0) == doctest::Approx(0.320315).epsilon(1e-6));
    CHECK_THROWS_AS(fermion_eof_symmetric(2.0 * t + 1e-6, 1.0), InvalidArgument);
    CHECK_THROWS_AS(fermion_eof_symmetric(-1e-6, 1.0), InvalidArgument);
  }

  TEST_CASE("asymmetric eof and step II cost") {
    CHECK(fermion_eof_asymmetric({0, 0, pi / 4, 0}) == doctest::Approx(kLn2).epsilon(1e-15));
    CHECK(fermion_eof_asymmetric({0, 0.5, pi / 4, pi / 4}) == doctest::Approx(kLn2).epsilon(1e-15));
    CHECK(fermion_eof_asymmetric({0.2, 0.4, 0, 0}) == 0.0);
    CHECK(fermion_w2_asymmetric(0.1, 0.3, 0.0) == 0.0);
    CHECK(fermion_w2_asymmetric(0.0, 0.5, pi / 4) == doctest::Approx(0.5).epsilon(1e-15));
  }

  TEST_CASE("symmetric form equals the general form on N1 = N2") {
    for (int i = 0; i < 100; ++i) {
      const double N = 0.4999 * i / 99.0;
      const double beta_I = N == 0.0 ? kInf : std::log((1 - N) / N);
      for (int k = 0; k < 100; ++k) {
        const double th = (pi / 4) * k / 99.0;
        const double w2 = fermion_w2_asymmetric(N, N, th);
        for (double odd : {0.0, 0.3, pi / 4}) {
          CHECK(std::abs(fermion_eof_symmetric(w2, beta_I) - fermion_eof_asymmetric({N, N, th, odd})) < 1e-12);
        }
      }
    }
  }

  TEST_CASE("step I cost") {
    const double nt = 1.0 / (std::exp(1.0) + 1.0);
    CHECK(std::abs(fermion_w1(nt, nt, 1.0)) < 1e-15);
    CHECK(fermion_w1(0.0, 0.5, 1.0) == doctest::Approx(0.5 - kLn2 + 2.0 * std::log1p(std::exp(-1.0))).epsilon(1e-14));
    CHECK(fermion_w1(0.0, 0.5, 1.0) == doctest::Approx(0.433377).epsilon(1e-6));
    CHECK(fermion_w1(0.0, 0.0, kInf) == 0.0);
    for (double beta : {0.3, 1.0, 2.0}) {
      for (int i = 0; i <= 10; ++i) {
        for (int j = 0; j <= 10; ++j) {
          const double a = 0.1 * i;
          const double b = 0.1 * j;
          CHECK(fermion_w1(a, b, beta) == doctest::Approx(w1_oracle(a, b, beta)).epsilon(1e-12));
          CHECK(fermion_w1(a, b, beta) >= 0.0);
        }
      }
    }
  }

  TEST_CASE("maximal cost") {
    CHECK(std::abs(fermion_w_max(1.0) - (2.0 * std::log(std::exp(1.0) + 1.0) - 1.0)) < 1e-12);
    CHECK(fermion_w_max(1.0) == doctest::Approx(1.626524).epsilon(1e-6));
    CHECK(fermion_w_max(kInf) == 1.0);
  }

  TEST_CASE("even optimizer endpoints") {
    for (double T : {0.0, 0.5, 1.0}) {
      const double beta = ThermalSpec::from_temperature(T).beta();
      const auto top = fermion_optimize_even(fermion_w_max(beta), beta);
      CHECK(std::abs(top.eof - kLn2) < 1e-6);
      const auto zero = fermion_optimize_even(0.0, beta);
      CHECK(zero.eof == 0.0);
      CHECK_THROWS_AS(fermion_optimize_even(fermion_w_max(beta) * 1.001, beta), InvalidArgument);
    }
  }

  TEST_CASE("even optimizer against a grid oracle") {
    for (double T : {0.0, 0.3, 1.0}) {
      const double beta = ThermalSpec::from_temperature(T).beta();
      for (double x : {0.1, 0.35, 0.6, 0.9}) {
        const double W = x * fermion_w_max(beta);
        const auto p = fermion_optimize_even(W, beta);
        const double g = even_oracle(W, beta, 200000);
        CHECK(p.eof >= g - 1e-9);
        CHECK(p.eof <= g + 1e-4);
        CHECK(p.W_I + p.W_II <= W + 1e-12);
        CHECK(p.T_II >= T - 1e-12);
      }
    }
  }

  TEST_CASE("asymmetric optimizer against a 200^3 grid") {
    const std::array<std::pair<double, double>, 5> spots{{{0.0, 0.5}, {0.5, 0.3}, {1.0, 0.2}, {1.0, 0.55}, {1.0, 0.9}}};
    for (auto [T, x] : spots) {
      const double beta = ThermalSpec::from_temperature(T).beta();
      const double W = x * fermion_w_max(beta);
      const auto p = fermion_optimize(W, beta);
      const auto g = grid_oracle(W, beta, 200);
      CHECK(std::abs(p.eof - g.eof) < 1e-4);
      CHECK(p.W_I + p.W_II <= W + 1e-12);
      CHECK(p.N1 <= p.N2);
      CHECK(p.N1 + p.N2 <= 1.0 + 1e-15);
      CHECK(p.theta_odd == doctest::Approx(pi / 4));
    }
  }

  TEST_CASE("asymmetric optimizer examples") {
    const auto z = fermion_optimize(0.0, 1.0);
    CHECK(z.eof == 0.0);
    CHECK(z.N1 == doctest::Approx(fermi_occupation(1.0)).epsilon(1e-12));
    CHECK(z.N2 == doctest::Approx(fermi_occupation(1.0)).epsilon(1e-12));

    const auto top = fermion_optimize(fermion_w_max(1.0), 1.0);
    CHECK(std::abs(top.eof - kLn2) < 1e-6);

    // Ground state: the general protocol reduces to the symmetric one.
    for (double W : {0.1, 0.4, 0.7, 1.0}) {
      const auto p = fermion_optimize(W, kInf);
      CHECK(std::abs(p.eof - fermion_eof_symmetric(W, kInf)) < 1e-9);
    }

    // At W_opt = W_max - T ln 2 both parity blocks carry equal weight.
    const double w_opt = fermion_w_max(1.0) - kLn2;
    CHECK(w_opt == doctest::Approx(0.933377).epsilon(1e-6));
    const auto p = fermion_optimize(w_opt, 1.0);
    CHECK(std::abs(p.eof - kLn2) < 1e-6);
  }

  TEST_CASE("asymmetric dominates even, eof within [0, ln 2], monotone") {
    for (double T : {0.0, 0.2, 0.5, 1.0}) {
      const double beta = ThermalSpec::from_temperature(T).beta();
      const double wmax = fermion_w_max(beta);
      double prev_even = -1.0;
      double prev_asym = -1.0;
      for (int k = 0; k <= 40; ++k) {
        const double W = wmax * k / 40.0;
        const auto e = fermion_optimize_even(W, beta);
        const auto a = fermion_optimize(W, beta);
        CHECK(a.eof >= e.eof - 1e-9);
        CHECK(e.eof <= kLn2 + 1e-15);
        CHECK(a.eof <= kLn2 + 1e-15);
        CHECK(e.eof >= prev_even - 1e-9);
        CHECK(a.eof >= prev_asym - 1e-9);
        prev_even = e.eof;
        prev_asym = a.eof;
      }
    }
  }

  TEST_CASE("temperature ordering at fixed W / W_max") {
    // even: top to bottom in T; asymmetric: bottom to top
    const std::vector<double> temps{0.0, 0.1, 0.2, 0.4, 0.6, 0.8, 1.0};
    for (double x : {0.05, 0.2, 0.5, 0.9}) {
      double prev_even = kInf;
      double prev_asym = 0.0;
      for (double T : temps) {
        const double beta = ThermalSpec::from_temperature(T).beta();
        const double w = x * fermion_w_max(beta);
        const double e = fermion_optimize_even(w, beta).eof;
        const double a = fermion_optimize(w, beta).eof;
        CHECK(e <= prev_even + 1e-9);
        CHECK(a >= prev_asym - 1e-9);
        prev_even = e;
        prev_asym = a;
      }
    }
  }

}
