#include "corrtherm/curves.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <optional>
#include <ostream>

#include "corrtherm/error.hpp"
#include "corrtherm/fermion.hpp"
#include "corrtherm/gauss.hpp"
#include "corrtherm/mi_bounds.hpp"
#include "corrtherm/nongauss.hpp"
#include "corrtherm/parallel.hpp"
#include "corrtherm/thermo.hpp"
#include "json.hpp"

namespace corrtherm {

namespace {

using Row = std::vector<Cell>;

void check_temperatures(std::span<const double> temperatures) {
  if (temperatures.empty()) throw InvalidArgument("at least one temperature is required");
  for (double T : temperatures) {
    if (!(T >= 0.0) || !std::isfinite(T)) throw InvalidArgument("temperatures must be finite and >= 0");
  }
}

void check_grid(std::span<const double> W) {
  if (W.empty()) throw InvalidArgument("W grid is empty");
  for (std::size_t i = 0; i < W.size(); ++i) {
    if (!(W[i] >= 0.0) || !std::isfinite(W[i])) throw InvalidArgument("W values must be finite and >= 0");
    if (i > 0 && W[i] < W[i - 1]) throw InvalidArgument("W grid must be sorted");
  }
}

double beta_of(double T) { return ThermalSpec::from_temperature(T).beta(); }

// Evaluates f over the (temperature, W) product in parallel, rows in order.
template <class F>
std::vector<Row> product_rows(std::span<const double> temperatures, std::span<const double> W, F f) {
  const std::size_t nw = W.size();
  std::vector<Row> rows(temperatures.size() * nw);
  parallel_for(rows.size(), [&](std::size_t k) { rows[k] = f(temperatures[k / nw], W[k % nw]); });
  return rows;
}

}  // namespace

std::vector<double> w_grid(double w_min, double w_max, int points, bool log_spacing) {
  if (points < 2) throw InvalidArgument("points must be >= 2");
  if (!std::isfinite(w_min) || !std::isfinite(w_max) || !(w_min >= 0.0) || !(w_max > w_min)) {
    throw InvalidArgument("W range must satisfy 0 <= w_min < w_max");
  }
  if (log_spacing && !(w_min > 0.0)) throw InvalidArgument("logarithmic W grid needs w_min > 0");
  std::vector<double> w(points);
  for (int i = 0; i < points; ++i) {
    const double t = double(i) / double(points - 1);
    w[i] = log_spacing ? std::exp(std::log(w_min) + t * (std::log(w_max) - std::log(w_min)))
                       : w_min + t * (w_max - w_min);
  }
  w.front() = w_min;
  w.back() = w_max;
  return w;
}

Table mi_curve(std::string_view system, std::span<const double> temperatures, std::span<const double> W) {
  check_temperatures(temperatures);
  check_grid(W);
  std::optional<SpectrumSystem> sys;
  if (system == "bosons") {
    sys = SpectrumSystem::two_boson_modes_exact();
  } else if (system == "fermions") {
    sys = SpectrumSystem::two_fermion_modes();
  } else {
    throw InvalidArgument("unknown system: " + std::string(system));
  }
  Table t;
  t.columns = {{"T", "omega"},       {"W", "omega"},      {"mutual_info", "nats"},
               {"ultimate_bound", "nats"}, {"regime", ""},  {"W_I", "omega"},
               {"W_II", "omega"},    {"beta_I", "1/omega"}, {"beta_II", "1/omega"}};
  const std::size_t nw = W.size();
  std::vector<Row> rows(temperatures.size() * nw);
  std::vector<char> saturated(rows.size(), 0);
  parallel_for(rows.size(), [&](std::size_t k) {
    const double T = temperatures[k / nw];
    const double w = W[k % nw];
    const double beta = beta_of(T);
    try {
      const ProtocolSplit s = mi_optimal(*sys, w, beta);
      rows[k] = {T, w, s.mutual_info, mi_ultimate_bound(w, beta), std::string(to_string(s.regime)),
                 s.W_I, s.W_II, s.beta_I, s.beta_II};
    } catch (const SaturationError&) {
      saturated[k] = 1;
    }
  });
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (saturated[k]) {
      t.saturated = true;
      t.warnings.push_back("W = " + format_number(W[k % nw]) + " at T = " + format_number(temperatures[k / nw]) +
                           " exceeds the largest reachable energy; output truncated");
      break;
    }
    t.rows.push_back(std::move(rows[k]));
  }
  return t;
}

Table fermion_curve(std::string_view mode, std::span<const double> temperatures, int points) {
  check_temperatures(temperatures);
  const std::vector<double> x = w_grid(0.0, 1.0, points);
  Table t;
  if (mode == "even") {
    t.columns = {{"T", "omega"},   {"x", "W/W_max"}, {"W", "omega"},   {"eof", "nats"},
                 {"T_II", "omega"}, {"N", ""},       {"theta_even", "rad"}, {"W_I", "omega"},
                 {"W_II", "omega"}};
    t.rows = product_rows(temperatures, x, [](double T, double xi) -> Row {
      const double beta = beta_of(T);
      const double w = xi * fermion_w_max(beta);
      const auto p = fermion_optimize_even(w, beta);
      return {T, xi, w, p.eof, p.T_II, p.N1, p.theta_even, p.W_I, p.W_II};
    });
  } else if (mode == "asymmetric") {
    t.columns = {{"T", "omega"}, {"x", "W/W_max"},      {"W", "omega"},       {"eof", "nats"},
                 {"N1", ""},     {"N2", ""},            {"theta_even", "rad"}, {"theta_odd", "rad"},
                 {"W_I", "omega"}, {"W_II", "omega"}};
    t.rows = product_rows(temperatures, x, [](double T, double xi) -> Row {
      const double beta = beta_of(T);
      const double w = xi * fermion_w_max(beta);
      const auto p = fermion_optimize(w, beta);
      return {T, xi, w, p.eof, p.N1, p.N2, p.theta_even, p.theta_odd, p.W_I, p.W_II};
    });
  } else {
    throw InvalidArgument("unknown fermion mode: " + std::string(mode));
  }
  return t;
}

Table gauss_curve(std::span<const double> temperatures, std::span<const double> W) {
  check_temperatures(temperatures);
  check_grid(W);
  Table t;
  t.columns = {{"T", "omega"},   {"W", "omega"},    {"eof", "nats"},  {"T_II", "omega"}, {"nu_I", ""},
               {"nu_tilde", ""}, {"r", ""},         {"W_I", "omega"}, {"W_II", "omega"}, {"status", ""}};
  t.rows = product_rows(temperatures, W, [](double T, double w) -> Row {
    const auto p = gauss_optimize(w, T);
    return {T, w, p.eof, p.T_II, p.nu_I, p.nu_tilde, p.r, p.W_I, p.W_II,
            std::string(p.status == GaussStatus::entangled ? "entangled" : "no_entanglement")};
  });
  return t;
}

Table nongauss_curve(std::span<const double> T_I, int n, int n_limit, std::span<const double> W_II) {
  check_temperatures(T_I);
  check_grid(W_II);
  if (n <= 0 && n_limit < 1) throw InvalidArgument("n_limit must be >= 1");
  Table t;
  t.columns = {{"T_I", "omega"}, {"W_II", "omega"}, {"eof", "nats"}, {"concurrence", ""}, {"n", ""},
               {"alpha", "rad"}};
  t.rows = product_rows(T_I, W_II, [n, n_limit](double T, double w) -> Row {
    const double beta = beta_of(T);
    const auto p = n > 0 ? ng_best_at_budget(w, n, beta) : ng_best_over_n(w, beta, n_limit);
    return {T, w, p.eof, p.concurrence, double(p.n), p.alpha};
  });
  return t;
}

Table compare_curve(std::span<const double> T_I, int n, int n_limit, std::span<const double> W_II) {
  check_temperatures(T_I);
  check_grid(W_II);
  if (n <= 0 && n_limit < 1) throw InvalidArgument("n_limit must be >= 1");
  Table t;
  t.columns = {{"T_I", "omega"}, {"W_II", "omega"}, {"eof_gaussian", "nats"}, {"eof_nongaussian", "nats"},
               {"n", ""}};
  t.rows = product_rows(T_I, W_II, [n, n_limit](double T, double w) -> Row {
    const std::array<double, 1> one{w};
    const auto r = ng_vs_gauss_curve(beta_of(T), n, one, n_limit).front();
    return {T, w, r.eof_gauss, r.eof_nongauss, double(r.n)};
  });
  return t;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const Table& t) {
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (c) out << ',';
    out << t.columns[c].name;
    if (!t.columns[c].unit.empty()) out << '[' << t.columns[c].unit << ']';
  }
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      if (const double* d = std::get_if<double>(&row[c])) {
        out << format_number(*d);
      } else {
        out << std::get<std::string>(row[c]);
      }
    }
    out << '\n';
  }
}

namespace {

nlohmann::ordered_json cell_json(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return nullptr;
    return *d;
  }
  return std::get<std::string>(c);
}

}  // namespace

void write_json(std::ostream& out, const Table& t, const std::vector<std::pair<std::string, Cell>>& meta) {
  nlohmann::ordered_json j;
  j["meta"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : meta) j["meta"][k] = cell_json(v);
  j["columns"] = nlohmann::ordered_json::array();
  for (const auto& c : t.columns) j["columns"].push_back({{"name", c.name}, {"unit", c.unit}});
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& c : row) r.push_back(cell_json(c));
    j["rows"].push_back(std::move(r));
  }
  j["saturated"] = t.saturated;
  j["warnings"] = t.warnings;
  out << j.dump(2) << '\n';
}

}  // namespace corrtherm
