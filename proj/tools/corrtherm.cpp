// corrtherm: curves and verification suites for work-to-correlation conversion.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "corrtherm/curves.hpp"
#include "corrtherm/error.hpp"
#include "corrtherm/oracle.hpp"
#include "json.hpp"

namespace {

using corrtherm::Cell;
using corrtherm::Table;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSaturated = 3;

struct Output {
  std::string path = "-";
  std::string format = "csv";
};

void add_output(CLI::App* cmd, Output& out) {
  cmd->add_option("--out", out.path, "Output file, '-' for stdout")->capture_default_str();
  cmd->add_option("--format", out.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

void emit(const std::string& text, const std::string& path) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw corrtherm::InvalidArgument("cannot open output file: " + path);
  f << text;
  if (!f) throw std::runtime_error("failed writing output file: " + path);
}

std::string render(const Table& t, const Output& out, const std::vector<std::pair<std::string, Cell>>& meta) {
  std::ostringstream s;
  if (out.format == "json") {
    corrtherm::write_json(s, t, meta);
  } else {
    corrtherm::write_csv(s, t);
  }
  return s.str();
}

nlohmann::ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

nlohmann::ordered_json report_json(const corrtherm::SuiteReport& rep) {
  nlohmann::ordered_json j;
  j["suite"] = rep.suite;
  j["seed"] = rep.seed;
  j["samples"] = rep.samples;
  j["pass"] = rep.pass();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : rep.checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["max_residual"] = number(c.max_residual);
    cj["tolerance"] = c.tolerance;
    cj["pass"] = c.pass;
    cj["argmax"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : c.where) cj["argmax"][k] = number(v);
    for (const auto& [k, v] : c.extra) cj[k] = number(v);
    j["checks"].push_back(std::move(cj));
  }
  return j;
}

std::string describe(const std::vector<std::pair<std::string, double>>& where) {
  std::string s;
  for (const auto& [k, v] : where) {
    if (!s.empty()) s += ' ';
    s += k + '=' + corrtherm::format_number(v);
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal work-to-correlation conversion for thermal quantum systems"};
  app.require_subcommand(1);

  Output out;
  std::vector<double> temps{1.0};
  double w_min = 0.0;
  double w_max = 5.0;
  int points = 101;
  bool log_w = false;

  auto* mi = app.add_subcommand("mi-curve", "Optimal mutual information and the ultimate bound versus W");
  std::string system;
  mi->add_option("--system", system, "bosons or fermions")->required()->check(CLI::IsMember({"bosons", "fermions"}));
  mi->add_option("--T", temps, "Initial temperature(s) [omega]")->capture_default_str();
  mi->add_option("--w-min", w_min, "Smallest W [omega]")->capture_default_str();
  mi->add_option("--w-max", w_max, "Largest W [omega]")->capture_default_str();
  mi->add_option("--points", points, "Number of W values")->check(CLI::Range(2, 1000000))->capture_default_str();
  mi->add_flag("--log-w", log_w, "Logarithmic W spacing");
  add_output(mi, out);

  auto* fc = app.add_subcommand("fermion-curve", "Fermionic entanglement of formation versus W/W_max");
  std::string fmode = "even";
  std::vector<double> f_temps{0.0};
  fc->add_option("--mode", fmode, "even or asymmetric")->check(CLI::IsMember({"even", "asymmetric"}))->capture_default_str();
  fc->add_option("--T", f_temps, "Initial temperature(s) [omega]")->capture_default_str();
  fc->add_option("--points", points, "Number of W/W_max values")->check(CLI::Range(2, 1000000))->capture_default_str();
  add_output(fc, out);

  auto* bc = app.add_subcommand("boson-curve", "Bosonic entanglement of formation versus W");
  std::string protocol = "gaussian";
  int n = 1;
  bool optimize_n = false;
  int n_max = 64;
  std::vector<double> b_temps{0.0};
  bc->add_option("--protocol", protocol, "gaussian, nongaussian or compare")
      ->check(CLI::IsMember({"gaussian", "nongaussian", "compare"}))
      ->capture_default_str();
  bc->add_option("--T", b_temps, "Temperature(s) [omega]; the cooled temperature T_I for nongaussian and compare")
      ->capture_default_str();
  bc->add_option("--n", n, "Fock level of the non-Gaussian rotation")->check(CLI::Range(1, 100000))->capture_default_str();
  bc->add_flag("--optimize-n", optimize_n, "Maximize over n in [1, n-max] at each W");
  bc->add_option("--n-max", n_max, "Largest n tried with --optimize-n")->check(CLI::Range(1, 100000))->capture_default_str();
  bc->add_option("--w-min", w_min, "Smallest W [omega]")->capture_default_str();
  bc->add_option("--w-max", w_max, "Largest W [omega]")->capture_default_str();
  bc->add_option("--points", points, "Number of W values")->check(CLI::Range(2, 1000000))->capture_default_str();
  bc->add_flag("--log-w", log_w, "Logarithmic W spacing");
  add_output(bc, out);

  auto* vc = app.add_subcommand("verify", "Density-matrix verification suites (JSON report)");
  std::string suite;
  std::uint64_t seed = 42;
  int samples = 100;
  std::string report_path = "-";
  vc->add_option("--suite", suite, "identities, bound, fermion, nongauss or all")
      ->required()
      ->check(CLI::IsMember({"identities", "bound", "fermion", "nongauss", "all"}));
  vc->add_option("--seed", seed, "Random seed")->capture_default_str();
  vc->add_option("--samples", samples, "Samples per configuration")->check(CLI::Range(1, 100000000))->capture_default_str();
  vc->add_option("--out", report_path, "Report file, '-' for stdout")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (mi->parsed()) {
      const auto grid = corrtherm::w_grid(w_min, w_max, points, log_w);
      const Table t = corrtherm::mi_curve(system, temps, grid);
      emit(render(t, out, {{"command", "mi-curve"}, {"system", system}}), out.path);
      if (t.saturated) {
        for (const auto& w : t.warnings) std::cerr << "warning: " << w << '\n';
        return kExitSaturated;
      }
      return kExitOk;
    }
    if (fc->parsed()) {
      const Table t = corrtherm::fermion_curve(fmode, f_temps, points);
      emit(render(t, out, {{"command", "fermion-curve"}, {"mode", fmode}}), out.path);
      return kExitOk;
    }
    if (bc->parsed()) {
      const auto grid = corrtherm::w_grid(w_min, w_max, points, log_w);
      const int fixed_n = optimize_n ? 0 : n;
      Table t;
      if (protocol == "gaussian") {
        t = corrtherm::gauss_curve(b_temps, grid);
      } else if (protocol == "nongaussian") {
        t = corrtherm::nongauss_curve(b_temps, fixed_n, n_max, grid);
      } else {
        t = corrtherm::compare_curve(b_temps, fixed_n, n_max, grid);
      }
      emit(render(t, out, {{"command", "boson-curve"}, {"protocol", protocol}}), out.path);
      return kExitOk;
    }
    const auto rep = corrtherm::run_verify_suite(suite, seed, samples);
    emit(report_json(rep).dump(2) + "\n", report_path);
    if (!rep.pass()) {
      for (const auto& c : rep.checks) {
        if (c.pass) continue;
        std::cerr << "violated: " << c.name << " residual " << corrtherm::format_number(c.max_residual)
                  << " > " << corrtherm::format_number(c.tolerance) << " at " << describe(c.where)
                  << " (replay: verify --suite " << suite << " --seed " << seed << " --samples " << samples
                  << ")\n";
      }
      return kExitViolation;
    }
    return kExitOk;
  } catch (const corrtherm::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitViolation;
  }
}
