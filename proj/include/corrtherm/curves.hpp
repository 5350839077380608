#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace corrtherm {

struct Column {
  std::string name;
  std::string unit;  // empty for dimensionless labels
};

using Cell = std::variant<double, std::string>;

/// Long-format curve data: one row per (temperature, W) point, rows sorted
/// by temperature in input order, then by W.
struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> warnings;
  bool saturated = false;  // generation stopped at a saturated point
};

/// points >= 2 values from w_min to w_max, uniform or logarithmic.
std::vector<double> w_grid(double w_min, double w_max, int points, bool log_spacing = false);

/// Optimal mutual information and the ultimate bound; system is "bosons" or
/// "fermions". For fermions the table stops at the first W beyond the
/// largest reachable energy and is flagged saturated.
Table mi_curve(std::string_view system, std::span<const double> temperatures, std::span<const double> W);

/// mode "even" or "asymmetric"; W runs over [0, W_max(T)] in `points` steps.
Table fermion_curve(std::string_view mode, std::span<const double> temperatures, int points);

/// Optimized Gaussian protocol at initial temperatures T.
Table gauss_curve(std::span<const double> temperatures, std::span<const double> W);

/// Non-Gaussian step II after cooling to T_I; n <= 0 optimizes n in [1, n_limit].
Table nongauss_curve(std::span<const double> T_I, int n, int n_limit, std::span<const double> W_II);

/// Gaussian and non-Gaussian step-II entanglement at equal W_II.
Table compare_curve(std::span<const double> T_I, int n, int n_limit, std::span<const double> W_II);

/// Shortest round-trip decimal form; "inf", "-inf", "nan" for non-finite.
std::string format_number(double v);

/// Header "name[unit]", LF line endings.
void write_csv(std::ostream& out, const Table& t);

/// {"meta": {...}, "columns": [...], "rows": [[...]], "warnings": [...]}.
/// Non-finite numbers are written as null.
void write_json(std::ostream& out, const Table& t, const std::vector<std::pair<std::string, Cell>>& meta);

}  // namespace corrtherm
