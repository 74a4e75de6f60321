#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jlt/core.hpp"

namespace jlt {

enum class Inequality { eq1, eq2, eq4_plus, eq4_minus, eq3_report };

std::string_view to_string(Inequality q);

/// One inequality evaluated on one instance. margin = rhs - lhs; pass means
/// margin >= -tolerance. eq3_report rows are informational and never fail.
struct VerificationReport {
  std::string instance_id;
  Inequality inequality = Inequality::eq2;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  std::optional<double> gamma;
  Index n_used = 0;
  double est_error = 0.0;
  bool pass = true;
  /// eq3_report only: "as_printed" or "g_unsquared".
  std::string variant;
  /// eq3_report "as_printed" only: 1/2 sum F(E) and the gamma = 3/2 Riesz
  /// sum, which are reported side by side.
  std::optional<double> half_f_sum;
  std::optional<double> riesz_three_halves_sum;

  [[nodiscard]] bool informational() const { return inequality == Inequality::eq3_report; }
};

inline constexpr std::string_view kReportCsvHeader =
    "instance_id,inequality,gamma,lhs,rhs,margin,n_used,est_error,pass";

/// Numbers with 17 significant digits ("%.17g"); non-finite as inf/-inf/nan.
std::string format_number(double x);

void write_reports_csv(std::ostream& out, std::span<const VerificationReport> reports);
void write_reports_json(std::ostream& out, std::span<const VerificationReport> reports);

}  // namespace jlt
