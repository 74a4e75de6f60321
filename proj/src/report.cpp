#include "jlt/report.hpp"

#include <cmath>
#include <fmt/format.h>
#include <json.hpp>

namespace jlt {

std::string_view to_string(Inequality q) {
  switch (q) {
    case Inequality::eq1: return "eq1";
    case Inequality::eq2: return "eq2";
    case Inequality::eq4_plus: return "eq4_plus";
    case Inequality::eq4_minus: return "eq4_minus";
    case Inequality::eq3_report: return "eq3_report";
  }
  return "unknown";
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", x);
}

void write_reports_csv(std::ostream& out, std::span<const VerificationReport> reports) {
  out << kReportCsvHeader << '\n';
  for (const VerificationReport& r : reports) {
    out << r.instance_id << ',' << to_string(r.inequality) << ','
        << (r.gamma ? format_number(*r.gamma) : std::string()) << ',' << format_number(r.lhs) << ','
        << format_number(r.rhs) << ',' << format_number(r.margin) << ',' << r.n_used << ','
        << format_number(r.est_error) << ','
        << (r.informational() ? "informational" : (r.pass ? "true" : "false")) << '\n';
  }
}

namespace {

nlohmann::ordered_json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

}  // namespace

void write_reports_json(std::ostream& out, std::span<const VerificationReport> reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const VerificationReport& r : reports) {
    nlohmann::ordered_json j;
    j["instance_id"] = r.instance_id;
    j["inequality"] = to_string(r.inequality);
    j["gamma"] = r.gamma ? number(*r.gamma) : nullptr;
    j["lhs"] = number(r.lhs);
    j["rhs"] = number(r.rhs);
    j["margin"] = number(r.margin);
    j["n_used"] = r.n_used;
    j["est_error"] = number(r.est_error);
    if (r.informational()) {
      j["pass"] = "informational";
      j["variant"] = r.variant;
      if (r.half_f_sum) j["half_F_sum"] = number(*r.half_f_sum);
      if (r.riesz_three_halves_sum) j["riesz_gamma_3_2_sum"] = number(*r.riesz_three_halves_sum);
    } else {
      j["pass"] = r.pass;
    }
    arr.push_back(std::move(j));
  }
  out << arr.dump(2) << '\n';
}

}  // namespace jlt
