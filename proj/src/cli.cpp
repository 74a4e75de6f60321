#include "jlt/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "jlt/constructs.hpp"
#include "jlt/errors.hpp"
#include "jlt/instance_io.hpp"
#include "jlt/random.hpp"
#include "jlt/suites.hpp"

namespace jlt {

namespace {

constexpr const char* kReportHelp = R"(
Report formats (--format csv|json, numbers printed with 17 significant digits):
  verify      instance_id,inequality,gamma,lhs,rhs,margin,n_used,est_error,pass
              inequality is eq1 (|a-1| bound), eq2 ((a-1)_+ bound), eq4_plus /
              eq4_minus (Riesz means, one row per gamma), eq3_report (two
              informational rows per instance: G squared as printed first, then
              G unsquared). pass is true/false, or "informational".
  spectrum    side,j,eigenvalue,n_used,est_error
  sharpness   param,lhs,rhs,ratio,ratio_closed_form,e_top,e_bottom,n_used,est_error
  sweep       instance_id,gamma,sign,lhs,rhs,margin,remark_bound_1,remark_bound_2,remark_ok,pass
  constructs  suite,checks,failures,worst,pass  (failure details follow as '# ' lines)
Exit codes: 0 pass, 1 inequality/property failure, 2 usage or parse error,
3 eigenvalue convergence failure.
Random instances use the keyed SplitMix64 counter generator documented in
random.hpp; the same seed and model always give the same instances.)";

enum class Format { csv, json };

struct Globals {
  std::optional<double> tol;
  Format format = Format::csv;
  std::uint64_t seed = 1;
  std::string out_path;
};

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ValidationError("not a number: \"" + s + "\"");
  }
  if (used != s.size() || !std::isfinite(v)) throw ValidationError("not a finite number: \"" + s + "\"");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

nlohmann::ordered_json json_list(const std::vector<double>& v) {
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (double x : v) a.push_back(x);
  return a;
}

// Where a subcommand writes its report.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ValidationError("cannot open output file " + path);
    }
  }
  std::ostream& stream(std::ostream& fallback) { return file_.is_open() ? file_ : fallback; }

 private:
  std::ofstream file_;
};

struct ModelFlags {
  Index b_sites_min = 1, b_sites_max = 9;
  double b_magnitude = 2.0;
  Index a_bonds_min = 0, a_bonds_max = 8;
  double a_low = 0.0, a_high = 2.0;
  bool nonnegative_b = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--b-sites-min", b_sites_min, "fewest b sites per random instance")->capture_default_str();
    cmd->add_option("--b-sites-max", b_sites_max, "most b sites per random instance")->capture_default_str();
    cmd->add_option("--b-magnitude", b_magnitude, "bound on |b_n|")->capture_default_str();
    cmd->add_option("--a-bonds-min", a_bonds_min, "fewest perturbed bonds")->capture_default_str();
    cmd->add_option("--a-bonds-max", a_bonds_max, "most perturbed bonds")->capture_default_str();
    cmd->add_option("--a-low", a_low, "lower bound for a_n")->capture_default_str();
    cmd->add_option("--a-high", a_high, "upper bound for a_n")->capture_default_str();
    cmd->add_flag("--nonnegative-b", nonnegative_b, "draw b_n in (0, b-magnitude]");
  }

  [[nodiscard]] RandomModel model(std::uint64_t seed) const {
    RandomModel m;
    m.seed = seed;
    m.b_sites_min = b_sites_min;
    m.b_sites_max = b_sites_max;
    m.b_magnitude = b_magnitude;
    m.a_bonds_min = a_bonds_min;
    m.a_bonds_max = a_bonds_max;
    m.a_low = a_low;
    m.a_high = a_high;
    m.allow_negative_b = !nonnegative_b;
    m.validate();
    return m;
  }
};

struct NamedInstance {
  std::string id;
  Perturbation p;
};

std::vector<NamedInstance> load_instances(const std::string& file, std::size_t random_count,
                                          const ModelFlags& flags, std::uint64_t seed) {
  std::vector<NamedInstance> out;
  if (!file.empty() && random_count > 0) throw ValidationError("give an instance file or --random, not both");
  if (!file.empty()) {
    out.push_back({std::filesystem::path(file).stem().string(), read_instance_file(file)});
  } else if (random_count > 0) {
    const RandomModel m = flags.model(seed);
    for (std::size_t i = 0; i < random_count; ++i) out.push_back({random_instance_id(seed, i), random_instance(m, i)});
  } else {
    throw ValidationError("an instance file or --random N is required");
  }
  return out;
}

// ---------------------------------------------------------------------------

int cmd_spectrum(const std::string& file, std::optional<Index> half_width, const Globals& g, std::ostream& out,
                 std::ostream& err) {
  const Perturbation p = read_instance_file(file);
  EigenConfig cfg;
  if (half_width) cfg.max_half_width = *half_width;
  if (g.tol) cfg.bisect_tol = *g.tol;
  cfg.validate();

  int code = kExitPass;
  SpectrumOutside s;
  try {
    s = eigenvalues_outside(p, cfg);
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << " (partial result follows)\n";
    s = e.partial();
    code = kExitConvergence;
  }
  if (g.format == Format::json) {
    nlohmann::ordered_json j;
    j["e_plus"] = json_list(s.e_plus);
    j["e_minus"] = json_list(s.e_minus);
    j["n_used"] = s.n_used;
    j["est_error"] = std::isfinite(s.est_error) ? nlohmann::ordered_json(s.est_error) : nullptr;
    j["edge_buffer"] = s.edge_buffer;
    j["converged"] = code == kExitPass;
    out << j.dump(2) << '\n';
  } else {
    out << "side,j,eigenvalue,n_used,est_error\n";
    for (std::size_t i = 0; i < s.e_plus.size(); ++i) {
      out << "plus," << i + 1 << ',' << format_number(s.e_plus[i]) << ',' << s.n_used << ','
          << format_number(s.est_error) << '\n';
    }
    for (std::size_t i = 0; i < s.e_minus.size(); ++i) {
      out << "minus," << i + 1 << ',' << format_number(s.e_minus[i]) << ',' << s.n_used << ','
          << format_number(s.est_error) << '\n';
    }
  }
  return code;
}

int cmd_verify(const std::vector<NamedInstance>& instances, const std::vector<double>& gammas, const Globals& g,
               std::ostream& out, std::ostream& err) {
  VerifyOptions opts;
  opts.gammas = gammas;
  opts.tol = g.tol.value_or(kDefaultMarginTol);
  for (double gm : gammas) {
    if (!(gm > 0.5)) throw PreconditionError("gamma must exceed 1/2");
  }

  std::vector<VerificationReport> reports;
  int code = kExitPass;
  for (const NamedInstance& inst : instances) {
    try {
      InstanceVerification v = verify_instance(inst.p, inst.id, opts);
      if (v.eq4_skipped) err << "warning: " << inst.id << " has a_n < 0; Riesz-mean rows skipped\n";
      for (VerificationReport& r : v.reports) {
        if (!r.informational() && !r.pass) code = std::max<int>(code, kExitFail);
        reports.push_back(std::move(r));
      }
    } catch (const ConvergenceError& e) {
      err << "error: " << inst.id << ": " << e.what() << '\n';
      code = kExitConvergence;
    }
  }
  if (g.format == Format::json) {
    write_reports_json(out, reports);
  } else {
    write_reports_csv(out, reports);
  }
  return code;
}

int cmd_sharpness(const std::string& mode, const std::string& grid, const Globals& g, std::ostream& out) {
  const bool bond = mode == "bond";
  const std::string text = grid.empty() ? (bond ? "pow2:1:10" : "0.5,1,1.5,2") : grid;
  const std::vector<double> values = parse_grid(text, bond);

  std::vector<SharpnessRow> rows;
  for (double v : values) rows.push_back(bond ? sharpness_bond(v) : sharpness_site(v));

  if (g.format == Format::json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const SharpnessRow& r : rows) {
      nlohmann::ordered_json j;
      j["param"] = r.param;
      j["lhs"] = r.lhs;
      j["rhs"] = r.rhs;
      j["ratio"] = r.ratio;
      j["ratio_closed_form"] = r.ratio_closed_form;
      j["e_plus"] = json_list(r.e_plus);
      j["e_minus"] = json_list(r.e_minus);
      j["n_used"] = r.n_used;
      j["est_error"] = r.est_error;
      arr.push_back(std::move(j));
    }
    out << arr.dump(2) << '\n';
  } else {
    out << kSharpnessCsvHeader << '\n';
    for (const SharpnessRow& r : rows) {
      out << format_number(r.param) << ',' << format_number(r.lhs) << ',' << format_number(r.rhs) << ','
          << format_number(r.ratio) << ',' << format_number(r.ratio_closed_form) << ','
          << (r.e_plus.empty() ? "" : format_number(r.e_plus.front())) << ','
          << (r.e_minus.empty() ? "" : format_number(r.e_minus.front())) << ',' << r.n_used << ','
          << format_number(r.est_error) << '\n';
    }
  }
  return kExitPass;
}

int cmd_constructs(const std::string& suite, std::size_t count, const Globals& g, std::ostream& out) {
  using SuiteFn = SuiteResult (*)(const SuiteOptions&);
  const std::vector<std::pair<std::string, SuiteFn>> all{
      {"decomposition", suite_decomposition}, {"bs", suite_birman_schwinger}, {"smu", suite_smu},
      {"kyfan", suite_kyfan},                 {"gmu", suite_gmu},             {"convexity", suite_convexity}};
  SuiteOptions o;
  o.seed = g.seed;
  o.count = count;
  o.tol = g.tol;

  std::vector<SuiteResult> results;
  for (const auto& [name, fn] : all) {
    if (suite == "all" || suite == name) results.push_back(fn(o));
  }
  if (results.empty()) throw ValidationError("unknown suite \"" + suite + "\"");

  constexpr std::size_t kMaxDetails = 20;
  bool ok = true;
  if (g.format == Format::json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const SuiteResult& r : results) {
      nlohmann::ordered_json j;
      j["suite"] = r.name;
      j["checks"] = r.checks;
      j["failures"] = r.failures;
      j["worst"] = r.worst;
      j["pass"] = r.pass();
      nlohmann::ordered_json details = nlohmann::ordered_json::array();
      for (std::size_t i = 0; i < std::min(kMaxDetails, r.details.size()); ++i) details.push_back(r.details[i]);
      j["details"] = std::move(details);
      arr.push_back(std::move(j));
      ok = ok && r.pass();
    }
    out << arr.dump(2) << '\n';
  } else {
    out << "suite,checks,failures,worst,pass\n";
    for (const SuiteResult& r : results) {
      out << r.name << ',' << r.checks << ',' << r.failures << ',' << format_number(r.worst) << ','
          << (r.pass() ? "true" : "false") << '\n';
      ok = ok && r.pass();
    }
    for (const SuiteResult& r : results) {
      for (std::size_t i = 0; i < std::min(kMaxDetails, r.details.size()); ++i) {
        out << "# " << r.name << ": " << r.details[i] << '\n';
      }
    }
  }
  return ok ? kExitPass : kExitFail;
}

int cmd_sweep(const std::vector<NamedInstance>& instances, const std::vector<double>& gammas, const Globals& g,
              std::ostream& out, std::ostream& err) {
  for (double gm : gammas) {
    if (!(gm > 0.5)) throw PreconditionError("gamma grid must lie above 1/2");
  }
  const double tol = g.tol.value_or(kDefaultMarginTol);
  std::vector<SweepRow> rows;
  int code = kExitPass;
  for (const NamedInstance& inst : instances) {
    try {
      for (SweepRow& r : sweep_instance(inst.p, inst.id, gammas, tol)) {
        if (!r.pass || !r.remark_ok) code = std::max<int>(code, kExitFail);
        rows.push_back(std::move(r));
      }
    } catch (const ConvergenceError& e) {
      err << "error: " << inst.id << ": " << e.what() << '\n';
      code = kExitConvergence;
    }
  }
  if (g.format == Format::json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const SweepRow& r : rows) {
      nlohmann::ordered_json j;
      j["instance_id"] = r.instance_id;
      j["gamma"] = r.gamma;
      j["sign"] = r.sign == Sign::plus ? "plus" : "minus";
      j["lhs"] = r.lhs;
      j["rhs"] = r.rhs;
      j["margin"] = r.margin;
      j["remark_bound_1"] = r.remark_bound_1;
      j["remark_bound_2"] = r.remark_bound_2;
      j["remark_ok"] = r.remark_ok;
      j["pass"] = r.pass;
      arr.push_back(std::move(j));
    }
    out << arr.dump(2) << '\n';
  } else {
    out << kSweepCsvHeader << '\n';
    for (const SweepRow& r : rows) {
      out << r.instance_id << ',' << format_number(r.gamma) << ',' << (r.sign == Sign::plus ? "plus" : "minus")
          << ',' << format_number(r.lhs) << ',' << format_number(r.rhs) << ',' << format_number(r.margin) << ','
          << format_number(r.remark_bound_1) << ',' << format_number(r.remark_bound_2) << ','
          << (r.remark_ok ? "true" : "false") << ',' << (r.pass ? "true" : "false") << '\n';
    }
  }
  return code;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text, bool allow_pow2) {
  if (text.empty()) throw ValidationError("empty grid");
  if (text.rfind("pow2:", 0) == 0) {
    if (!allow_pow2) throw ValidationError("pow2 grids are only valid for bond sharpness");
    const std::vector<std::string> parts = split(text.substr(5), ':');
    if (parts.size() != 2) throw ValidationError("pow2 grid must be pow2:k0:k1");
    const double k0 = parse_number(parts[0]);
    const double k1 = parse_number(parts[1]);
    if (k0 != std::floor(k0) || k1 != std::floor(k1) || k0 > k1 || k1 - k0 > 1000) {
      throw ValidationError("pow2 exponents must be ordered integers");
    }
    std::vector<double> out;
    for (double k = k0; k <= k1; k += 1.0) out.push_back(1.0 + std::ldexp(1.0, -static_cast<int>(k)));
    return out;
  }
  if (text.find(':') != std::string::npos) {
    const std::vector<std::string> parts = split(text, ':');
    if (parts.size() != 3) throw ValidationError("range grid must be lo:hi:step");
    const double lo = parse_number(parts[0]);
    const double hi = parse_number(parts[1]);
    const double step = parse_number(parts[2]);
    if (!(step > 0.0) || hi < lo || (hi - lo) / step > 1e6) throw ValidationError("bad range grid " + text);
    std::vector<double> out;
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
    for (std::size_t i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
    return out;
  }
  std::vector<double> out;
  for (const std::string& part : split(text, ',')) out.push_back(parse_number(part));
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jacobi-operator eigenvalue-sum toolkit"};
  app.footer(kReportHelp);
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  std::string format = "csv";
  app.add_option("--tol", g.tol, "margin tolerance (spectrum: bisection tolerance)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", g.seed, "base seed for random instances and suites")->capture_default_str();
  app.add_option("--out", g.out_path, "write the report to this file");

  std::string file;
  std::optional<Index> half_width;
  auto* spectrum = app.add_subcommand("spectrum", "discrete eigenvalues outside [-2, 2]");
  spectrum->add_option("instance", file, "instance file")->required();
  spectrum->add_option("--half-width", half_width, "largest truncation half-width");

  std::size_t random_count = 0;
  std::string gamma_list = "0.75,1,1.5,2.5";
  ModelFlags model;
  auto* verify = app.add_subcommand("verify", "check the eigenvalue-sum inequalities");
  verify->add_option("instance", file, "instance file");
  verify->add_option("--random", random_count, "number of seeded random instances");
  verify->add_option("--gamma", gamma_list, "Riesz-mean exponents (list or lo:hi:step)")->capture_default_str();
  model.add_to(verify);

  std::string mode = "bond";
  std::string grid;
  auto* sharp = app.add_subcommand("sharpness", "single-bond / single-site sharpness curves");
  sharp->add_option("--mode", mode, "bond or site")->check(CLI::IsMember({"bond", "site"}))->capture_default_str();
  sharp->add_option("--grid", grid, "values: list, lo:hi:step, or pow2:k0:k1 (bond: a = 1 + 2^-k)");

  std::string suite = "all";
  std::size_t suite_count = 0;
  auto* cons = app.add_subcommand("constructs", "property suites for the proof constructs");
  cons->add_option("--suite", suite, "all|decomposition|bs|smu|kyfan|gmu|convexity")->capture_default_str();
  cons->add_option("--count", suite_count, "instances per suite (0 = suite default)");

  std::string gamma_range = "0.75,1,1.5,2.5";
  auto* sweep = app.add_subcommand("sweep", "Riesz-mean bounds across gamma");
  sweep->add_option("instance", file, "instance file");
  sweep->add_option("--random", random_count, "number of seeded random instances");
  sweep->add_option("--gamma-range", gamma_range, "list or lo:hi:step")->capture_default_str();
  model.add_to(sweep);

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  g.format = format == "json" ? Format::json : Format::csv;

  try {
    Sink sink(g.out_path);
    std::ostream& dst = sink.stream(out);
    if (*spectrum) return cmd_spectrum(file, half_width, g, dst, err);
    if (*verify) {
      return cmd_verify(load_instances(file, random_count, model, g.seed), parse_grid(gamma_list), g, dst, err);
    }
    if (*sharp) return cmd_sharpness(mode, grid, g, dst);
    if (*cons) return cmd_constructs(suite, suite_count, g, dst);
    if (*sweep) {
      return cmd_sweep(load_instances(file, random_count, model, g.seed), parse_grid(gamma_range), g, dst, err);
    }
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace jlt
