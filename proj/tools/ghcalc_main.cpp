// Command-line front end for the gH interval calculus library: interval
// differences, gH-products, numeric gH-partial derivatives and gradients of
// interval-valued functions, and the built-in worked-example regression
// table.
//
// Exit codes: 0 success (including a definitive not_exists derivative
// status), 1 regression-table failure, 2 malformed input or usage, 3
// evaluation error, 4 inconclusive sampling.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ghcalc/ghcalc.hpp"
#include "ghcalc/report_json.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitSuiteFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitEval = 3;
constexpr int kExitInconclusive = 4;

struct PlanFlags {
  std::optional<double> t0, ratio, limit_tol, cluster_tol;
  std::optional<int> count;

  ghcalc::SamplingPlan plan() const {
    ghcalc::SamplingPlan p;
    if (t0) p.t0 = *t0;
    if (ratio) p.ratio = *ratio;
    if (count) p.count = *count;
    if (limit_tol) p.limit_tol = *limit_tol;
    if (cluster_tol) p.cluster_tol = *cluster_tol;
    return p;
  }
};

void add_plan_flags(CLI::App* cmd, PlanFlags& flags) {
  cmd->add_option("--t0", flags.t0, "initial sample step (default 1e-2)");
  cmd->add_option("--ratio", flags.ratio, "geometric step decay in (0,1) (default 0.5)");
  cmd->add_option("--count", flags.count, "samples per side per branch (default 32)");
  cmd->add_option("--limit-tol", flags.limit_tol, "limit stabilization tolerance (default 1e-5)");
  cmd->add_option("--cluster-tol", flags.cluster_tol, "cluster merge tolerance (default 1e-4)");
}

struct SpecInput {
  std::string inline_text;
  std::string file;

  ghcalc::IvfSpec load() const {
    if (inline_text.empty() == file.empty())
      throw ghcalc::ValidationError("exactly one of --spec and --spec-file is required");
    if (!inline_text.empty()) return ghcalc::parse(inline_text);
    std::ifstream in(file);
    if (!in) throw ghcalc::ValidationError("cannot open spec file '" + file + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return ghcalc::parse(buf.str());
  }
};

void add_spec_flags(CLI::App* cmd, SpecInput& spec) {
  cmd->add_option("--spec", spec.inline_text, "inline function spec");
  cmd->add_option("--spec-file", spec.file, "path to a function spec file");
}

std::string one_sided_text(const std::optional<double>& d) {
  return d ? ghcalc::format_estimate(*d) : "absent";
}

std::string pairing_text(const ghcalc::PairingReport& p) {
  if (p.inconclusive) return "inconclusive: " + p.note;
  if (p.complementary_pair)
    return "complementary, k_lo = " + ghcalc::format_estimate(p.complementary_pair->first) +
           ", k_hi = " + ghcalc::format_estimate(p.complementary_pair->second);
  return "not complementary: " + p.note;
}

std::string report_headline(const ghcalc::DerivativeReport& r) {
  using ghcalc::DerivativeStatus;
  if (r.status == DerivativeStatus::exists)
    return std::string("exists ") + ghcalc::format_interval_estimate(*r.value) + " (case " +
           ghcalc::to_string(*r.case_tag) + ")";
  return std::string(ghcalc::to_string(r.status)) + ": " + r.reason;
}

void print_report_text(const ghcalc::DerivativeReport& r) {
  std::cout << report_headline(r) << "\n";
  std::cout << "  one-sided right: lower' = " << one_sided_text(r.d_lower_right)
            << ", upper' = " << one_sided_text(r.d_upper_right) << "\n";
  std::cout << "  one-sided left:  lower' = " << one_sided_text(r.d_lower_left)
            << ", upper' = " << one_sided_text(r.d_upper_left) << "\n";
  // channel pairing only matters on a side without one-sided derivatives
  if (!r.d_lower_right || !r.d_upper_right)
    std::cout << "  right channels: " << pairing_text(r.right_pairing) << "\n";
  if (!r.d_lower_left || !r.d_upper_left)
    std::cout << "  left channels:  " << pairing_text(r.left_pairing) << "\n";
}

int status_exit(const ghcalc::DerivativeReport& r) {
  return r.status == ghcalc::DerivativeStatus::inconclusive ? kExitInconclusive : kExitOk;
}

int run_ghdiff(double a_lo, double a_hi, double b_lo, double b_hi, bool json_out) {
  const ghcalc::Interval a(a_lo, a_hi), b(b_lo, b_hi);
  const ghcalc::Interval d = ghcalc::gh_diff(a, b);
  const auto h = ghcalc::h_diff(a, b);
  if (json_out) {
    json j{{"gh", ghcalc::to_json(d)}, {"h_defined", h.has_value()}};
    if (h) j["h"] = ghcalc::to_json(*h);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << ghcalc::format_interval(d)
              << (h ? " (H-difference defined)" : " (H-difference undefined)") << "\n";
  }
  return kExitOk;
}

int run_hdiff(double a_lo, double a_hi, double b_lo, double b_hi, bool json_out) {
  const auto h = ghcalc::h_diff(ghcalc::Interval(a_lo, a_hi), ghcalc::Interval(b_lo, b_hi));
  if (json_out) {
    json j{{"defined", h.has_value()}};
    if (h) j["h"] = ghcalc::to_json(*h);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (h ? ghcalc::format_interval(*h) : "undefined") << "\n";
  }
  return kExitOk;
}

int run_ghproduct(const std::vector<double>& v, const std::vector<double>& k_flat,
                  bool compare, bool json_out) {
  if (k_flat.size() % 2 != 0)
    throw ghcalc::ValidationError("-K expects flat lo hi pairs (even count)");
  std::vector<ghcalc::Interval> items;
  for (std::size_t i = 0; i < k_flat.size(); i += 2)
    items.emplace_back(k_flat[i], k_flat[i + 1]);
  const ghcalc::RealVector vec(v);
  const ghcalc::IntervalVector K(std::move(items));
  const ghcalc::Interval gh = ghcalc::gh_product(vec, K);
  if (json_out) {
    json j{{"gh_product", ghcalc::to_json(gh)}};
    if (compare) j["minkowski_dot"] = ghcalc::to_json(ghcalc::ghosh_dot(vec, K));
    std::cout << j.dump(2) << "\n";
  } else if (compare) {
    std::cout << "gH: " << ghcalc::format_interval(gh)
              << "; Ghosh: " << ghcalc::format_interval(ghcalc::ghosh_dot(vec, K)) << "\n";
  } else {
    std::cout << ghcalc::format_interval(gh) << "\n";
  }
  return kExitOk;
}

int run_partial(const SpecInput& spec_in, const std::vector<double>& point, int coord,
                const PlanFlags& flags, bool json_out) {
  const ghcalc::IvfSpec spec = spec_in.load();
  const auto report = ghcalc::gh_partial(spec, point, coord, flags.plan());
  if (json_out)
    std::cout << ghcalc::to_json(report).dump(2) << "\n";
  else
    print_report_text(report);
  return status_exit(report);
}

int run_gradient(const SpecInput& spec_in, const std::vector<double>& point,
                 const PlanFlags& flags, bool json_out) {
  const ghcalc::IvfSpec spec = spec_in.load();
  const auto components = ghcalc::gh_gradient(spec, point, flags.plan());
  if (json_out) {
    json arr = json::array();
    for (const auto& c : components) {
      json j{{"coord", c.coord}};
      if (c.report) j["report"] = ghcalc::to_json(*c.report);
      if (!c.error.empty()) j["error"] = c.error;
      arr.push_back(std::move(j));
    }
    std::cout << json{{"components", std::move(arr)},
                      {"exists", ghcalc::gradient_exists(components)}}
                     .dump(2)
              << "\n";
  } else {
    std::string tuple = "(";
    for (const auto& c : components) {
      if (c.coord > 1) tuple += ", ";
      if (!c.report)
        tuple += "error";
      else if (c.report->status == ghcalc::DerivativeStatus::exists)
        tuple += ghcalc::format_interval_estimate(*c.report->value);
      else
        tuple += ghcalc::to_string(c.report->status);
    }
    std::cout << tuple << ")\n";
    for (const auto& c : components) {
      std::cout << "x" << c.coord << ": ";
      if (c.report)
        std::cout << report_headline(*c.report) << "\n";
      else
        std::cout << "error: " << c.error << "\n";
    }
  }
  int exit_code = kExitOk;
  for (const auto& c : components) {
    if (!c.report) return kExitEval;
    if (c.report->status == ghcalc::DerivativeStatus::inconclusive)
      exit_code = kExitInconclusive;
  }
  return exit_code;
}

int run_replay(const std::vector<std::string>& tampers, bool json_out) {
  std::map<std::string, ghcalc::SuiteValue> overrides;
  for (const auto& t : tampers) {
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ghcalc::ValidationError("--tamper expects ROW-ID=VALUE, got '" + t + "'");
    overrides[t.substr(0, eq)] = ghcalc::SuiteValue::parse(t.substr(eq + 1));
  }
  const auto results = ghcalc::run_reference_suite(overrides);
  const bool ok = ghcalc::all_passed(results);
  if (json_out) {
    json arr = json::array();
    for (const auto& r : results)
      arr.push_back({{"id", r.id},
                     {"description", r.description},
                     {"expected", r.expected},
                     {"got", r.got},
                     {"pass", r.pass}});
    std::cout << json{{"results", std::move(arr)}, {"all_passed", ok}}.dump(2) << "\n";
  } else {
    std::size_t id_w = 4, exp_w = 8;
    for (const auto& r : results) {
      id_w = std::max(id_w, r.id.size());
      exp_w = std::max(exp_w, r.expected.size());
    }
    int passed = 0;
    for (const auto& r : results) {
      std::cout << (r.pass ? "PASS  " : "FAIL  ") << r.id
                << std::string(id_w - r.id.size() + 2, ' ') << "expected " << r.expected
                << std::string(exp_w - r.expected.size() + 2, ' ') << "got " << r.got << "\n";
      passed += r.pass ? 1 : 0;
    }
    std::cout << passed << "/" << results.size() << " rows passed\n";
  }
  return ok ? kExitOk : kExitSuiteFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gH interval calculus: differences, products, and numeric gH-derivatives"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --format appear after the subcommand too
  std::string format = "text";
  app.add_option("--format", format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  auto* ghdiff = app.add_subcommand("ghdiff", "gH-difference of two intervals");
  double ga_lo = 0, ga_hi = 0, gb_lo = 0, gb_hi = 0;
  ghdiff->add_option("a_lo", ga_lo)->required();
  ghdiff->add_option("a_hi", ga_hi)->required();
  ghdiff->add_option("b_lo", gb_lo)->required();
  ghdiff->add_option("b_hi", gb_hi)->required();

  auto* hdiff = app.add_subcommand("hdiff", "Hukuhara difference of two intervals");
  double ha_lo = 0, ha_hi = 0, hb_lo = 0, hb_hi = 0;
  hdiff->add_option("a_lo", ha_lo)->required();
  hdiff->add_option("a_hi", ha_hi)->required();
  hdiff->add_option("b_lo", hb_lo)->required();
  hdiff->add_option("b_hi", hb_hi)->required();

  auto* ghproduct = app.add_subcommand("ghproduct", "gH-product of a vector with intervals");
  std::vector<double> pv, pk;
  bool compare = false;
  ghproduct->add_option("-v", pv, "vector components")->required()->expected(-1);
  ghproduct->add_option("-K", pk, "intervals as flat lo hi pairs")->required()->expected(-1);
  ghproduct->add_flag("--compare", compare, "also print the Minkowski dot product");

  auto* partial = app.add_subcommand("partial", "gH-partial derivative of a function spec");
  SpecInput partial_spec;
  PlanFlags partial_plan;
  std::vector<double> partial_point;
  int partial_coord = 1;
  add_spec_flags(partial, partial_spec);
  partial->add_option("--point", partial_point, "evaluation point")->required()->expected(-1);
  partial->add_option("--coord", partial_coord, "coordinate index, 1-based")->required();
  add_plan_flags(partial, partial_plan);

  auto* gradient = app.add_subcommand("gradient", "gH-gradient of a function spec");
  SpecInput gradient_spec;
  PlanFlags gradient_plan;
  std::vector<double> gradient_point;
  add_spec_flags(gradient, gradient_spec);
  gradient->add_option("--point", gradient_point, "evaluation point")->required()->expected(-1);
  add_plan_flags(gradient, gradient_plan);

  auto* replay = app.add_subcommand("replay-paper", "replay the built-in worked-example table");
  std::vector<std::string> tampers;
  bool replay_json = false;
  replay->add_option("--tamper", tampers,
                     "override an expected value (ROW-ID=VALUE); sensitivity hook");
  replay->add_flag("--json", replay_json, "shorthand for --format json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const bool json_out = format == "json";
  try {
    if (ghdiff->parsed()) return run_ghdiff(ga_lo, ga_hi, gb_lo, gb_hi, json_out);
    if (hdiff->parsed()) return run_hdiff(ha_lo, ha_hi, hb_lo, hb_hi, json_out);
    if (ghproduct->parsed()) return run_ghproduct(pv, pk, compare, json_out);
    if (partial->parsed())
      return run_partial(partial_spec, partial_point, partial_coord, partial_plan, json_out);
    if (gradient->parsed())
      return run_gradient(gradient_spec, gradient_point, gradient_plan, json_out);
    if (replay->parsed()) return run_replay(tampers, json_out || replay_json);
  } catch (const ghcalc::EvalError& e) {
    std::cerr << "evaluation error: " << e.what() << "\n";
    return kExitEval;
  } catch (const ghcalc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
