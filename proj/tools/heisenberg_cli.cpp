// Command-line front end: evaluate kernels on grids, apply H to sampled data,
// print the coefficient identities and run the verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid flags or inputs,
// 3 I/O failure.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "heisenberg/apply.hpp"
#include "heisenberg/field_io.hpp"
#include "heisenberg/grid.hpp"
#include "heisenberg/kernels.hpp"
#include "heisenberg/verify/suites.hpp"

namespace fs = std::filesystem;
using namespace heisenberg;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

constexpr const char* kOutputDirEnv = "HEISENBERG_OUTPUT_DIR";

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Accepts "a", "bi", "a+bi", "a-bi", "i", "-i".
complex parse_complex(const std::string& text) {
  static const std::regex pattern(
      R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*(?:([+-])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*i)?\s*$)");
  static const std::regex pure_imag(R"(^\s*([+-]?)\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*i\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, pure_imag)) {
    const double mag = m[2].matched ? std::stod(m[2].str()) : 1.0;
    return {0.0, m[1].str() == "-" ? -mag : mag};
  }
  if (std::regex_match(text, m, pattern) && (m[1].matched || m[2].matched)) {
    const double re = m[1].matched ? std::stod(m[1].str()) : 0.0;
    double im = 0.0;
    if (m[2].matched) {
      im = m[3].matched ? std::stod(m[3].str()) : 1.0;
      if (m[2].str() == "-") im = -im;
    }
    return {re, im};
  }
  throw UsageError("cannot parse complex number '" + text + "' (expected a+bi)");
}

/// name:min:max:count
Axis parse_axis(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t pos; (pos = text.find(':', start)) != std::string::npos; start = pos + 1) {
    parts.push_back(text.substr(start, pos - start));
  }
  parts.push_back(text.substr(start));
  if (parts.size() != 4 || parts[0].empty()) {
    throw UsageError("axis '" + text + "' must be name:min:max:count");
  }
  try {
    std::size_t used = 0;
    Axis a{parts[0], std::stod(parts[1], &used), 0.0, 0};
    if (used != parts[1].size()) throw std::invalid_argument("min");
    a.max = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("max");
    a.count = std::stoi(parts[3], &used);
    if (used != parts[3].size()) throw std::invalid_argument("count");
    return a;
  } catch (const std::logic_error&) {
    throw UsageError("axis '" + text + "' has a malformed number");
  }
}

struct KernelFlags {
  double s = 0.0;
  double tau = 0.0;
  std::string gamma = "0";
  int n = 1;
  std::optional<int> boxb_q;

  void attach(CLI::App* cmd) {
    cmd->add_option("--s", s, "heat time s >= 0");
    cmd->add_option("--tau", tau, "dual variable tau");
    cmd->add_option("--gamma", gamma, "operator parameter, complex a+bi");
    cmd->add_option("--n", n, "complex dimension n >= 1");
    cmd->add_option("--boxb-q", boxb_q, "set gamma = n - 2q (Box_b on (0,q)-forms)");
  }

  KernelParams params() const {
    if (n < 1) throw UsageError("--n must be >= 1");
    if (boxb_q) {
      if (*boxb_q < 0 || *boxb_q > n) throw UsageError("--boxb-q must lie in [0, n]");
      return KernelParams::boxb(s, tau, n, *boxb_q);
    }
    return {s, tau, parse_complex(gamma), n};
  }
};

fs::path resolve_output(const std::string& path) {
  fs::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) p = fs::path(dir) / p;
  }
  return p;
}

std::string pick_format(const std::string& flag, const fs::path& out) {
  if (!flag.empty()) {
    if (flag != "csv" && flag != "json") throw UsageError("--format must be csv or json");
    return flag;
  }
  return out.extension() == ".csv" ? "csv" : "json";
}

void write_sample(const FieldSample& f, const fs::path& out, const std::string& format) {
  write_text_file_atomic(out, format == "csv" ? to_csv(f) : to_json(f));
}

void print_summary(const FieldSample& f, const fs::path& out) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& v : f.values) {
    lo = std::min(lo, std::abs(v));
    hi = std::max(hi, std::abs(v));
  }
  if (f.values.empty()) lo = 0.0;
  std::printf("%s: %zu points, |value| in [%.6e, %.6e] -> %s\n", f.kernel.c_str(), f.values.size(),
              lo, hi, out.string().c_str());
}

GridSpec make_grid(const std::vector<std::string>& axes) {
  GridSpec g;
  for (const auto& a : axes) g.axes.push_back(parse_axis(a));
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heat kernels of L_gamma on the Heisenberg group"};
  app.require_subcommand(1);

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a kernel on a grid");
  std::string eval_kernel;
  KernelFlags eval_flags;
  std::vector<std::string> eval_axes;
  std::string eval_out, eval_format;
  eval->add_option("--kernel", eval_kernel, "rho-hat | rho-hat-product | rho-tilde | heat-kernel")->required();
  eval_flags.attach(eval);
  eval->add_option("--axis", eval_axes, "grid axis name:min:max:count (repeatable)");
  eval->add_option("--output,-o", eval_out, "output file")->required();
  eval->add_option("--format", eval_format, "csv | json (default: from extension)");

  // apply
  auto* apply = app.add_subcommand("apply", "apply H to a sampled function");
  std::string apply_in, apply_out, apply_format;
  KernelFlags apply_flags;
  std::vector<std::string> apply_axes;
  apply->add_option("--input,-i", apply_in, "FieldSample JSON on a uniform (x, y) grid")->required();
  apply_flags.attach(apply);
  apply->add_option("--axis", apply_axes, "output grid axis (default: the input grid)");
  apply->add_option("--output,-o", apply_out, "output file")->required();
  apply->add_option("--format", apply_format, "csv | json");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
  std::string suite = "all";
  std::string report_path;
  verify_cmd->add_option("--suite", suite, "hermite | series | pde | inversion | semigroup | all");
  verify_cmd->add_option("--report", report_path, "JSON report path (default verify-<suite>.json)");

  // identities
  auto* ident = app.add_subcommand("identities", "print A, B and the simplification identities");
  double id_s = 1.0, id_tau = 1.0;
  ident->add_option("--s", id_s, "heat time s > 0");
  ident->add_option("--tau", id_tau, "tau");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*eval) {
      const auto params = eval_flags.params();
      const auto sample = evaluate_on_grid(parse_kernel(eval_kernel), params, make_grid(eval_axes));
      const auto out = resolve_output(eval_out);
      write_sample(sample, out, pick_format(eval_format, out));
      print_summary(sample, out);
      return 0;
    }
    if (*apply) {
      const auto input = from_json(read_text_file(apply_in));
      const auto params = apply_flags.params();
      const GridSpec out_grid = apply_axes.empty() ? input.grid : make_grid(apply_axes);
      const auto result = apply_heat_kernel_sampled(params, input, out_grid);
      const auto out = resolve_output(apply_out);
      write_sample(result, out, pick_format(apply_format, out));
      print_summary(result, out);
      return 0;
    }
    if (*verify_cmd) {
      std::vector<std::string> names;
      if (suite == "all") {
        names = verify::kSuiteNames;
      } else if (std::find(verify::kSuiteNames.begin(), verify::kSuiteNames.end(), suite) !=
                 verify::kSuiteNames.end()) {
        names = {suite};
      } else {
        throw UsageError("unknown suite '" + suite + "'");
      }
      nlohmann::json report = {{"suites", nlohmann::json::array()}};
      bool all_passed = true;
      for (const auto& name : names) {
        const auto rep = verify::run_suite(name);
        all_passed = all_passed && rep.passed();
        for (const auto& c : rep.checks) {
          std::printf("[%s] %-5s %-44s value=%.3e (%s)\n", name.c_str(), c.passed ? "PASS" : "FAIL",
                      c.name.c_str(), c.value, c.worst_case.c_str());
        }
        report["suites"].push_back(verify::to_json(rep));
      }
      report["passed"] = all_passed;
      const auto out = resolve_output(report_path.empty() ? "verify-" + suite + ".json" : report_path);
      write_text_file_atomic(out, report.dump(2) + "\n");
      std::printf("%s: %s -> %s\n", suite.c_str(), all_passed ? "pass" : "FAIL", out.string().c_str());
      return all_passed ? 0 : kExitVerifyFailed;
    }
    if (*ident) {
      const auto ab = coefficients_ab(id_s, id_tau);
      nlohmann::json j = {{"s", id_s}, {"tau", id_tau}, {"A", ab.a_coef}, {"B", ab.b_coef},
                          {"A2_plus_B2", a2_plus_b2(id_s, id_tau)}};
      if (id_s > 0.0 && id_tau != 0.0) {
        const auto r = simplification_identities(id_s, id_tau);
        j["B_over_A2_plus_B2"] = r.ratio_b;
        j["tau_over_2"] = id_tau / 2.0;
        j["A_over_B"] = r.ratio_ab;
        j["coth_s_tau_over_4"] = 1.0 / std::tanh(id_s * id_tau / 4.0);
      }
      std::cout << j.dump(2) << "\n";
      return 0;
    }
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
