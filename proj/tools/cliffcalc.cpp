#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <sys/stat.h>
#include <vector>

#include <CLI11.hpp>

#include "cliffcalc/calculus.hpp"
#include "cliffcalc/io.hpp"
#include "cliffcalc/poly_parser.hpp"
#include "cliffcalc/quantization.hpp"
#include "cliffcalc/verify.hpp"
#include "cliffcalc/version.hpp"

namespace {

using namespace cliffcalc;

class Timer {
 public:
  double elapsed_ms() const {
    const auto now = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(now - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string join_args(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i > 0) out += ' ';
    out += argv[i];
  }
  return out;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("RC_SEED");
  if (env == nullptr || *env == '\0') return 12345;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0')
    throw std::invalid_argument(std::string("RC_SEED is not an integer: ") + env);
  return v;
}

bool file_exists(const std::string& path) {
  struct stat st {};
  return stat(path.c_str(), &st) == 0 && S_ISREG(st.st_mode);
}

void emit(const Json& report, const std::string& output_path) {
  const std::string text = report.dump(2) + "\n";
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path);
  if (!out) throw std::runtime_error("cannot open output file: " + output_path);
  out << text;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

HyperPolynomial classical_to_hyper(const ClassicalPolynomial& p) {
  HyperPolynomial f(p.variables());
  for (const auto& [alpha, c] : p.terms())
    f.set_coeff(alpha, scaled_left(c, Multivector<double>::unit(p.variables())));
  return f;
}

struct VerifyArgs {
  std::string suite = "all";
  std::uint64_t seed = 0;
  bool seed_given = false;
  int max_degree = 3;
  int order = 0;
  double tol_scale = 1.0;
  std::string report_path;
};

int cmd_verify(const VerifyArgs& args, const std::string& command) {
  Timer timer;
  VerifyOptions opt;
  opt.seed = args.seed_given ? args.seed : default_seed();
  opt.max_degree = args.max_degree;
  opt.order = args.order;
  opt.tol_scale = args.tol_scale;

  const std::vector<CheckResult> rows = run_suite(args.suite, opt);
  int failed = 0;
  Json checks = Json::array();
  for (const CheckResult& row : rows) {
    if (!row.pass) ++failed;
    std::printf("%-4s %-72s %s %s %s\n", row.pass ? "ok" : "FAIL", row.name.c_str(),
                format_double(row.value).c_str(), row.comparator.c_str(),
                format_double(row.threshold).c_str());
    checks.push_back({{"name", row.name},
                      {"value", row.value},
                      {"threshold", row.threshold},
                      {"comparator", row.comparator},
                      {"pass", row.pass}});
  }
  std::printf("%zu/%zu checks passed\n", rows.size() - failed, rows.size());

  if (!args.report_path.empty()) {
    Json config{{"suite", args.suite},
                {"seed", opt.seed},
                {"max_degree", opt.max_degree},
                {"order", opt.order},
                {"tol_scale", opt.tol_scale}};
    Json result{{"checks", checks},
                {"passed", static_cast<int>(rows.size()) - failed},
                {"failed", failed}};
    emit(make_run_report(command, config, result, Json::object(), timer.elapsed_ms()),
         args.report_path);
  }
  return failed == 0 ? 0 : 1;
}

struct QuantizeArgs {
  std::string poly;
  std::string operators;
  std::string output_path;
};

int cmd_quantize(const QuantizeArgs& args, const std::string& command) {
  Timer timer;
  const OperatorTuple T = load_operator_tuple(args.operators);
  const ClassicalPolynomial p = parse_classical_polynomial(args.poly, T.count());
  const Matrix q = quantize(p, T);
  const double herm = spectral_norm(Matrix(q - q.adjoint()));

  Json config{{"poly", args.poly},
              {"operators", args.operators},
              {"variables", p.variables()},
              {"degree", p.degree()},
              {"dim", T.dim()}};
  Json result{{"matrix", matrix_to_json(q)}};
  Json diagnostics{{"hermiticity_residual", herm}};
  emit(make_run_report(command, config, result, diagnostics, timer.elapsed_ms()),
       args.output_path);
  if (!args.output_path.empty()) {
    std::printf("wrote %s\n", args.output_path.c_str());
    std::printf("hermiticity residual: %s\n", format_double(herm).c_str());
  }
  return 0;
}

struct CalculusArgs {
  std::string f;
  std::string operators;
  std::string route = "both";
  double radius = 0.0;
  int order = 32;
  int truncation = -1;
  std::string output_path;
};

int cmd_calculus(const CalculusArgs& args, const std::string& command) {
  Timer timer;
  const OperatorTuple T = load_operator_tuple(args.operators);
  const bool from_file = file_exists(args.f);
  const HyperPolynomial f =
      from_file ? load_hyper_polynomial(args.f)
                : classical_to_hyper(parse_classical_polynomial(args.f, T.count()));

  OperatorKernelConfig cfg;
  cfg.radius = args.radius;
  cfg.quad_order = args.order;
  cfg.truncation = args.truncation >= 0 ? args.truncation : std::max(f.degree(), 0);

  Json config{{"f", args.f},
              {"f_source", from_file ? "file" : "text"},
              {"operators", args.operators},
              {"route", args.route},
              {"radius", args.radius},
              {"order", args.order},
              {"truncation", cfg.truncation}};
  Json diagnostics{{"spectral_radius_bound", spectral_radius_bound(T)}};

  Json result;
  if (args.route == "taylor") {
    result = calculus_result_to_json(calculus_taylor(f, T));
  } else if (args.route == "integral") {
    result = calculus_result_to_json(calculus_integral(f, T, cfg));
  } else {
    const CalculusResult taylor = calculus_taylor(f, T);
    const CalculusResult integral = calculus_integral(f, T, cfg);
    Multivector<Matrix> diff = taylor.value;
    diff -= integral.value;
    const double disagreement = mv_norm_bound(diff);
    result = Json{{"taylor", calculus_result_to_json(taylor)},
                  {"integral", calculus_result_to_json(integral)}};
    diagnostics["route_disagreement"] = disagreement;
    if (!args.output_path.empty())
      std::printf("route disagreement: %s\n", format_double(disagreement).c_str());
  }

  emit(make_run_report(command, config, result, diagnostics, timer.elapsed_ms()),
       args.output_path);
  if (!args.output_path.empty()) std::printf("wrote %s\n", args.output_path.c_str());
  return 0;
}

struct ProbeArgs {
  std::string operators;
  std::vector<double> direction;
  std::vector<double> radii;
  int degree = 8;
  std::string output_path;
};

int cmd_probe(const ProbeArgs& args) {
  const OperatorTuple T = load_operator_tuple(args.operators);
  const int n = T.count();

  Point dir(static_cast<std::size_t>(n) + 1, 0.0);
  if (args.direction.empty()) {
    dir[1] = 1.0;
  } else {
    if (static_cast<int>(args.direction.size()) != n + 1)
      throw std::invalid_argument("direction needs " + std::to_string(n + 1) +
                                  " coordinates for an " + std::to_string(n) +
                                  "-operator tuple");
    double norm2 = 0.0;
    for (double c : args.direction) norm2 += c * c;
    if (norm2 <= 0.0) throw std::invalid_argument("direction must be nonzero");
    for (int j = 0; j <= n; ++j) dir[j] = args.direction[j] / std::sqrt(norm2);
  }

  std::vector<double> radii = args.radii;
  if (radii.empty()) {
    const double bound = spectral_radius_bound(T);
    const double base = bound > 0.0 ? bound : 1.0;
    radii = {0.5 * base, 1.5 * base, 2.0 * base, 4.0 * base};
  }
  for (double r : radii)
    if (r <= 0.0) throw std::invalid_argument("radii must be positive");

  std::ostringstream csv;
  csv << "radius,degree,term_norm,partial_norm,verdict\n";
  for (double r : radii) {
    Point y = dir;
    for (double& c : y) c *= r;
    const ResolventProbe probe = resolvent_probe(y, T, args.degree);
    for (int k = 0; k <= args.degree; ++k)
      csv << format_double(r) << ',' << k << ',' << format_double(probe.term_norms[k])
          << ',' << format_double(probe.partial_norms[k]) << ',' << probe.verdict
          << '\n';
  }

  if (args.output_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(args.output_path);
    if (!out) throw std::runtime_error("cannot open output file: " + args.output_path);
    out << csv.str();
    std::printf("wrote %s\n", args.output_path.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clifford-algebra functional calculus for tuples of Hermitian matrices"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  VerifyArgs vargs;
  CLI::App* verify = app.add_subcommand("verify", "Run an invariant suite");
  verify->add_option("--suite", vargs.suite, "Suite to run")
      ->check(CLI::IsMember(
          {"algebra", "hyperholo", "orthogonality", "calculus", "quantization", "all"}))
      ->capture_default_str();
  CLI::Option* seed_opt =
      verify->add_option("--seed", vargs.seed, "Seed for randomized checks");
  verify->add_option("--max-degree", vargs.max_degree, "Degree sweep limit")
      ->check(CLI::Range(0, 6))
      ->capture_default_str();
  verify->add_option("--order", vargs.order,
                     "Quadrature order override, 0 keeps suite defaults")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--tol-scale", vargs.tol_scale, "Scale residual tolerances")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--report", vargs.report_path, "Write a JSON run report here");

  QuantizeArgs qargs;
  CLI::App* quant = app.add_subcommand(
      "quantize", "Symmetrized substitution of operators into a polynomial");
  quant->add_option("poly", qargs.poly, "Polynomial text, e.g. \"2 x1^2 x2 - x3\"")
      ->required();
  quant->add_option("operators", qargs.operators, "Operator tuple JSON file")
      ->required();
  quant->add_option("--output,-o", qargs.output_path, "Write the JSON report here");

  CalculusArgs cargs;
  CLI::App* calc =
      app.add_subcommand("calculus", "Evaluate f(T) by substitution or quadrature");
  calc->add_option("f", cargs.f, "Coefficient JSON file or polynomial text")
      ->required();
  calc->add_option("operators", cargs.operators, "Operator tuple JSON file")
      ->required();
  calc->add_option("--route", cargs.route, "taylor, integral, or both")
      ->check(CLI::IsMember({"taylor", "integral", "both"}))
      ->capture_default_str();
  calc->add_option("--radius", cargs.radius,
                   "Sphere radius, 0 picks twice the spectral bound")
      ->capture_default_str();
  calc->add_option("--order", cargs.order, "Quadrature order per angle")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  calc->add_option("--truncation", cargs.truncation,
                   "Kernel truncation degree, -1 matches deg f")
      ->capture_default_str();
  calc->add_option("--output,-o", cargs.output_path, "Write the JSON report here");

  ProbeArgs pargs;
  CLI::App* probe =
      app.add_subcommand("probe", "Scan kernel decay along a ray, CSV output");
  probe->add_option("operators", pargs.operators, "Operator tuple JSON file")
      ->required();
  probe->add_option("--direction", pargs.direction,
                    "Ray direction, one coordinate per slot x0..xn");
  probe->add_option("--radii", pargs.radii, "Radii to sample, default scales the bound");
  probe->add_option("--degree", pargs.degree, "Series degree to expand")
      ->check(CLI::Range(0, 64))
      ->capture_default_str();
  probe->add_option("--output,-o", pargs.output_path, "Write the CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  vargs.seed_given = seed_opt->count() > 0;
  const std::string command = join_args(argc, argv);
  try {
    if (verify->parsed()) return cmd_verify(vargs, command);
    if (quant->parsed()) return cmd_quantize(qargs, command);
    if (calc->parsed()) return cmd_calculus(cargs, command);
    if (probe->parsed()) return cmd_probe(pargs);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
