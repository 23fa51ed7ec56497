#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "whankel/whankel.h"

namespace {

// 0/1/2 are the verify outcomes
constexpr int kUsageError = 3;
constexpr int kRuntimeError = 4;

struct Options {
  wh_params params{0.5, 1.0, 0.0};
  std::string function;
  std::string format = "json";
  std::string output;
  wh_options quad{};
  wh_scan_grid grid{};
  double m_decades = 3.0;
  std::string theorem;
  double r = 0.0;
  double M = 0.0;
  std::string N = "inf";
  std::string tail = "accelerated";
  double lambda = 2.0;
  int k_min = 0;
  int k_max = 12;
};

void add_params(CLI::App* sub, Options& o) {
  sub->add_option("--alpha", o.params.alpha, "Bessel order alpha")->capture_default_str();
  sub->add_option("--nu", o.params.nu, "power nu of (rt)")->capture_default_str();
  sub->add_option("--mu", o.params.mu, "power mu of r")->capture_default_str();
}

void add_function(CLI::App* sub, Options& o) {
  sub->add_option("--f", o.function, "gallery function, name or name:key=val,...")->required();
}

void add_output(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  sub->add_option("--output,-o", o.output, "write to this file instead of stdout");
  sub->add_option("--rel-tol", o.quad.rel_tol, "quadrature relative tolerance")->capture_default_str();
  sub->add_option("--abs-tol", o.quad.abs_tol, "quadrature absolute tolerance")->capture_default_str();
  sub->add_option("--max-panels", o.quad.max_panels, "quadrature panel budget")->capture_default_str();
  sub->add_option("--threads", o.quad.threads, "scan workers, 0 for all cores")->capture_default_str();
}

void add_grid(CLI::App* sub, Options& o) {
  sub->add_option("--r-min", o.grid.r_min, "smallest grid radius")->capture_default_str();
  sub->add_option("--r-max", o.grid.r_max, "largest grid radius")->capture_default_str();
  sub->add_option("--r-points", o.grid.r_points, "log-spaced grid radii")->capture_default_str();
  sub->add_option("--m-k-min", o.grid.m_k_min, "first M = 2^k")->capture_default_str();
  sub->add_option("--m-decades", o.m_decades, "decades of M")->capture_default_str();
}

int fail_with(wh_status s) {
  std::cerr << "whankel: " << wh_status_name(s) << ": " << wh_last_error() << "\n";
  return s == WH_INVALID_ARGUMENT || s == WH_DOMAIN ? kUsageError : kRuntimeError;
}

int emit(wh_status s, wh_report* rep, const Options& o) {
  if (s != WH_OK) return fail_with(s);
  const char* text = o.format == "csv" ? wh_report_csv(rep) : wh_report_json(rep);
  const int code = wh_report_outcome(rep);
  if (o.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(o.output, std::ios::binary);
    file << text;
    if (!file) {
      wh_report_destroy(rep);
      std::cerr << "whankel: cannot write " << o.output << "\n";
      return kRuntimeError;
    }
  }
  wh_report_destroy(rep);
  return code;
}

double parse_bound(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument(s);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  wh_options_default(&o.quad);
  wh_scan_grid_default(&o.grid);

  CLI::App app{"Weighted Hankel transforms and uniform-convergence diagnostics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(wh_version()));

  CLI::App* eval = app.add_subcommand("eval", "evaluate the transform at r");
  add_params(eval, o);
  add_function(eval, o);
  eval->add_option("--r", o.r, "radius r >= 0")->required();
  eval->add_option("--tail-policy", o.tail, "accelerated or dyadic")
      ->check(CLI::IsMember({"accelerated", "dyadic"}))
      ->capture_default_str();
  add_output(eval, o);

  CLI::App* rem = app.add_subcommand("remainder", "partial integral over [M, N]");
  add_params(rem, o);
  add_function(rem, o);
  rem->add_option("--r", o.r, "radius r > 0")->required();
  rem->add_option("--M", o.M, "lower limit")->required();
  rem->add_option("--N", o.N, "upper limit, or inf")->capture_default_str();
  add_output(rem, o);

  CLI::App* scan = app.add_subcommand("scan", "sup over r of the Cauchy remainder on dyadic M");
  add_params(scan, o);
  add_function(scan, o);
  add_grid(scan, o);
  add_output(scan, o);

  CLI::App* check = app.add_subcommand("check", "measure the hypotheses of a theorem");
  add_params(check, o);
  add_function(check, o);
  check->add_option("--theorem", o.theorem, "theorem id")->required();
  add_output(check, o);

  CLI::App* verify = app.add_subcommand("verify", "hypotheses plus conclusion scan; exit 0 pass, 1 fail, 2 inconclusive");
  add_params(verify, o);
  add_function(verify, o);
  verify->add_option("--theorem", o.theorem, "theorem id")->required();
  add_grid(verify, o);
  add_output(verify, o);

  CLI::App* gm = app.add_subcommand("gm", "general monotonicity check on a dyadic grid");
  add_params(gm, o);
  add_function(gm, o);
  gm->add_option("--lambda", o.lambda, "GM scale lambda > 1")->capture_default_str();
  gm->add_option("--k-min", o.k_min, "first grid point 2^k")->capture_default_str();
  gm->add_option("--k-max", o.k_max, "last grid point 2^k")->capture_default_str();
  add_output(gm, o);

  CLI::App* gallery = app.add_subcommand("gallery", "list the test-function gallery and theorem registry");
  gallery->add_flag("--list", "print the registry");
  add_output(gallery, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsageError;
  }

  o.grid.m_k_max = o.grid.m_k_min + static_cast<int>(std::ceil(o.m_decades * std::log2(10.0) - 1e-9));

  if (gallery->parsed()) {
    wh_report* rep = nullptr;
    const wh_status s = wh_report_gallery(&rep);
    return emit(s, rep, o);
  }

  wh_function* f = nullptr;
  if (const wh_status s = wh_function_create(o.function.c_str(), &o.params, &f); s != WH_OK) return fail_with(s);
  wh_report* rep = nullptr;
  wh_status s = WH_OK;
  if (eval->parsed()) {
    const wh_tail_policy policy = o.tail == "dyadic" ? WH_TAIL_DYADIC : WH_TAIL_ACCELERATED;
    s = wh_report_eval(&o.params, f, o.r, policy, &o.quad, &rep);
  } else if (rem->parsed()) {
    double N = 0.0;
    try {
      N = parse_bound(o.N);
    } catch (const std::exception&) {
      wh_function_destroy(f);
      std::cerr << "whankel: --N: '" << o.N << "' is not a number\n";
      return kUsageError;
    }
    s = wh_report_remainder(&o.params, f, o.r, o.M, N, &o.quad, &rep);
  } else if (scan->parsed()) {
    s = wh_report_scan(&o.params, f, &o.grid, &o.quad, &rep);
  } else if (check->parsed()) {
    s = wh_report_check(o.theorem.c_str(), &o.params, f, &o.quad, &rep);
  } else if (verify->parsed()) {
    s = wh_report_verify(o.theorem.c_str(), &o.params, f, &o.grid, &o.quad, &rep);
  } else if (gm->parsed()) {
    s = wh_report_gm(f, o.lambda, o.k_min, o.k_max, &rep);
  }
  wh_function_destroy(f);
  return emit(s, rep, o);
}
