// Command-line front end for the flock-formation game solvers.
//
//   ffg solve --mode {ct,dt,sfg} --params FILE [--out FILE]
//   ffg verify --mode {ct,dt,sfg} [--trials N] [--seed S] [--step X]
//   ffg sweep --params FILE --range LO:HI --step S [--out FILE]
//   ffg boundaries --params FILE --range LO:HI [--tol T] [--out FILE]
//   ffg compare --params FILE [--out FILE]
//
// Exit codes: 0 success, 1 input error, 2 solver/oracle mismatch.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ffg/ffg.hpp"

namespace {

ffg::GameParams load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open params file: " + path);
  ffg::json j = ffg::json::parse(in);
  ffg::GameParams p = ffg::params_from_json(j);
  p.validate();
  return p;
}

void parse_range(const std::string& s, double& lo, double& hi) {
  auto colon = s.find(':');
  if (colon == std::string::npos)
    throw std::runtime_error("range must be LO:HI, got: " + s);
  size_t used = 0;
  lo = std::stod(s.substr(0, colon), &used);
  hi = std::stod(s.substr(colon + 1));
  if (!(hi > lo)) throw std::runtime_error("range must satisfy LO < HI");
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << text;
}

int run_solve(const std::string& mode, const std::string& params_path,
              const std::string& out_path) {
  ffg::GameParams p = load_params(params_path);
  ffg::SpeResult result;
  if (mode == "ct")
    result = ffg::solve_ct(p);
  else if (mode == "dt")
    result = ffg::solve_dt(p);
  else
    result = ffg::solve_sfg(p);
  emit(ffg::result_to_json(result, p).dump(2) + "\n", out_path);
  return 0;
}

int run_verify(const std::string& mode, std::uint64_t seed, size_t trials, double step,
               const std::string& out_path) {
  std::ostringstream os;
  bool ok = true;
  os << "mode=" << mode << " trials=" << trials << " seed=" << seed << "\n";
  if (mode == "dt") {
    ffg::DtVerifyReport rep = ffg::verify_dt(seed, trials);
    os << "branch coverage:\n";
    for (const auto& [branch, count] : rep.branch_counts)
      os << "  " << branch << ": " << count << "\n";
    os << "follower ties at equilibrium leader times: " << rep.ties_observed << "\n";
    os << "late arrivals in any oracle mode: " << rep.prop1_violations << "\n";
    ok = rep.mismatches == 0 && rep.prop1_violations == 0;
    os << "result: " << (rep.trials - rep.mismatches) << "/" << rep.trials
       << " exact matches\n";
    if (!rep.first_failure.empty()) os << "first failure: " << rep.first_failure << "\n";
  } else if (mode == "ct") {
    ffg::CtVerifyReport rep = ffg::verify_ct(seed, trials, step);
    os << "step=" << ffg::round12(step) << "\n";
    os << "branch coverage:\n";
    for (const auto& [branch, count] : rep.branch_counts)
      os << "  " << branch << ": " << count << "\n";
    os << "max indifference residual: " << rep.max_residual << "\n";
    ok = rep.coord_mismatches == 0 && rep.cap_violations == 0 &&
         rep.residual_failures == 0 && rep.prop1_violations == 0;
    os << "result: coords " << (rep.trials - rep.coord_mismatches) << "/" << rep.trials
       << " within 4*step, caps " << (rep.trials - rep.cap_violations) << "/" << rep.trials
       << ", residuals " << (rep.trials - rep.residual_failures) << "/" << rep.trials << "\n";
    if (!rep.first_failure.empty()) os << "first failure: " << rep.first_failure << "\n";
  } else {
    ffg::SfgVerifyReport rep = ffg::verify_sfg(seed, trials, step);
    os << "fine step=" << ffg::round12(step) << "\n";
    os << "branch coverage:\n";
    for (const auto& [branch, count] : rep.branch_counts)
      os << "  " << branch << ": " << count << "\n";
    ok = rep.threshold_mismatches == 0 && rep.deter_time_mismatches == 0 &&
         rep.indifference_failures == 0 && rep.participation_failures == 0 &&
         rep.prop1_violations == 0;
    os << "result: threshold " << (rep.trials - rep.threshold_mismatches) << "/" << rep.trials
       << ", deterrence time " << (rep.trials - rep.deter_time_mismatches) << "/"
       << rep.trials << "\n";
    if (!rep.first_failure.empty()) os << "first failure: " << rep.first_failure << "\n";
  }
  emit(os.str(), out_path);
  return ok ? 0 : 2;
}

int run_sweep(const std::string& params_path, const std::string& range, double step,
              const std::string& out_path) {
  ffg::GameParams base = load_params(params_path);
  double lo = 0.0, hi = 0.0;
  parse_range(range, lo, hi);
  auto rows = ffg::sweep_delta_e(base, lo, hi, step);
  std::ostringstream os;
  ffg::write_sweep_csv(os, rows);
  emit(os.str(), out_path);
  return 0;
}

int run_boundaries(const std::string& params_path, const std::string& range, double tol,
                   const std::string& out_path) {
  ffg::GameParams base = load_params(params_path);
  double lo = 0.0, hi = 0.0;
  parse_range(range, lo, hi);
  auto bounds = ffg::find_region_boundaries(base, lo, hi, tol);
  emit(ffg::boundaries_to_json(bounds).dump(2) + "\n", out_path);
  return 0;
}

int run_compare(const std::string& params_path, const std::string& out_path) {
  ffg::GameParams base = load_params(params_path);
  auto rows = ffg::compare_games(base, ffg::default_compare_gaps(base));
  std::ostringstream os;
  ffg::write_compare_table(os, rows);
  emit(os.str(), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flock-formation game equilibrium solver"};
  app.require_subcommand(1);

  std::string mode = "dt";
  std::string params_path;
  std::string out_path;
  std::string range;
  std::uint64_t seed = 0;
  size_t trials = 100;
  double step = 0.0009765625;  // 2^-10
  double sweep_step = 0.05;
  double tol = 1e-9;

  auto* solve = app.add_subcommand("solve", "solve one instance in closed form");
  solve->add_option("--mode", mode, "game variant: ct, dt, sfg")
      ->check(CLI::IsMember({"ct", "dt", "sfg"}))
      ->required();
  solve->add_option("--params", params_path, "parameter JSON file")->required();
  solve->add_option("--out", out_path, "write result here instead of stdout");

  auto* verify = app.add_subcommand("verify", "seeded randomized solver-vs-oracle runs");
  verify->add_option("--mode", mode, "game variant: ct, dt, sfg")
      ->check(CLI::IsMember({"ct", "dt", "sfg"}))
      ->required();
  verify->add_option("--trials", trials, "number of random instances");
  verify->add_option("--seed", seed, "generator seed");
  verify->add_option("--step", step, "grid step for ct/sfg fine-grid checks");
  verify->add_option("--out", out_path, "write report here instead of stdout");

  auto* sweep = app.add_subcommand("sweep", "classify a territory-gap range");
  sweep->add_option("--params", params_path, "base parameter JSON file")->required();
  sweep->add_option("--range", range, "gap range LO:HI")->required();
  sweep->add_option("--step", sweep_step, "gap increment");
  sweep->add_option("--out", out_path, "write CSV here instead of stdout");

  auto* boundaries = app.add_subcommand("boundaries", "extract discrete-game region bounds");
  boundaries->add_option("--params", params_path, "base parameter JSON file")->required();
  boundaries->add_option("--range", range, "gap range LO:HI")->required();
  boundaries->add_option("--tol", tol, "bisection tolerance");
  boundaries->add_option("--out", out_path, "write JSON here instead of stdout");

  auto* compare = app.add_subcommand("compare", "qualitative three-game comparison");
  compare->add_option("--params", params_path, "base parameter JSON file")->required();
  compare->add_option("--out", out_path, "write table here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve->parsed()) return run_solve(mode, params_path, out_path);
    if (verify->parsed()) return run_verify(mode, seed, trials, step, out_path);
    if (sweep->parsed()) return run_sweep(params_path, range, sweep_step, out_path);
    if (boundaries->parsed()) return run_boundaries(params_path, range, tol, out_path);
    if (compare->parsed()) return run_compare(params_path, out_path);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
