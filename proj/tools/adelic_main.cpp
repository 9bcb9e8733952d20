#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "adelic/sweep.hpp"

using namespace adelic;

namespace {

struct Options {
  std::string surface = "p2";
  std::string field = "fp:101";
  std::string window = "auto";
  long seed = 1;
  std::string out;
  std::string format = "json";
  bool serial = false;
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--surface", opt.surface, "surface: p2 or p1xp1");
  cmd->add_option("--field", opt.field, "base field: fp:<p> or q");
  cmd->add_option("--window", opt.window, "window radius: integer or auto");
  cmd->add_option("--seed", opt.seed, "seed for randomized suites");
  cmd->add_option("--out", opt.out, "write the report to this path");
  cmd->add_option("--format", opt.format, "report format: json or md")
      ->check(CLI::IsMember({"json", "md"}));
  cmd->add_flag("--serial", opt.serial, "run the serial reference path");
}

Surface make_surface(const Options& opt) {
  FieldSpec f = FieldSpec::parse(opt.field);
  if (opt.window != "auto") set_window_override(std::stol(opt.window));
  return Surface::parse(opt.surface, f);
}

void emit(const Options& opt, const std::string& json, const std::string& md) {
  const std::string& text = opt.format == "md" ? md : json;
  if (opt.out.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream of(opt.out);
    of << text << "\n";
    std::cout << "report written to " << opt.out << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact adelic intersection theory and Riemann-Roch checks on toric surfaces"};
  app.require_subcommand(1);

  Options opt;

  auto* cmd_intersect = app.add_subcommand("intersect", "intersection numbers of two divisors");
  std::string s_str, t_str, method = "all";
  cmd_intersect->add_option("S", s_str, "first divisor, e.g. 2L0-1L2 or 3F+1G")->required();
  cmd_intersect->add_option("T", t_str, "second divisor")->required();
  cmd_intersect->add_option("--method", method, "pairing, chains, oracle, or all")
      ->check(CLI::IsMember({"pairing", "chains", "oracle", "all"}));
  add_common(cmd_intersect, opt);

  auto* cmd_verify = app.add_subcommand("verify", "verify the exact identities over a divisor grid");
  long range = 2;
  cmd_verify->add_option("--range", range, "coefficient range of the divisor grid");
  add_common(cmd_verify, opt);

  auto* cmd_recip = app.add_subcommand("reciprocity", "seeded random residue reciprocity suites");
  long samples = 10;
  cmd_recip->add_option("--samples", samples, "number of random 2-forms")->check(CLI::PositiveNumber);
  add_common(cmd_recip, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Surface s = make_surface(opt);
    RunMode mode = opt.serial ? RunMode::serial : RunMode::parallel;

    if (cmd_intersect->parsed()) {
      auto t0 = std::chrono::steady_clock::now();
      SurfaceDivisor S = parse_surface_divisor(s_str, s);
      SurfaceDivisor T = parse_surface_divisor(t_str, s);
      IntersectReport rep;
      rep.surface = s.name();
      rep.field = s.field.name();
      rep.s_divisor = S.str(s);
      rep.t_divisor = T.str(s);
      if (method == "oracle" || method == "all") {
        rep.methods.push_back("oracle");
        rep.values.push_back(classical_intersection(s, S, T));
      }
      if (method == "pairing" || method == "all") {
        rep.methods.push_back("pairing");
        rep.values.push_back(intersection_via_pairing(s, S, T));
      }
      if (method == "chains" || method == "all") {
        rep.methods.push_back("chains");
        rep.values.push_back(intersection_via_dim_chains(s, S, T));
      }
      rep.agree = true;
      for (long v : rep.values) rep.agree = rep.agree && v == rep.values.front();
      rep.elapsed_ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
              .count();
      emit(opt, to_json(rep), to_markdown(rep));
      return rep.agree ? 0 : 1;
    }

    if (cmd_verify->parsed()) {
      if (range < 0) throw Error("range must be nonnegative");
      std::vector<VerifyReport> reps = verify_sweep(s, range, mode);
      bool all = true;
      for (const auto& r : reps) all = all && r.pass;
      emit(opt, to_json(reps), to_markdown(reps));
      std::cout << (all ? "all identities hold" : "IDENTITY FAILURE") << " (" << reps.size()
                << " divisor classes)\n";
      return all ? 0 : 1;
    }

    if (cmd_recip->parsed()) {
      ReciprocityReport rep = reciprocity_batch(s, samples, opt.seed, mode);
      emit(opt, to_json(rep), to_markdown(rep));
      std::cout << rep.passed << "/" << rep.samples << " reciprocity samples exactly zero\n";
      return rep.passed == rep.samples ? 0 : 1;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
